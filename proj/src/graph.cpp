#include "klhc/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace klhc {

RankedDigraph::RankedDigraph(std::vector<int> levels,
                             std::vector<std::pair<int, int>> edges)
    : level_(std::move(levels)) {
  const int n = int(level_.size());
  for (int l : level_)
    if (l < 0) throw std::invalid_argument("negative level");
  out_.assign(size_t(n), {});
  in_.assign(size_t(n), {});
  for (auto [s, t] : edges) {
    if (s < 0 || s >= n || t < 0 || t >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (level_[size_t(s)] <= level_[size_t(t)])
      throw std::invalid_argument("edges must point to a strictly lower level");
    out_[size_t(s)].push_back(t);
    in_[size_t(t)].push_back(s);
  }
  for (int v = 0; v < n; ++v) {
    auto& o = out_[size_t(v)];
    std::sort(o.begin(), o.end());
    if (std::adjacent_find(o.begin(), o.end()) != o.end())
      throw std::invalid_argument("duplicate edge");
    std::sort(in_[size_t(v)].begin(), in_[size_t(v)].end());
  }
  nedges_ = int(edges.size());

  outb_.assign(size_t(n), Bitset(size_t(n)));
  inb_.assign(size_t(n), Bitset(size_t(n)));
  for (int v = 0; v < n; ++v) {
    for (int u : out_[size_t(v)]) outb_[size_t(v)].set(size_t(u));
    for (int u : in_[size_t(v)]) inb_[size_t(v)].set(size_t(u));
  }

  // Downward reachability: targets sit on strictly lower levels, so a sweep
  // in level order sees every out-neighbor before its source.
  std::vector<int> order(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) order[size_t(v)] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return level_[size_t(a)] != level_[size_t(b)]
               ? level_[size_t(a)] < level_[size_t(b)]
               : a < b;
  });
  down_.assign(size_t(n), Bitset(size_t(n)));
  for (int v : order) {
    down_[size_t(v)].set(size_t(v));
    for (int u : out_[size_t(v)]) down_[size_t(v)] |= down_[size_t(u)];
  }
}

int RankedDigraph::max_level() const {
  int m = 0;
  for (int l : level_) m = std::max(m, l);
  return m;
}

Bitset down_set(const RankedDigraph& g, int v) {
  if (v < 0 || v >= g.size()) throw std::invalid_argument("vertex out of range");
  return g.down_of(v);
}

std::vector<Diamond> diamonds(const RankedDigraph& g) {
  std::vector<Diamond> ds;
  for (int t = 0; t < g.size(); ++t) {
    const auto& o = g.out(t);
    for (size_t a = 0; a < o.size(); ++a)
      for (size_t b = a + 1; b < o.size(); ++b) {
        Bitset common = g.out_bits(o[a]) & g.out_bits(o[b]);
        common.for_each([&](std::size_t c) {
          ds.push_back({t, o[a], o[b], int(c)});
        });
      }
  }
  return ds;
}

std::optional<Diamond> find_incomplete_diamond(const std::vector<Diamond>& ds,
                                               const Bitset& members) {
  for (const Diamond& d : ds) {
    const int c = int(members.test(size_t(d.top))) +
                  int(members.test(size_t(d.left))) +
                  int(members.test(size_t(d.right))) +
                  int(members.test(size_t(d.bottom)));
    if (c == 3) return d;
  }
  return std::nullopt;
}

bool is_diamond_complete(const RankedDigraph& g, const Bitset& members) {
  return !find_incomplete_diamond(diamonds(g), members).has_value();
}

bool is_regular_undirected(const RankedDigraph& g) {
  if (g.size() == 0) return true;
  const size_t d0 = g.out(0).size() + g.in(0).size();
  for (int v = 1; v < g.size(); ++v)
    if (g.out(v).size() + g.in(v).size() != d0) return false;
  return true;
}

namespace {

// Color refinement: split classes by the multiset of neighbor colors until
// stable. Input colors may be arbitrary ints; output is dense and ordered by
// signature, which keeps everything label-independent.
std::vector<int> refine_colors(const RankedDigraph& g, std::vector<int> col) {
  const int n = g.size();
  using Sig = std::tuple<int, std::vector<int>, std::vector<int>>;
  int classes = 0;
  {
    std::map<int, int> dense;
    for (int c : col) dense.emplace(c, 0);
    int id = 0;
    for (auto& [c, d] : dense) d = id++;
    for (auto& c : col) c = dense[c];
    classes = id;
  }
  for (;;) {
    std::vector<Sig> sig(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<int> oc, ic;
      oc.reserve(g.out(v).size());
      ic.reserve(g.in(v).size());
      for (int u : g.out(v)) oc.push_back(col[size_t(u)]);
      for (int u : g.in(v)) ic.push_back(col[size_t(u)]);
      std::sort(oc.begin(), oc.end());
      std::sort(ic.begin(), ic.end());
      sig[size_t(v)] = {col[size_t(v)], std::move(oc), std::move(ic)};
    }
    std::map<Sig, int> ids;
    for (const Sig& s : sig) ids.emplace(s, 0);
    int id = 0;
    for (auto& [s, d] : ids) d = id++;
    for (int v = 0; v < n; ++v) col[size_t(v)] = ids[sig[size_t(v)]];
    if (id == classes) return col;  // no class split, partition is stable
    classes = id;
  }
}

struct CanonSearch {
  const RankedDigraph& g;
  // Raw (level, color) pairs; serialized verbatim so that graphs differing in
  // actual level or color values never share a key.
  const std::vector<std::pair<int, int>>& raw;
  std::string best;
  bool have_best = false;
  long budget = 1'000'000;

  std::string serialize(const std::vector<int>& col) const {
    const int n = g.size();
    std::vector<int> pos(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) pos[size_t(col[size_t(v)])] = v;
    std::string s;
    s.reserve(size_t(n) * 5 + size_t(n) * size_t(n) / 8 + 16);
    auto put16 = [&s](int x) {
      s.push_back(char(x & 0xff));
      s.push_back(char((x >> 8) & 0xff));
    };
    put16(n);
    for (int i = 0; i < n; ++i) {
      put16(raw[size_t(pos[size_t(i)])].first);
      put16(raw[size_t(pos[size_t(i)])].second);
    }
    unsigned acc = 0, bits = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        acc = (acc << 1) | unsigned(g.has_edge(pos[size_t(i)], pos[size_t(j)]));
        if (++bits == 8) {
          s.push_back(char(acc));
          acc = bits = 0;
        }
      }
    if (bits) s.push_back(char(acc << (8 - bits)));
    return s;
  }

  void run(std::vector<int> col) {
    if (--budget < 0)
      throw std::runtime_error("canonical form search budget exceeded");
    col = refine_colors(g, col);
    const int n = g.size();
    std::vector<std::vector<int>> cells(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) cells[size_t(col[size_t(v)])].push_back(v);
    int split = -1;
    for (int c = 0; c < n; ++c)
      if (cells[size_t(c)].size() > 1) {
        split = c;
        break;
      }
    if (split < 0) {
      std::string s = serialize(col);
      if (!have_best || s < best) {
        best = std::move(s);
        have_best = true;
      }
      return;
    }
    for (int v : cells[size_t(split)]) {
      std::vector<int> child(static_cast<size_t>(n));
      for (int u = 0; u < n; ++u)
        child[size_t(u)] =
            2 * col[size_t(u)] + ((col[size_t(u)] == split && u != v) ? 1 : 0);
      run(std::move(child));
    }
  }
};

}  // namespace

std::string canonical_key(const RankedDigraph& g,
                          const std::vector<int>* colors) {
  const int n = g.size();
  if (colors && int(colors->size()) != n)
    throw std::invalid_argument("color vector size mismatch");
  std::vector<std::pair<int, int>> raw(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v)
    raw[size_t(v)] = {g.level(v), colors ? (*colors)[size_t(v)] : 0};
  // Seed the refinement with dense ids ordered like the raw pairs.
  std::map<std::pair<int, int>, int> dense;
  for (const auto& p : raw) dense.emplace(p, 0);
  int id = 0;
  for (auto& [k, d] : dense) d = id++;
  std::vector<int> base(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) base[size_t(v)] = dense[raw[size_t(v)]];
  if (n == 0) return std::string("\0\0", 2);
  CanonSearch cs{g, raw, {}, false, 1'000'000};
  cs.run(base);
  return cs.best;
}

BruhatInterval build_interval(const Permutation& x, const Permutation& y) {
  if (!bruhat_leq(x, y))
    throw std::invalid_argument("interval requires x below y");
  const int w = x.window();
  const CornerRankMatrix crx(x);
  const int lx = x.length();

  std::unordered_set<uint64_t> seen{y.packed()};
  std::vector<Permutation> verts{y};
  std::queue<Permutation> bfs;
  bfs.push(y);
  while (!bfs.empty()) {
    const Permutation v = bfs.front();
    bfs.pop();
    const Permutation vinv = v.inverse();
    for (int i = 0; i < w; ++i)
      for (int j = i + 1; j < w; ++j) {
        if (vinv(i) <= vinv(j)) continue;  // swapping i, j would lengthen v
        const Permutation u = Permutation::transposition(w, i, j) * v;
        if (seen.count(u.packed())) continue;
        if (!(u.length() >= lx && crx.dominated_by(CornerRankMatrix(u))))
          continue;
        seen.insert(u.packed());
        verts.push_back(u);
        bfs.push(u);
      }
  }

  std::sort(verts.begin(), verts.end(), [](const Permutation& a,
                                           const Permutation& b) {
    const int la = a.length(), lb = b.length();
    return la != lb ? la < lb : a < b;
  });

  BruhatInterval iv;
  iv.x = x;
  iv.y = y;
  iv.vertex = verts;
  for (int i = 0; i < int(verts.size()); ++i)
    iv.index_of.emplace(verts[size_t(i)].packed(), i);

  std::vector<int> levels(verts.size());
  std::vector<std::pair<int, int>> edges;
  for (int vi = 0; vi < int(verts.size()); ++vi) {
    const Permutation& v = verts[size_t(vi)];
    levels[size_t(vi)] = v.length() - lx;
    const Permutation vinv = v.inverse();
    for (int i = 0; i < w; ++i)
      for (int j = i + 1; j < w; ++j) {
        if (vinv(i) <= vinv(j)) continue;
        const Permutation u = Permutation::transposition(w, i, j) * v;
        auto it = iv.index_of.find(u.packed());
        if (it == iv.index_of.end()) continue;
        edges.emplace_back(vi, it->second);
        iv.edge_label.emplace(uint64_t(vi) << 32 | uint64_t(it->second),
                              std::pair{i, j});
      }
  }
  iv.g = RankedDigraph(std::move(levels), std::move(edges));
  return iv;
}

std::string interval_to_dot(const BruhatInterval& iv,
                            const GraphHighlight* hl) {
  const RankedDigraph& g = iv.g;
  std::string s = "digraph interval {\n  rankdir=TB;\n  node [shape=box];\n";
  for (int v = 0; v < g.size(); ++v) {
    s += "  v" + std::to_string(v) + " [label=\"" + iv.vertex[size_t(v)].str() +
         " / " + std::to_string(g.level(v)) + "\"";
    if (hl && hl->members.size() && hl->members.test(size_t(v)))
      s += ", style=filled, fillcolor=\"#f6cfcf\"";
    s += "];\n";
  }
  for (int l = g.max_level(); l >= 0; --l) {
    std::string row;
    for (int v = 0; v < g.size(); ++v)
      if (g.level(v) == l) row += " v" + std::to_string(v) + ";";
    if (!row.empty()) s += "  { rank=same;" + row + " }\n";
  }
  auto highlighted = [&](int a, int b) {
    if (!hl) return false;
    for (auto [u, v] : hl->edges)
      if (u == a && v == b) return true;
    return false;
  };
  for (int v = 0; v < g.size(); ++v)
    for (int u : g.out(v)) {
      s += "  v" + std::to_string(v) + " -> v" + std::to_string(u);
      std::string attrs;
      auto it = iv.edge_label.find(uint64_t(v) << 32 | uint64_t(u));
      if (it != iv.edge_label.end())
        attrs = "label=\"(" + std::to_string(it->second.first) + "," +
                std::to_string(it->second.second) + ")\"";
      if (highlighted(v, u)) {
        if (!attrs.empty()) attrs += ", ";
        attrs += "color=\"#2060c0\", penwidth=2.0";
      }
      if (!attrs.empty()) s += " [" + attrs + "]";
      s += ";\n";
    }
  s += "}\n";
  return s;
}

std::string interval_to_json(const BruhatInterval& iv) {
  nlohmann::ordered_json j;
  j["x"] = iv.x.str();
  j["y"] = iv.y.str();
  auto verts = nlohmann::ordered_json::array();
  for (const Permutation& p : iv.vertex) verts.push_back(p.str());
  j["vertices"] = std::move(verts);
  auto edges = nlohmann::ordered_json::array();
  for (int v = 0; v < iv.g.size(); ++v)
    for (int u : iv.g.out(v)) {
      auto it = iv.edge_label.find(uint64_t(v) << 32 | uint64_t(u));
      std::string label;
      if (it != iv.edge_label.end())
        label = "(" + std::to_string(it->second.first) + "," +
                std::to_string(it->second.second) + ")";
      edges.push_back(nlohmann::ordered_json::array({v, u, label}));
    }
  j["edges"] = std::move(edges);
  return j.dump();
}

RankedDigraph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("levels") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON needs 'levels' and 'edges'");
  std::vector<int> levels;
  std::vector<std::pair<int, int>> edges;
  try {
    for (const auto& l : j.at("levels")) levels.push_back(l.get<int>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("each edge must be a [src, tgt] pair");
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad graph JSON: ") + e.what());
  }
  return RankedDigraph(std::move(levels), std::move(edges));
}

int top_vertex(const RankedDigraph& g) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  const int m = g.max_level();
  int top = -1;
  for (int v = 0; v < g.size(); ++v)
    if (g.level(v) == m) {
      if (top >= 0) throw std::invalid_argument("top level is not unique");
      top = v;
    }
  return top;
}

}  // namespace klhc
