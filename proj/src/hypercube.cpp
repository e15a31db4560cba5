#include "klhc/hypercube.hpp"

#include <algorithm>
#include <stdexcept>

namespace klhc {

namespace {

// Shared backtracking over subset masks in popcount order. Lower subsets are
// assigned before any mask that contains them, so each candidate set is the
// intersection of in-neighborhoods of already placed faces.
struct EmbedSearch {
  const RankedDigraph& g;
  const std::vector<int>& sources;
  std::vector<int> order;      // masks with popcount >= 2, by (popcount, value)
  std::vector<int> phi;        // mask -> vertex
  Bitset used;
  int found = 0;
  int limit;
  std::vector<int> first;      // phi of the first embedding found

  EmbedSearch(const RankedDigraph& gg, int base, const std::vector<int>& src,
              int lim)
      : g(gg), sources(src), used(size_t(gg.size())), limit(lim) {
    const int k = int(src.size());
    phi.assign(size_t(1) << k, -1);
    phi[0] = base;
    used.set(size_t(base));
    for (int i = 0; i < k; ++i) {
      phi[size_t(1) << i] = src[size_t(i)];
      used.set(size_t(src[size_t(i)]));
    }
    for (int m = 0; m < (1 << k); ++m)
      if (__builtin_popcount(unsigned(m)) >= 2) order.push_back(m);
    std::sort(order.begin(), order.end(), [](int a, int b) {
      const int pa = __builtin_popcount(unsigned(a));
      const int pb = __builtin_popcount(unsigned(b));
      return pa != pb ? pa < pb : a < b;
    });
  }

  void dfs(size_t idx) {
    if (found >= limit) return;
    if (idx == order.size()) {
      if (found++ == 0) first = phi;
      return;
    }
    const int m = order[idx];
    Bitset cand(static_cast<size_t>(g.size()));
    bool init = false;
    for (int e = m; e;) {
      const int bit = e & -e;
      e ^= bit;
      const int sub = m ^ bit;
      const Bitset& inb = g.in_bits(phi[size_t(sub)]);
      if (!init) {
        cand = inb;
        init = true;
      } else {
        cand &= inb;
      }
    }
    cand.for_each([&](std::size_t v) {
      if (found >= limit || used.test(v)) return;
      phi[size_t(m)] = int(v);
      used.set(v);
      dfs(idx + 1);
      used.reset(v);
      phi[size_t(m)] = -1;
    });
  }
};

void check_family(const RankedDigraph& g, int base,
                  const std::vector<int>& sources) {
  if (base < 0 || base >= g.size())
    throw std::invalid_argument("base vertex out of range");
  for (size_t i = 0; i < sources.size(); ++i) {
    const int s = sources[i];
    if (s < 0 || s >= g.size())
      throw std::invalid_argument("source vertex out of range");
    if (!g.has_edge(s, base))
      throw std::invalid_argument("family member is not an edge into the base");
    for (size_t j = i + 1; j < sources.size(); ++j)
      if (sources[j] == s)
        throw std::invalid_argument("duplicate source in edge family");
  }
}

}  // namespace

int count_hypercube_embeddings(const RankedDigraph& g, int base,
                               const std::vector<int>& sources, int limit) {
  check_family(g, base, sources);
  // A k-cube needs 2^k distinct vertices.
  if (sources.size() >= 31 || (int64_t(1) << sources.size()) > g.size())
    return 0;
  EmbedSearch s(g, base, sources, limit);
  s.dfs(0);
  return s.found;
}

std::optional<HypercubeEmbedding> spans_hypercube(
    const RankedDigraph& g, int base, const std::vector<int>& sources) {
  check_family(g, base, sources);
  if (sources.size() >= 31 || (int64_t(1) << sources.size()) > g.size())
    return std::nullopt;
  EmbedSearch s(g, base, sources, 2);
  s.dfs(0);
  if (s.found != 1) return std::nullopt;
  return HypercubeEmbedding{std::move(s.first)};
}

std::vector<int> maximal_edges(const RankedDigraph& g,
                               const std::vector<int>& sources) {
  std::vector<int> out;
  for (int u : sources) {
    bool dominated = false;
    for (int v : sources)
      if (v != u && g.reaches(v, u)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(u);
  }
  return out;
}

std::optional<std::vector<int>> find_cluster_failure(
    const RankedDigraph& g, int base, const std::vector<int>& sources) {
  check_family(g, base, sources);
  const int k = int(sources.size());
  if (k < 2) return std::nullopt;
  // conflict[i]: sources comparable with source i.
  std::vector<uint32_t> conflict(size_t(k), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && (g.reaches(sources[size_t(i)], sources[size_t(j)]) ||
                     g.reaches(sources[size_t(j)], sources[size_t(i)])))
        conflict[size_t(i)] |= uint32_t(1) << j;

  std::vector<int> masks;
  for (int m = 0; m < (1 << k); ++m)
    if (__builtin_popcount(unsigned(m)) >= 2) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](int a, int b) {
    const int pa = __builtin_popcount(unsigned(a));
    const int pb = __builtin_popcount(unsigned(b));
    return pa != pb ? pa < pb : a < b;
  });
  for (int m : masks) {
    bool antichain = true;
    for (int e = m; e;) {
      const int i = __builtin_ctz(unsigned(e));
      e &= e - 1;
      if (uint32_t(m) & conflict[size_t(i)]) {
        antichain = false;
        break;
      }
    }
    if (!antichain) continue;
    std::vector<int> fam;
    for (int e = m; e;) {
      fam.push_back(sources[size_t(__builtin_ctz(unsigned(e)))]);
      e &= e - 1;
    }
    if (!spans_hypercube(g, base, fam)) return fam;
  }
  return std::nullopt;
}

bool spans_cluster(const RankedDigraph& g, int base,
                   const std::vector<int>& sources) {
  return !find_cluster_failure(g, base, sources).has_value();
}

int theta(const RankedDigraph& g, int base, const std::vector<int>& F) {
  if (F.empty()) return base;
  const std::vector<int> fmax = maximal_edges(g, F);
  auto emb = spans_hypercube(g, base, fmax);
  if (!emb)
    throw std::logic_error(
        "theta: maximal subfamily does not span a unique hypercube");
  return emb->vertex_of.back();
}

namespace {

// Validates that I consists of distinct values of x occurring strictly right
// of x's zero; returns the position of the zero.
int zero_position(const Permutation& x, const std::vector<int>& I) {
  const Permutation xinv = x.inverse();
  const int m = xinv(0);
  for (size_t a = 0; a < I.size(); ++a) {
    const int v = I[a];
    if (v <= 0 || v >= x.window())
      throw std::invalid_argument("value out of range in theta family");
    if (xinv(v) <= m)
      throw std::invalid_argument(
          "theta family values must occur right of the zero");
    for (size_t b = a + 1; b < I.size(); ++b)
      if (I[b] == v) throw std::invalid_argument("duplicate value in family");
  }
  return m;
}

}  // namespace

std::vector<int> greedy_decreasing(const Permutation& x,
                                   const std::vector<int>& I) {
  zero_position(x, I);
  if (I.empty()) return {};
  const Permutation xinv = x.inverse();
  std::vector<int> seq;
  int cur = *std::max_element(I.begin(), I.end());
  seq.push_back(cur);
  for (;;) {
    const int pos = xinv(cur);
    int next = -1;
    for (int v : I)
      if (xinv(v) > pos && (next < 0 || v > next)) next = v;
    if (next < 0) break;
    seq.push_back(next);
    cur = next;
  }
  return seq;
}

Permutation theta_explicit(const Permutation& x, const std::vector<int>& I) {
  zero_position(x, I);
  if (I.empty()) return x;
  const std::vector<int> seq = greedy_decreasing(x, I);
  std::vector<int> sigma(static_cast<size_t>(x.window()));
  for (int i = 0; i < x.window(); ++i) sigma[size_t(i)] = i;
  sigma[0] = seq.front();
  for (size_t k = 0; k + 1 < seq.size(); ++k)
    sigma[size_t(seq[k])] = seq[k + 1];
  sigma[size_t(seq.back())] = 0;
  return Permutation(sigma) * x;
}

Permutation theta_corner_rank(const Permutation& x, const std::vector<int>& I) {
  const int m = zero_position(x, I);
  if (I.empty()) return x;
  const int w = x.window();
  const Permutation xinv = x.inverse();
  const CornerRankMatrix crx(x);

  // rightmost[p]: largest position holding a family value >= p, -1 if none.
  std::vector<int> rightmost(size_t(w) + 1, -1);
  for (int p = w - 1; p >= 0; --p) {
    rightmost[size_t(p)] = rightmost[size_t(p) + 1];
    for (int v : I)
      if (v == p) rightmost[size_t(p)] = std::max(rightmost[size_t(p)], xinv(v));
  }

  auto r = [&](int p, int q) -> int {
    if (q < 0) return 0;
    int base = crx.entry(p, q);
    if (p >= 1 && q >= m && rightmost[size_t(p)] > q) ++base;
    return base;
  };

  std::vector<int> img(size_t(w), -1);
  for (int q = 0; q < w; ++q) {
    int val = -1;
    for (int p = 0; p < w; ++p)
      if (r(p, q) - r(p, q - 1) == 1) val = std::max(val, p);
    if (val < 0)
      throw std::logic_error("corner rank family has an empty column");
    img[size_t(q)] = val;
  }
  Permutation u;
  try {
    u = Permutation(img);
  } catch (const std::invalid_argument&) {
    throw std::logic_error("corner rank family is not a permutation");
  }
  const CornerRankMatrix cru(u);
  for (int p = 0; p < w; ++p)
    for (int q = 0; q < w; ++q)
      if (cru.entry(p, q) != r(p, q))
        throw std::logic_error("corner rank family is not realizable");
  return u;
}

}  // namespace klhc
