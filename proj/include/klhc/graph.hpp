#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klhc/bitset.hpp"
#include "klhc/perm.hpp"

namespace klhc {

// Finite digraph with an integer rank on each vertex; every edge points from
// the strictly higher level to the strictly lower one. Adjacency bitsets and
// downward reachability are built once at construction.
class RankedDigraph {
public:
  RankedDigraph() = default;
  RankedDigraph(std::vector<int> levels,
                std::vector<std::pair<int, int>> edges);

  int size() const { return int(level_.size()); }
  int num_edges() const { return nedges_; }
  int level(int v) const { return level_[size_t(v)]; }
  int max_level() const;

  const std::vector<int>& out(int v) const { return out_[size_t(v)]; }
  const std::vector<int>& in(int v) const { return in_[size_t(v)]; }
  const Bitset& out_bits(int v) const { return outb_[size_t(v)]; }
  const Bitset& in_bits(int v) const { return inb_[size_t(v)]; }

  bool has_edge(int u, int v) const { return outb_[size_t(u)].test(size_t(v)); }
  // Reflexive downward reachability: u lies weakly above v.
  bool reaches(int u, int v) const { return down_[size_t(u)].test(size_t(v)); }
  const Bitset& down_of(int v) const { return down_[size_t(v)]; }

private:
  std::vector<int> level_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<Bitset> outb_, inb_, down_;
  int nedges_ = 0;
};

// {u : u weakly below v in the graph order}, as a vertex bitset.
Bitset down_set(const RankedDigraph& g, int v);

// Four distinct vertices carrying the edge pattern top->left, top->right,
// left->bottom, right->bottom; left < right as vertex indices.
struct Diamond {
  int top, left, right, bottom;
  bool operator==(const Diamond& o) const {
    return top == o.top && left == o.left && right == o.right &&
           bottom == o.bottom;
  }
};

// All diamonds, ordered by (top, left, right, bottom).
std::vector<Diamond> diamonds(const RankedDigraph& g);

// J is diamond complete when no diamond meets it in exactly three of its four
// vertices; equivalently, whenever J contains one of the two-edge corner
// configurations of a diamond it contains the whole diamond.
bool is_diamond_complete(const RankedDigraph& g, const Bitset& members);
std::optional<Diamond> find_incomplete_diamond(const std::vector<Diamond>& ds,
                                               const Bitset& members);

// Every vertex has the same undirected degree.
bool is_regular_undirected(const RankedDigraph& g);

// Canonical byte string: two graphs get equal keys exactly when an
// isomorphism preserving levels (and the optional vertex coloring) exists.
// Color refinement plus backtracking over the first ambiguous cell; the
// search is budgeted and throws std::runtime_error if a pathological graph
// exhausts it.
std::string canonical_key(const RankedDigraph& g,
                          const std::vector<int>* colors = nullptr);

// Bruhat interval [x, y] with the graph structure on it: vertices are the
// permutations between x and y, edges join pairs differing by one
// transposition, oriented from longer to shorter. Vertex order is
// deterministic: by level, then one-line notation.
struct BruhatInterval {
  Permutation x, y;
  RankedDigraph g;
  std::vector<Permutation> vertex;              // by vertex id
  std::unordered_map<uint64_t, int> index_of;   // packed perm -> vertex id
  // Edge labels: packed (src, dst) -> transposition (i, j).
  std::unordered_map<uint64_t, std::pair<int, int>> edge_label;

  int bottom() const { return 0; }
  int top() const { return g.size() - 1; }
  int index(const Permutation& p) const {
    auto it = index_of.find(p.packed());
    return it == index_of.end() ? -1 : it->second;
  }
};

// Throws std::invalid_argument unless x <= y.
BruhatInterval build_interval(const Permutation& x, const Permutation& y);

// Optional decoration for exports.
struct GraphHighlight {
  Bitset members;                             // filled vertices
  std::vector<std::pair<int, int>> edges;     // colored edges (src, dst)
};

std::string interval_to_dot(const BruhatInterval& iv,
                            const GraphHighlight* hl = nullptr);
// Serialized JSON: {"x":..., "y":..., "vertices":[...], "edges":[[si,ti,"(i,j)"],...]}.
std::string interval_to_json(const BruhatInterval& iv);

// Abstract graph fixture: {"levels":[...], "edges":[[src,tgt],...]}.
RankedDigraph graph_from_json(const std::string& text);
// The unique vertex of maximal level; throws if it is not unique.
int top_vertex(const RankedDigraph& g);

}  // namespace klhc
