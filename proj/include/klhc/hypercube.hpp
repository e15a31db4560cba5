#pragma once

#include <optional>
#include <vector>

#include "klhc/graph.hpp"
#include "klhc/perm.hpp"

namespace klhc {

// A family of edges into a common base vertex is named by its source
// vertices. Spanning a hypercube means the subset lattice 2^E embeds into the
// graph in exactly one way: the empty set at the base, singletons at the
// sources, every lattice edge (delete one element) landing on a graph edge,
// all images distinct.
struct HypercubeEmbedding {
  // vertex_of[mask] for mask over the source list; [0] is the base and the
  // full mask is the crown.
  std::vector<int> vertex_of;
};

// Number of distinct embeddings, counting up to `limit` and stopping there.
int count_hypercube_embeddings(const RankedDigraph& g, int base,
                               const std::vector<int>& sources, int limit = 2);

// The embedding when it exists and is unique, otherwise nullopt.
std::optional<HypercubeEmbedding> spans_hypercube(const RankedDigraph& g,
                                                  int base,
                                                  const std::vector<int>& sources);

// Sources of the family that are maximal in the graph order.
std::vector<int> maximal_edges(const RankedDigraph& g,
                               const std::vector<int>& sources);

// Every subfamily with pairwise incomparable sources spans a hypercube
// (families of size < 2 span trivially).
bool spans_cluster(const RankedDigraph& g, int base,
                   const std::vector<int>& sources);
// First failing incomparable subfamily in (size, mask) order, nullopt if the
// family is a cluster.
std::optional<std::vector<int>> find_cluster_failure(
    const RankedDigraph& g, int base, const std::vector<int>& sources);

// Crown map of a spanning cluster: F is a subfamily of the cluster edges at
// the base; the value is the crown of the hypercube spanned by the maximal
// edges of F. theta(empty) is the base. Throws std::logic_error if the
// maximal subfamily fails to span uniquely, which a valid cluster rules out.
int theta(const RankedDigraph& g, int base, const std::vector<int>& F);

// The value-side companions, defined directly on permutations. x has its 0 at
// position m; I is a set of values occurring to the right of m.

// Subsequence of I picked greedily left to right: the largest value first,
// then the largest value positioned to its right, and so on. Decreasing in
// value, increasing in position.
std::vector<int> greedy_decreasing(const Permutation& x,
                                   const std::vector<int>& I);

// sigma_I * x where sigma_I cycles 0 -> i_1 -> ... -> i_l -> 0 over the
// greedy subsequence: the surviving values of I shift one step left along the
// subsequence and 0 moves to the last of their positions.
Permutation theta_explicit(const Permutation& x, const std::vector<int>& I);

// The same permutation recovered from its corner rank matrix: ranks of x,
// bumped by one at (p, q) with p >= 1 when some value of I that is >= p sits
// strictly right of position q. Throws std::logic_error if the bumped family
// is not the corner rank matrix of a permutation.
Permutation theta_corner_rank(const Permutation& x, const std::vector<int>& I);

}  // namespace klhc
