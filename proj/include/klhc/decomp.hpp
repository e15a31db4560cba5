#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klhc/graph.hpp"
#include "klhc/hypercube.hpp"

namespace klhc {

// A hypercube decomposition of the graph under a top vertex y: a down-set
// J = downset(z) for some z != y that is diamond complete and whose incoming
// edge family at every member (edges entering from outside J) spans a
// hypercube cluster there.
struct HypercubeDecomposition {
  int z = -1;
  Bitset members;
  // Indexed by vertex; for members, the ascending sources of edges entering
  // from outside the down-set. Empty for non-members.
  std::vector<std::vector<int>> cube_sources;
};

struct DecompositionFailure {
  enum class Kind { NotDiamondComplete, ClusterFailure };
  Kind kind;
  Diamond diamond{-1, -1, -1, -1};  // witness when a diamond is incomplete
  int vertex = -1;                  // cluster base when a cluster fails
  std::vector<int> subset;          // the failing incomparable subfamily
  std::string describe() const;
};

struct ValidationResult {
  std::optional<HypercubeDecomposition> decomposition;
  std::optional<DecompositionFailure> failure;
  bool ok() const { return decomposition.has_value(); }
};

// Checks the down-set of z. Throws std::invalid_argument when z is the top
// vertex or out of range; structural failures come back as data. A diamond
// list may be supplied to amortize enumeration across many z.
ValidationResult validate_decomposition(const RankedDigraph& g, int top, int z,
                                        const std::vector<Diamond>* ds = nullptr);

// All valid z in ascending vertex order (top excluded).
std::vector<HypercubeDecomposition> enumerate_decompositions(
    const RankedDigraph& g, int top);

// The decomposition carved out by a coset slice: members are the interval
// elements placing value k where x does, where k is the smallest value whose
// position differs between x and y (values below k are pinned across the
// whole interval). The members form the down-set of a unique maximal element
// and always validate; any violation means the machinery is broken, so it
// throws std::runtime_error.
HypercubeDecomposition coset_decomposition(const BruhatInterval& iv);

// Serialized JSON {"z":..., "members":[...], "hypercube_edges":{"v":[[u,v],...]}}.
// Vertices are rendered as permutation strings when an interval is supplied,
// vertex indices otherwise.
std::string decomposition_to_json(const HypercubeDecomposition& d,
                                  const BruhatInterval* iv = nullptr);

}  // namespace klhc
