#include "klhc/decomp.hpp"

#include <stdexcept>

#include <json.hpp>

namespace klhc {

std::string DecompositionFailure::describe() const {
  if (kind == Kind::NotDiamondComplete) {
    return "diamond (" + std::to_string(diamond.top) + "," +
           std::to_string(diamond.left) + "," + std::to_string(diamond.right) +
           "," + std::to_string(diamond.bottom) +
           ") meets the down-set in exactly three vertices";
  }
  std::string s = "edge family at vertex " + std::to_string(vertex) +
                  " fails to span a hypercube for sources {";
  for (size_t i = 0; i < subset.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(subset[i]);
  }
  return s + "}";
}

ValidationResult validate_decomposition(const RankedDigraph& g, int top, int z,
                                        const std::vector<Diamond>* ds) {
  if (z < 0 || z >= g.size())
    throw std::invalid_argument("z out of range");
  if (z == top)
    throw std::invalid_argument("z must differ from the top vertex");

  const Bitset members = g.down_of(z);

  std::vector<Diamond> local;
  if (!ds) {
    local = diamonds(g);
    ds = &local;
  }
  if (auto bad = find_incomplete_diamond(*ds, members)) {
    ValidationResult r;
    r.failure = DecompositionFailure{
        DecompositionFailure::Kind::NotDiamondComplete, *bad, -1, {}};
    return r;
  }

  HypercubeDecomposition d;
  d.z = z;
  d.members = members;
  d.cube_sources.assign(size_t(g.size()), {});
  ValidationResult r;
  bool failed = false;
  members.for_each([&](std::size_t v) {
    if (failed) return;
    std::vector<int> fam;
    for (int u : g.in(int(v)))
      if (!members.test(size_t(u))) fam.push_back(u);
    if (auto bad = find_cluster_failure(g, int(v), fam)) {
      r.failure = DecompositionFailure{
          DecompositionFailure::Kind::ClusterFailure,
          Diamond{-1, -1, -1, -1}, int(v), std::move(*bad)};
      failed = true;
      return;
    }
    d.cube_sources[v] = std::move(fam);
  });
  if (failed) return r;
  r.decomposition = std::move(d);
  return r;
}

std::vector<HypercubeDecomposition> enumerate_decompositions(
    const RankedDigraph& g, int top) {
  if (top < 0 || top >= g.size())
    throw std::invalid_argument("top vertex out of range");
  const std::vector<Diamond> ds = diamonds(g);
  std::vector<HypercubeDecomposition> out;
  for (int z = 0; z < g.size(); ++z) {
    if (z == top) continue;
    ValidationResult r = validate_decomposition(g, top, z, &ds);
    if (r.ok()) out.push_back(std::move(*r.decomposition));
  }
  return out;
}

HypercubeDecomposition coset_decomposition(const BruhatInterval& iv) {
  // Slice on the smallest value whose position differs between the
  // endpoints. Any value below it sits at the same position in every member
  // (squeeze the corner-rank rows), so slicing on those would select the
  // whole interval and put the crown at the top, which the definition
  // forbids. For endpoints that already disagree at zero this is the plain
  // zero-position coset; otherwise it is that coset transported through the
  // deletion isomorphism that strips the pinned values.
  if (iv.x == iv.y)
    throw std::invalid_argument("coset slice needs distinct endpoints");
  const Permutation xi = iv.x.inverse();
  const Permutation yi = iv.y.inverse();
  int k = 0;
  while (xi(k) == yi(k)) ++k;  // x != y, so some value moves
  const int m = xi(k);
  std::vector<int> slice;
  for (int v = 0; v < iv.g.size(); ++v)
    if (iv.vertex[size_t(v)].inverse()(k) == m) slice.push_back(v);

  // The slice must be the down-set of a unique maximal member.
  int c = -1;
  for (int v : slice) {
    bool dominated = false;
    for (int u : slice)
      if (u != v && iv.g.reaches(u, v)) {
        dominated = true;
        break;
      }
    if (!dominated) {
      if (c >= 0)
        throw std::runtime_error(
            "coset slice has more than one maximal element");
      c = v;
    }
  }
  if (c < 0) throw std::runtime_error("coset slice is empty");

  Bitset expected(static_cast<size_t>(iv.g.size()));
  for (int v : slice) expected.set(size_t(v));
  if (!(iv.g.down_of(c) == expected))
    throw std::runtime_error(
        "coset slice is not the down-set of its maximal element");

  ValidationResult r = validate_decomposition(iv.g, iv.top(), c);
  if (!r.ok())
    throw std::runtime_error("coset slice fails to decompose: " +
                             r.failure->describe());
  return std::move(*r.decomposition);
}

std::string decomposition_to_json(const HypercubeDecomposition& d,
                                  const BruhatInterval* iv) {
  auto name = [&](int v) -> nlohmann::ordered_json {
    if (iv) return iv->vertex[size_t(v)].str();
    return v;
  };
  nlohmann::ordered_json j;
  j["z"] = name(d.z);
  auto members = nlohmann::ordered_json::array();
  d.members.for_each([&](std::size_t v) { members.push_back(name(int(v))); });
  j["members"] = std::move(members);
  auto cubes = nlohmann::ordered_json::object();
  d.members.for_each([&](std::size_t v) {
    auto edges = nlohmann::ordered_json::array();
    for (int u : d.cube_sources[v])
      edges.push_back(nlohmann::ordered_json::array({name(u), name(int(v))}));
    std::string key = iv ? iv->vertex[v].str() : std::to_string(v);
    cubes[key] = std::move(edges);
  });
  j["hypercube_edges"] = std::move(cubes);
  return j.dump();
}

}  // namespace klhc
