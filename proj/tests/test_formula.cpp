#include <doctest.h>

#include <string>
#include <vector>

#include "klhc/decomp.hpp"
#include "klhc/formula.hpp"
#include "klhc/graph.hpp"
#include "klhc/klbase.hpp"
#include "klhc/perm.hpp"
#include "klhc/poly.hpp"

using namespace klhc;

namespace {

Permutation P(const char* s) { return parse_permutation(s); }

}  // namespace

TEST_CASE("crown interval checks out end to end") {
  BruhatInterval iv = build_interval(P("0213"), P("2301"));
  HypercubeDecomposition d = coset_decomposition(iv);
  KLTable t(4);

  CHECK(q_tilde(iv, d, t) == IntPolynomial({1, 1}));
  CHECK(q_piece(iv, d, t) == IntPolynomial({0, 1, 1}));

  InductiveExpansion ex = gamma_expansion(iv, d, t);
  REQUIRE(ex.order.size() == 3);
  // Crowns first, then notation order.
  CHECK(ex.order[0] == iv.index(P("0321")));
  CHECK(ex.order[1] == iv.index(P("0231")));
  CHECK(ex.order[2] == iv.index(P("0312")));
  CHECK(ex.nonneg);
  REQUIRE(ex.gamma_of(iv.index(P("0321"))) != nullptr);
  CHECK(*ex.gamma_of(iv.index(P("0321"))) == IntPolynomial::constant(1));
  CHECK(ex.gamma_of(iv.index(P("0231")))->is_zero());
  CHECK(ex.gamma_of(iv.index(P("0312")))->is_zero());
  CHECK(ex.gamma_of(iv.bottom()) == nullptr);

  CHECK(inductive_piece(iv, d, t) == IntPolynomial({1, 1}));
  CHECK(inductive_piece(iv, d, t, &ex) == IntPolynomial({1, 1}));

  VerificationRecord r = check_formula(iv, d, t);
  CHECK(r.pass);
  CHECK(r.gamma_nonneg);
  CHECK(r.q_nonneg);
  CHECK(r.dP == IntPolynomial({1, 2, 1}));
  CHECK(r.inductive == IntPolynomial({1, 1}));
  CHECK(r.q == IntPolynomial({0, 1, 1}));
  CHECK(r.dP == t.partial_kl(iv.x, iv.y));
  REQUIRE(r.z.has_value());
  CHECK(*r.z == P("0321"));

  CHECK(record_jsonl(r) ==
        "{\"x\":\"0213\",\"y\":\"2301\",\"z\":\"0321\",\"dP\":[1,2,1],"
        "\"I\":[1,1],\"Q\":[0,1,1],\"pass\":true,\"gamma_nonneg\":true}");
}

TEST_CASE("five letter showcase with the displayed crown") {
  BruhatInterval iv = build_interval(P("10243"), P("41230"));
  ValidationResult v =
      validate_decomposition(iv.g, iv.top(), iv.index(P("14230")));
  REQUIRE(v.ok());
  const HypercubeDecomposition& d = *v.decomposition;
  KLTable t(5);

  CHECK(q_tilde(iv, d, t) == IntPolynomial({1, 2, 1}));
  CHECK(q_piece(iv, d, t) == IntPolynomial({0, 0, 1, 2, 1}));

  InductiveExpansion ex = gamma_expansion(iv, d, t);
  CHECK(ex.nonneg);
  REQUIRE(ex.gamma_of(iv.index(P("14230"))) != nullptr);
  CHECK(*ex.gamma_of(iv.index(P("14230"))) == IntPolynomial::constant(1));
  REQUIRE(ex.gamma_of(iv.index(P("10432"))) != nullptr);
  CHECK(*ex.gamma_of(iv.index(P("10432"))) == IntPolynomial({0, 1}));
  int nonzero = 0;
  for (const IntPolynomial& g : ex.gamma)
    if (!g.is_zero()) ++nonzero;
  CHECK(nonzero == 2);

  CHECK(inductive_piece(iv, d, t, &ex) == IntPolynomial({1, 3, 3, 1}));

  VerificationRecord r = check_formula(iv, d, t);
  CHECK(r.pass);
  CHECK(r.gamma_nonneg);
  CHECK(r.q_nonneg);
  CHECK(r.dP == IntPolynomial({1, 3, 4, 3, 1}));

  // The derivative pins the polynomial itself back down.
  const int gap = iv.y.length() - iv.x.length();
  CHECK(gap == 5);
  CHECK(recover_from_partial(r.dP, gap) == IntPolynomial({1, 2, 1}));
  CHECK(t.kl(iv.x, iv.y) == IntPolynomial({1, 2, 1}));
}

TEST_CASE("single edge interval degenerates cleanly") {
  BruhatInterval iv = build_interval(P("012"), P("021"));
  HypercubeDecomposition d = coset_decomposition(iv);
  KLTable t(3);

  InductiveExpansion ex = gamma_expansion(iv, d, t);
  CHECK(ex.order.empty());
  CHECK(inductive_piece(iv, d, t) == IntPolynomial());
  CHECK(q_tilde(iv, d, t) == IntPolynomial::constant(1));
  CHECK(q_piece(iv, d, t) == IntPolynomial::constant(1));

  VerificationRecord r = check_formula(iv, d, t);
  CHECK(r.pass);
  CHECK(r.dP == IntPolynomial::constant(1));
}

TEST_CASE("empty edge family sums to zero") {
  BruhatInterval iv = build_interval(P("012"), P("021"));
  KLTable t(3);
  HypercubeDecomposition d;
  d.z = 0;
  d.members = Bitset(2);
  d.members.set(0);
  d.cube_sources.assign(2, {});
  CHECK(q_tilde(iv, d, t).is_zero());
}

TEST_CASE("breakage comes back as data") {
  BruhatInterval iv = build_interval(P("012"), P("210"));
  KLTable t(3);
  // A fabricated decomposition whose base family closes two squares; the
  // crown map refuses it.
  HypercubeDecomposition d;
  d.z = 0;
  d.members = Bitset(size_t(iv.g.size()));
  d.members.set(0);
  d.cube_sources.assign(size_t(iv.g.size()), {});
  d.cube_sources[0] = {iv.index(P("021")), iv.index(P("102"))};

  VerificationRecord r = check_formula(iv, d, t);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.error.empty());
  std::string line = record_jsonl(r);
  CHECK(line.find("\"error\":") != std::string::npos);
  CHECK(line.find("\"pass\":false") != std::string::npos);
  CHECK(line.find("\"dP\"") == std::string::npos);
}
