#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "klhc/klbase.hpp"
#include "klhc/perm.hpp"

using namespace klhc;

TEST_CASE("construction and notation") {
  Permutation p({2, 0, 3, 1});
  CHECK(p.window() == 4);
  CHECK(p(0) == 2);
  CHECK(p.str() == "2031");
  CHECK(parse_permutation("2031") == p);
  CHECK(parse_permutation("2,0,3,1") == p);
  CHECK(parse_permutation("2031").packed() == p.packed());
  CHECK(Permutation::from_packed(p.packed(), 4) == p);

  CHECK_THROWS_AS(parse_permutation("2231"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation("031"), std::invalid_argument);
  CHECK_THROWS_AS(parse_permutation(""), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("factories, length, inverse") {
  CHECK(Permutation::identity(4).str() == "0123");
  CHECK(Permutation::longest(4).str() == "3210");
  CHECK(Permutation::longest(4).length() == 6);
  CHECK(Permutation::identity(5).length() == 0);
  CHECK(Permutation::transposition(4, 1, 3).str() == "0321");

  Permutation p = parse_permutation("2031");
  CHECK(p.length() == 3);
  CHECK(p.inverse().str() == "1302");
  CHECK((p * p.inverse()) == Permutation::identity(4));
}

TEST_CASE("composition is left-to-right application of the right factor") {
  // (a o b)(i) = a(b(i)); multiplying by a value transposition on the left
  // swaps those two values in one-line notation.
  Permutation t = Permutation::transposition(3, 0, 1);
  Permutation v = parse_permutation("120");
  CHECK((t * v).str() == "021");
  Permutation u = parse_permutation("201");
  CHECK((u * v) == Permutation({0, 1, 2}));  // u = v^{-1}
}

TEST_CASE("corner rank displays") {
  // Both matrices are pinned values: entry (p,q) counts ones of the
  // permutation matrix weakly below row p, weakly left of column q.
  CornerRankMatrix a(parse_permutation("1230"));
  const int ea[4][4] = {
      {1, 2, 3, 4}, {1, 2, 3, 3}, {0, 1, 2, 2}, {0, 0, 1, 1}};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) CHECK(a.entry(p, q) == ea[p][q]);

  CornerRankMatrix b(parse_permutation("2301"));
  const int eb[4][4] = {
      {1, 2, 3, 4}, {1, 2, 2, 3}, {1, 2, 2, 2}, {0, 1, 1, 1}};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) CHECK(b.entry(p, q) == eb[p][q]);

  CHECK_FALSE(bruhat_leq(parse_permutation("1230"), parse_permutation("2301")));
  CHECK_FALSE(bruhat_leq(parse_permutation("2301"), parse_permutation("1230")));
}

namespace {

// Independent Bruhat oracle: reflexive-transitive closure of the
// length-decreasing transposition moves, computed by BFS from each element.
std::map<uint64_t, std::vector<Permutation>> downward_closure(int n) {
  std::map<uint64_t, std::vector<Permutation>> below;
  for (const Permutation& v : enumerate_symmetric_group(n)) {
    std::vector<Permutation> frontier{v}, all{v};
    std::vector<uint64_t> seen{v.packed()};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (const Permutation& u : frontier)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            Permutation w = Permutation::transposition(n, i, j) * u;
            if (w.length() >= u.length()) continue;
            if (std::find(seen.begin(), seen.end(), w.packed()) != seen.end())
              continue;
            seen.push_back(w.packed());
            next.push_back(w);
            all.push_back(w);
          }
      frontier = std::move(next);
    }
    below[v.packed()] = std::move(all);
  }
  return below;
}

}  // namespace

TEST_CASE("bruhat_leq matches the reachability oracle exhaustively") {
  for (int n = 2; n <= 5; ++n) {
    auto below = downward_closure(n);
    const auto perms = enumerate_symmetric_group(n);
    for (const Permutation& y : perms) {
      const auto& reach = below[y.packed()];
      for (const Permutation& x : perms) {
        const bool oracle =
            std::find(reach.begin(), reach.end(), x) != reach.end();
        CHECK(bruhat_leq(x, y) == oracle);
      }
    }
  }
}

TEST_CASE("bruhat order sanity") {
  const auto perms = enumerate_symmetric_group(4);
  const Permutation id = Permutation::identity(4);
  const Permutation w0 = Permutation::longest(4);
  for (const Permutation& v : perms) {
    CHECK(bruhat_leq(id, v));
    CHECK(bruhat_leq(v, w0));
    CHECK(bruhat_leq(v, v));
  }
  for (const Permutation& u : perms)
    for (const Permutation& v : perms) {
      if (bruhat_leq(u, v) && bruhat_leq(v, u)) CHECK(u == v);
      if (bruhat_leq(u, v) && !(u == v)) CHECK(u.length() < v.length());
      // Inverse is an automorphism of the order.
      CHECK(bruhat_leq(u, v) == bruhat_leq(u.inverse(), v.inverse()));
    }
}

TEST_CASE("pattern restriction flattens selected positions") {
  Permutation p = parse_permutation("31042");
  CHECK(p.window() == 5);
  CHECK(pattern_restriction(p, {0, 2, 4}).str() == "201");
  CHECK(pattern_restriction(p, {1, 3}).str() == "01");
  CHECK(pattern_restriction(p, {0, 1, 2, 3, 4}) == p);
  CHECK_THROWS_AS(pattern_restriction(p, {2, 0}), std::invalid_argument);
}

TEST_CASE("upper transpositions") {
  // Pairs (i, j) whose swap increases length: i sits left of j in v.
  auto ups = upper_transpositions(Permutation::identity(3));
  CHECK(ups.size() == 3);
  CHECK(upper_transpositions(Permutation::longest(3)).empty());
  for (auto [i, j] : upper_transpositions(parse_permutation("1032"))) {
    Permutation t = Permutation::transposition(4, i, j);
    CHECK((t * parse_permutation("1032")).length() > 2);
  }
}
