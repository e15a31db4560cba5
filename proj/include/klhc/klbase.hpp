#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "klhc/perm.hpp"
#include "klhc/poly.hpp"

namespace klhc {

// Kazhdan-Lusztig polynomials for one symmetric group window, computed by the
// classical length recursion on the leftmost descent and memoized by column:
// column(y) holds P_{x,y} for every x <= y, which is exactly the support the
// correction terms need.
//
// Not thread-safe under mutation. The intended concurrent pattern is
// precompute_all() followed by read-only find()/kl() queries, which never
// touch the memo again.
class KLTable {
public:
  using Column = std::unordered_map<uint64_t, IntPolynomial>;

  explicit KLTable(int window);

  int window() const { return window_; }

  // P_{x,y}; zero when x is not below y. Computes and memoizes on demand.
  IntPolynomial kl(const Permutation& x, const Permutation& y);

  // Read-only lookup into already computed columns; nullptr if the column is
  // absent. Zero polynomials (x not below y) come back as nullptr too.
  const IntPolynomial* find(const Permutation& x, const Permutation& y) const;

  // Coefficient of q^((l(y)-l(x)-1)/2) in P_{x,y} when the length gap is odd,
  // zero otherwise. Requires x < y strictly.
  int64_t mu(const Permutation& x, const Permutation& y);

  // The q-derivative transform of P_{x,y} with N = l(y) - l(x); zero when
  // x = y. Requires x <= y.
  IntPolynomial partial_kl(const Permutation& x, const Permutation& y);

  // Builds every column of the window (window <= 8). jobs <= 1 runs the
  // serial reference; larger values split each length level across OpenMP
  // threads. Both orders produce the same table.
  void precompute_all(int jobs = 1);

  // Number of memoized (x, y) pairs.
  std::size_t entries() const;

  // One pair per line: "x<TAB>y<TAB>[c0,c1,...]", sorted. Loaded entries are
  // validated and then serve top-level queries only; the recursion always
  // rebuilds its own columns so that a partial file cannot poison it.
  void save_cache(const std::string& path) const;
  void load_cache(const std::string& path);

private:
  const Column& ensure_column(const Permutation& y);
  Column make_column(const Permutation& y, bool recurse);
  const Column* column_ptr(const Permutation& y, bool recurse);

  int window_;
  std::unordered_map<uint64_t, Column> columns_;
  std::unordered_map<uint64_t, Column> external_;  // from load_cache, keyed by y
};

// All w! permutations of the window in lexicographic one-line order.
// Guarded to window <= 8; beyond that enumeration is not sensible here.
std::vector<Permutation> enumerate_symmetric_group(int window);

}  // namespace klhc
