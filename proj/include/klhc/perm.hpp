#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace klhc {

constexpr int kMaxWindow = 16;

// Permutation of {0, ..., w-1} in one-line notation, w <= 16. The window size
// is part of the value: permutations of different windows never compare equal
// and may not be composed.
class Permutation {
public:
  Permutation() : window_(1) { img_.fill(0); }

  // One-line notation; images must be a bijection on {0, ..., images.size()-1}.
  explicit Permutation(const std::vector<int>& images);

  static Permutation identity(int window);
  // Swaps the values i and j, fixing everything else.
  static Permutation transposition(int window, int i, int j);
  // Longest element (w-1, w-2, ..., 0).
  static Permutation longest(int window);

  int window() const { return window_; }
  int operator()(int i) const { return img_[i]; }
  int size() const { return window_; }

  Permutation inverse() const;

  // Inversion count.
  int length() const;

  // Inverse of packed() for a known window.
  static Permutation from_packed(uint64_t key, int window);

  // 16 images in 4-bit nibbles; unique per (window, images) pair within a
  // fixed window. Used as a hash/map key.
  uint64_t packed() const {
    uint64_t k = 0;
    for (int i = 0; i < window_; ++i) k |= uint64_t(img_[i]) << (4 * i);
    return k;
  }

  bool operator==(const Permutation& o) const {
    return window_ == o.window_ && img_ == o.img_;
  }
  // Lexicographic on the one-line notation; windows must match for a
  // meaningful order, shorter windows sort first regardless.
  bool operator<(const Permutation& o) const;

  // Digit string for window <= 10 ("2031"), comma separated otherwise.
  std::string str() const;

  friend Permutation compose(const Permutation& a, const Permutation& b);

private:
  std::array<uint8_t, kMaxWindow> img_;
  int window_;
};

// (a o b)(i) = a(b(i)). "Multiplying by a transposition t" means compose(t, u).
Permutation compose(const Permutation& a, const Permutation& b);

inline Permutation operator*(const Permutation& a, const Permutation& b) {
  return compose(a, b);
}

// Accepts a digit string or a comma-separated list. Throws
// std::invalid_argument on anything that is not a permutation of {0,...,n}.
Permutation parse_permutation(const std::string& text);

// Entry (p, q) counts the 1s of the permutation matrix weakly below row p and
// weakly left of column q, i.e. #{a <= q : x(a) >= p}. Rows index values
// (0 at the top), columns index positions.
class CornerRankMatrix {
public:
  CornerRankMatrix() : window_(0) { e_.fill(0); }
  explicit CornerRankMatrix(const Permutation& x);

  int window() const { return window_; }
  int entry(int p, int q) const { return e_[p * window_ + q]; }

  bool operator==(const CornerRankMatrix& o) const {
    return window_ == o.window_ && e_ == o.e_;
  }

  // Entrywise <=; this is the Bruhat comparison.
  bool dominated_by(const CornerRankMatrix& o) const;

private:
  std::array<uint8_t, kMaxWindow * kMaxWindow> e_;
  int window_;
};

CornerRankMatrix corner_rank_matrix(const Permutation& x);

// Bruhat order via entrywise corner rank comparison.
bool bruhat_leq(const Permutation& u, const Permutation& v);

// Flattens the values of u at the given positions (which must be strictly
// increasing) to a permutation of {0, ..., k-1}.
Permutation pattern_restriction(const Permutation& u,
                                const std::vector<int>& positions);

// Transpositions t = (i, j), i < j, with length(t * v) > length(v); these are
// exactly the pairs whose smaller value sits left of the larger one in v.
std::vector<std::pair<int, int>> upper_transpositions(const Permutation& v);

}  // namespace klhc
