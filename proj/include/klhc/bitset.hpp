#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace klhc {

// Fixed-size bit vector sized at construction. Used for vertex sets and
// reachability rows; graphs here stay small (a few thousand vertices), so a
// flat word array beats anything fancier.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  std::size_t count() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::size_t(__builtin_popcountll(w));
    return c;
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

  // True when this set contains o.
  bool contains(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (o.w_[i] & ~w_[i]) return false;
    return true;
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // Calls f(i) for each set bit, ascending.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t w = w_[wi];
      while (w) {
        unsigned b = unsigned(__builtin_ctzll(w));
        f(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> to_indices() const {
    std::vector<std::size_t> v;
    v.reserve(count());
    for_each([&](std::size_t i) { v.push_back(i); });
    return v;
  }

private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace klhc
