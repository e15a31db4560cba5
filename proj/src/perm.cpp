#include "klhc/perm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace klhc {

Permutation::Permutation(const std::vector<int>& images) {
  if (images.empty() || images.size() > kMaxWindow)
    throw std::invalid_argument("permutation window must be between 1 and 16");
  window_ = int(images.size());
  img_.fill(0);
  unsigned seen = 0;
  for (int i = 0; i < window_; ++i) {
    int v = images[i];
    if (v < 0 || v >= window_ || (seen >> v) & 1)
      throw std::invalid_argument("images are not a permutation of {0,...,n}");
    seen |= 1u << v;
    img_[i] = uint8_t(v);
  }
}

Permutation Permutation::identity(int window) {
  std::vector<int> v(window);
  for (int i = 0; i < window; ++i) v[i] = i;
  return Permutation(v);
}

Permutation Permutation::transposition(int window, int i, int j) {
  if (i < 0 || j < 0 || i >= window || j >= window || i == j)
    throw std::invalid_argument("bad transposition");
  Permutation t = identity(window);
  std::swap(t.img_[i], t.img_[j]);
  return t;
}

Permutation Permutation::from_packed(uint64_t key, int window) {
  std::vector<int> v(static_cast<size_t>(window));
  for (int i = 0; i < window; ++i) v[size_t(i)] = int((key >> (4 * i)) & 0xf);
  return Permutation(v);
}

Permutation Permutation::longest(int window) {
  std::vector<int> v(window);
  for (int i = 0; i < window; ++i) v[i] = window - 1 - i;
  return Permutation(v);
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.window_ = window_;
  r.img_.fill(0);
  for (int i = 0; i < window_; ++i) r.img_[img_[i]] = uint8_t(i);
  return r;
}

int Permutation::length() const {
  int inv = 0;
  for (int i = 0; i < window_; ++i)
    for (int j = i + 1; j < window_; ++j)
      if (img_[i] > img_[j]) ++inv;
  return inv;
}

bool Permutation::operator<(const Permutation& o) const {
  if (window_ != o.window_) return window_ < o.window_;
  for (int i = 0; i < window_; ++i)
    if (img_[i] != o.img_[i]) return img_[i] < o.img_[i];
  return false;
}

std::string Permutation::str() const {
  std::string s;
  for (int i = 0; i < window_; ++i) {
    if (window_ <= 10) {
      s.push_back(char('0' + img_[i]));
    } else {
      if (i) s.push_back(',');
      s += std::to_string(int(img_[i]));
    }
  }
  return s;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.window_ != b.window_)
    throw std::invalid_argument("window mismatch in composition");
  Permutation r;
  r.window_ = a.window_;
  r.img_.fill(0);
  for (int i = 0; i < a.window_; ++i) r.img_[i] = a.img_[b.img_[i]];
  return r;
}

Permutation parse_permutation(const std::string& text) {
  std::vector<int> v;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      size_t pos = 0;
      int val;
      try {
        val = std::stoi(tok, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad permutation entry: '" + tok + "'");
      }
      while (pos < tok.size() && std::isspace(uint8_t(tok[pos]))) ++pos;
      if (pos != tok.size())
        throw std::invalid_argument("bad permutation entry: '" + tok + "'");
      v.push_back(val);
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("bad permutation string: '" + text + "'");
      v.push_back(c - '0');
    }
  }
  return Permutation(v);
}

CornerRankMatrix::CornerRankMatrix(const Permutation& x) {
  window_ = x.window();
  e_.fill(0);
  // entry(p, q) = entry(p, q-1) + [x(q) >= p]
  for (int p = 0; p < window_; ++p) {
    int run = 0;
    for (int q = 0; q < window_; ++q) {
      if (x(q) >= p) ++run;
      e_[p * window_ + q] = uint8_t(run);
    }
  }
}

bool CornerRankMatrix::dominated_by(const CornerRankMatrix& o) const {
  if (window_ != o.window_) return false;
  // Row 0 and the last column are window-independent constants; skipping them
  // is not worth the branches.
  for (int i = 0; i < window_ * window_; ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

CornerRankMatrix corner_rank_matrix(const Permutation& x) {
  return CornerRankMatrix(x);
}

bool bruhat_leq(const Permutation& u, const Permutation& v) {
  if (u.window() != v.window())
    throw std::invalid_argument("window mismatch in Bruhat comparison");
  if (u == v) return true;
  if (u.length() >= v.length()) return false;
  return CornerRankMatrix(u).dominated_by(CornerRankMatrix(v));
}

Permutation pattern_restriction(const Permutation& u,
                                const std::vector<int>& positions) {
  const int k = int(positions.size());
  if (k == 0) throw std::invalid_argument("empty position set");
  std::vector<int> vals(k);
  for (int i = 0; i < k; ++i) {
    if (i > 0 && positions[i] <= positions[i - 1])
      throw std::invalid_argument("positions must be strictly increasing");
    if (positions[i] < 0 || positions[i] >= u.window())
      throw std::invalid_argument("position out of range");
    vals[i] = u(positions[i]);
  }
  // Flatten: replace each value by its rank among the selected values.
  std::vector<int> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> flat(k);
  for (int i = 0; i < k; ++i)
    flat[i] = int(std::lower_bound(sorted.begin(), sorted.end(), vals[i]) -
                  sorted.begin());
  return Permutation(flat);
}

std::vector<std::pair<int, int>> upper_transpositions(const Permutation& v) {
  std::vector<std::pair<int, int>> out;
  const Permutation inv = v.inverse();
  for (int i = 0; i < v.window(); ++i)
    for (int j = i + 1; j < v.window(); ++j)
      if (inv(i) < inv(j)) out.emplace_back(i, j);
  return out;
}

}  // namespace klhc
