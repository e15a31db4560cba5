#include "klhc/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace klhc {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in polynomial arithmetic");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in polynomial arithmetic");
  return r;
}

IntPolynomial IntPolynomial::monomial(int k, int64_t c) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  std::vector<int64_t> v(size_t(k) + 1, 0);
  v.back() = c;
  return IntPolynomial(std::move(v));
}

bool IntPolynomial::nonneg_coeffs() const {
  for (int64_t c : c_)
    if (c < 0) return false;
  return true;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_add(c_[i], -o.c_[i]);
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<int64_t> r(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      r[i + j] = checked_add(r[i + j], checked_mul(a.c_[i], b.c_[j]));
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::scaled(int64_t k) const {
  std::vector<int64_t> r(c_);
  for (auto& c : r) c = checked_mul(c, k);
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::shifted(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  if (is_zero()) return {};
  std::vector<int64_t> r(c_.size() + size_t(k), 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i + size_t(k)] = c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::truncated(int d) const {
  if (d < 0) return {};
  std::vector<int64_t> r(c_.begin(),
                         c_.begin() + std::min(c_.size(), size_t(d) + 1));
  return IntPolynomial(std::move(r));
}

std::string IntPolynomial::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = 0; k <= degree(); ++k) {
    int64_t c = c_[size_t(k)];
    if (c == 0) continue;
    const bool first = s.empty();
    if (!first) s += (c > 0) ? " + " : " - ";
    else if (c < 0) s += "-";
    uint64_t a = (c < 0) ? uint64_t(-(c + 1)) + 1 : uint64_t(c);
    if (k == 0) {
      s += std::to_string(a);
    } else {
      if (a != 1) s += std::to_string(a) + "*";
      s += (k == 1) ? "q" : "q^" + std::to_string(k);
    }
  }
  return s;
}

std::string IntPolynomial::coeff_list_str() const {
  std::string s = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c_[i]);
  }
  return s + "]";
}

namespace {

[[noreturn]] void bad_poly(const std::string& text) {
  throw std::invalid_argument("bad polynomial: '" + text + "'");
}

IntPolynomial parse_coeff_list(const std::string& text) {
  std::vector<int64_t> cs;
  size_t i = 1;  // past '['
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(uint8_t(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    for (;;) {
      skip_ws();
      size_t used = 0;
      int64_t v;
      try {
        v = std::stoll(text.substr(i), &used);
      } catch (const std::exception&) {
        bad_poly(text);
      }
      i += used;
      cs.push_back(v);
      skip_ws();
      if (i >= text.size()) bad_poly(text);
      if (text[i] == ']') {
        ++i;
        break;
      }
      if (text[i] != ',') bad_poly(text);
      ++i;
    }
  }
  while (i < text.size() && std::isspace(uint8_t(text[i]))) ++i;
  if (i != text.size()) bad_poly(text);
  return IntPolynomial(std::move(cs));
}

}  // namespace

IntPolynomial parse_polynomial(const std::string& text) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(uint8_t(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '[') return parse_coeff_list(text.substr(i));

  // Term syntax: sign? term (sign term)*, term = INT | INT '*'? q ('^' INT)?
  std::vector<int64_t> cs;
  bool any_term = false;
  int sign = 1;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    sign = (text[i] == '-') ? -1 : 1;
    ++i;
  }
  for (;;) {
    skip_ws();
    if (i >= text.size()) break;
    int64_t coeff = 1;
    bool saw_num = false;
    if (std::isdigit(uint8_t(text[i]))) {
      size_t used = 0;
      try {
        coeff = std::stoll(text.substr(i), &used);
      } catch (const std::exception&) {
        bad_poly(text);
      }
      i += used;
      saw_num = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    int exp = 0;
    if (i < text.size() && text[i] == 'q') {
      ++i;
      exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || !std::isdigit(uint8_t(text[i]))) bad_poly(text);
        size_t used = 0;
        exp = std::stoi(text.substr(i), &used);
        i += used;
      }
    } else if (!saw_num) {
      bad_poly(text);
    }
    if (size_t(exp) >= cs.size()) cs.resize(size_t(exp) + 1, 0);
    cs[size_t(exp)] = checked_add(cs[size_t(exp)], sign * coeff);
    any_term = true;
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] == '+') sign = 1;
    else if (text[i] == '-') sign = -1;
    else bad_poly(text);
    ++i;
  }
  if (!any_term) bad_poly(text);
  return IntPolynomial(std::move(cs));
}

IntPolynomial reverse_twist(const IntPolynomial& p, int N) {
  if (N < 0) throw std::invalid_argument("negative twist exponent");
  if (p.degree() > N)
    throw std::invalid_argument("degree exceeds twist exponent");
  std::vector<int64_t> r(size_t(N) + 1, 0);
  for (int k = 0; k <= p.degree(); ++k) r[size_t(N - k)] = p.coeff(k);
  return IntPolynomial(std::move(r));
}

IntPolynomial partial_transform(const IntPolynomial& p, int N) {
  if (N < 0) throw std::invalid_argument("negative length gap");
  if (p.is_zero()) return {};
  if (2 * p.degree() > N - 1)
    throw std::invalid_argument("degree exceeds (N-1)/2 bound");
  const IntPolynomial num = p - reverse_twist(p, N);
  // Divide by (1 - q): quotient coefficients are the prefix sums, and the
  // total sum (the remainder) must vanish.
  std::vector<int64_t> d;
  d.reserve(size_t(num.degree()) + 1);
  int64_t acc = 0;
  for (int k = 0; k <= num.degree(); ++k) {
    acc = checked_add(acc, num.coeff(k));
    d.push_back(acc);
  }
  if (acc != 0)
    throw std::invalid_argument("transform input not divisible by 1 - q");
  if (!d.empty()) d.pop_back();  // trailing entry equals the remainder, 0
  return IntPolynomial(std::move(d));
}

IntPolynomial recover_from_partial(const IntPolynomial& d, int N) {
  if (N < 1)
    throw std::invalid_argument("recovery needs a positive length gap");
  const IntPolynomial one_minus_q({1, -1});
  const IntPolynomial p = (one_minus_q * d).truncated((N - 1) / 2);
  if (partial_transform(p, N) != d)
    throw std::invalid_argument("not in the image of the partial transform");
  return p;
}

}  // namespace klhc
