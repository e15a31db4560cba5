#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace klhc {

// Univariate polynomial in q with exact int64 coefficients. All arithmetic is
// overflow-checked and throws std::overflow_error rather than wrapping.
// Representation is canonical: no trailing zero coefficients, zero is the
// empty vector.
class IntPolynomial {
public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<int64_t> cs) : c_(cs) { trim(); }
  explicit IntPolynomial(std::vector<int64_t> cs) : c_(std::move(cs)) { trim(); }

  static IntPolynomial constant(int64_t c) { return IntPolynomial({c}); }
  // q^k
  static IntPolynomial monomial(int k, int64_t c = 1);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return int(c_.size()) - 1; }
  int64_t coeff(int k) const {
    return (k >= 0 && k < int(c_.size())) ? c_[size_t(k)] : 0;
  }
  const std::vector<int64_t>& coeffs() const { return c_; }

  bool nonneg_coeffs() const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) {
    return a += b;
  }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) {
    return a -= b;
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

  IntPolynomial scaled(int64_t k) const;
  // p * q^k
  IntPolynomial shifted(int k) const;
  // Drops all terms of degree > d.
  IntPolynomial truncated(int d) const;

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  // "1 + 2*q + q^2"; zero prints as "0".
  std::string str() const;
  // "[1,2,1]"; zero prints as "[]".
  std::string coeff_list_str() const;

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<int64_t> c_;
};

// Accepts either the term syntax ("1 + 2*q - q^3", "q", "-3*q^2") or a
// bracketed coefficient list ("[1,2,1]").
IntPolynomial parse_polynomial(const std::string& text);

// q^N * p(1/q), requiring deg(p) <= N.
IntPolynomial reverse_twist(const IntPolynomial& p, int N);

// (p - q^N p(1/q)) / (1 - q). Requires 2*deg(p) <= N-1 for nonzero p, which
// is what makes the division exact; a nonzero remainder is rejected.
IntPolynomial partial_transform(const IntPolynomial& p, int N);

// Inverse of partial_transform on its image: truncate((1-q)*d, (N-1)/2),
// verified by transforming back. Throws if d is not a valid image.
IntPolynomial recover_from_partial(const IntPolynomial& d, int N);

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

}  // namespace klhc
