#pragma once

#include "buildvol/bigint.hpp"

#include <span>
#include <string>
#include <vector>

namespace buildvol {

/// Polynomial in one variable with arbitrary-precision integer coefficients.
/// Index = degree. The coefficient list is kept trimmed, so the zero
/// polynomial has no coefficients at all.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);

  static IntPolynomial constant(const BigInt& c);
  /// 1 + q + ... + q^m
  static IntPolynomial geometric(unsigned m);

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  BigInt evaluate(const BigInt& x) const;
  bool is_palindromic() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string to_string(char var = 'q') const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Power series truncated at a fixed order: coefficients of q^0 .. q^order.
/// Products keep the smaller of the two orders; nothing extends a truncation.
class IntSeries {
 public:
  explicit IntSeries(unsigned order);
  IntSeries(std::vector<BigInt> coeffs, unsigned order);

  static IntSeries one(unsigned order);
  static IntSeries from_polynomial(const IntPolynomial& p, unsigned order);

  unsigned order() const noexcept { return order_; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Multiplies in place by 1 / (1 - q^m).
  void divide_by_one_minus(unsigned m);

  friend IntSeries operator*(const IntSeries& a, const IntSeries& b);
  friend bool operator==(const IntSeries&, const IntSeries&) = default;

 private:
  std::vector<BigInt> coeffs_;
  unsigned order_;
};

IntSeries series_mul(const IntSeries& a, const IntSeries& b);

/// Truncated expansion of prod_i 1/(1 - q^{m_i}). Coefficient l counts the
/// multisets drawn from `powers` that sum to l.
IntSeries series_inverse_one_minus(std::span<const unsigned> powers, unsigned order);

}  // namespace buildvol
