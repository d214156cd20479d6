#include "buildvol/polynomial.hpp"

#include "buildvol/errors.hpp"

#include <algorithm>
#include <sstream>

namespace buildvol {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::geometric(unsigned m) {
  return IntPolynomial(std::vector<BigInt>(m + 1, BigInt(1)));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool IntPolynomial::is_palindromic() const {
  return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(i) + b.coeff(i);
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

IntSeries::IntSeries(unsigned order) : coeffs_(order + 1, BigInt(0)), order_(order) {}

IntSeries::IntSeries(std::vector<BigInt> coeffs, unsigned order) : coeffs_(std::move(coeffs)), order_(order) {
  coeffs_.resize(order + 1, BigInt(0));
}

IntSeries IntSeries::one(unsigned order) {
  IntSeries s(order);
  s.coeffs_[0] = 1;
  return s;
}

IntSeries IntSeries::from_polynomial(const IntPolynomial& p, unsigned order) {
  std::vector<BigInt> c(order + 1, BigInt(0));
  for (std::size_t i = 0; i <= order && i < p.coeffs().size(); ++i) c[i] = p.coeffs()[i];
  return IntSeries(std::move(c), order);
}

void IntSeries::divide_by_one_minus(unsigned m) {
  if (m == 0) throw Error(ErrorKind::DomainError, "1/(1 - q^0) has no power series");
  // b_l = a_l + b_{l-m}
  for (std::size_t l = m; l <= order_; ++l) coeffs_[l] += coeffs_[l - m];
}

IntSeries operator*(const IntSeries& a, const IntSeries& b) {
  const unsigned order = std::min(a.order_, b.order_);
  IntSeries out(order);
  for (std::size_t i = 0; i <= order; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

IntSeries series_mul(const IntSeries& a, const IntSeries& b) { return a * b; }

IntSeries series_inverse_one_minus(std::span<const unsigned> powers, unsigned order) {
  IntSeries s = IntSeries::one(order);
  for (unsigned m : powers) s.divide_by_one_minus(m);
  return s;
}

}  // namespace buildvol
