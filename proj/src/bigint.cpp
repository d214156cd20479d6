#include "buildvol/bigint.hpp"

#include "buildvol/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace buildvol {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::UnknownNormalization: return "UnknownNormalization";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NonpositiveVolume: return "NonpositiveVolume";
  }
  return "Unknown";
}

std::string to_decimal(const BigInt& value) { return value.str(); }

double log_big(const BigInt& value) {
  if (value <= 0) {
    throw Error(ErrorKind::NonpositiveVolume, "logarithm of " + value.str());
  }
  const unsigned bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 900) {
    return std::log(value.convert_to<double>());
  }
  const unsigned shift = bits - 64;
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wstringop-overflow"
#pragma GCC diagnostic ignored "-Wstringop-overread"
  const BigInt top = value >> shift;
#pragma GCC diagnostic pop
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

double round_sig15(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::strtod(buf, nullptr);
}

}  // namespace buildvol
