#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace buildvol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_decimal(const BigInt& value);

// Natural logarithm of a positive integer of any size. Values past the double
// range are shifted down first so the result stays finite.
double log_big(const BigInt& value);

BigInt ipow(const BigInt& base, unsigned exponent);

// Rounds to 15 significant digits, the precision used for every real in
// emitted reports.
double round_sig15(double value);

}  // namespace buildvol
