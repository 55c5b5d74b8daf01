#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace usflab {

// All conductances and oracle probabilities are exact rationals.  Floating
// point enters only in descriptive statistics and the one numeric solver.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical text form "num/den": lowest terms, den >= 1, always with the
// denominator so files round-trip byte for byte.
std::string format_rational(const Rational& value);

// Accepts "num/den" or a bare integer.  Throws Errc::parse_error on anything
// else, including den == 0.
Rational parse_rational(std::string_view text);

}  // namespace usflab
