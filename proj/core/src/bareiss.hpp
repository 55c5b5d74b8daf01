#pragma once

#include <vector>

#include "usflab/rational.hpp"

namespace usflab::detail {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Fraction-free Gaussian elimination (Bareiss).  Intermediate entries stay
// integers because every division is by the previous pivot, which divides the
// two-by-two minor exactly.

// Determinant of a square integer matrix; the empty matrix has determinant 1.
BigInt determinant(IntMatrix a);

// Exact solution of a * x = rhs for nonsingular square a.
std::vector<Rational> solve(IntMatrix a, std::vector<BigInt> rhs);

}  // namespace usflab::detail
