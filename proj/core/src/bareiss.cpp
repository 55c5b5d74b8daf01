#include "bareiss.hpp"

#include <utility>

#include "usflab/errors.hpp"

namespace usflab::detail {

namespace {

// Forward pass shared by determinant and solve.  Eliminates below the
// diagonal across all `cols` columns (cols may exceed the row count for an
// augmented system).  Returns the permutation sign, or 0 for a singular
// leading block.
int eliminate(IntMatrix& a, std::size_t rows, std::size_t cols) {
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < rows; ++k) {
    if (a[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < rows && a[pivot][k] == 0) ++pivot;
      if (pivot == rows) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign;
}

}  // namespace

BigInt determinant(IntMatrix a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = eliminate(a, n, n);
  if (sign == 0 || a[n - 1][n - 1] == 0) return 0;
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

std::vector<Rational> solve(IntMatrix a, std::vector<BigInt> rhs) {
  std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(std::move(rhs[i]));

  if (eliminate(a, n, n + 1) == 0 || (n > 0 && a[n - 1][n - 1] == 0)) {
    raise(Errc::bad_params, "singular linear system");
  }

  std::vector<Rational> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational acc(a[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) acc -= Rational(a[ii][j]) * x[j];
    x[ii] = acc / Rational(a[ii][ii]);
  }
  return x;
}

}  // namespace usflab::detail
