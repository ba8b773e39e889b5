#pragma once

// Gauss-Jordan elimination over the Scalar ring. Pivots must be units
// (single-term scalars); that covers every system the engine builds.

#include <string>
#include <vector>

#include "qgrass/errors.hpp"
#include "qgrass/scalar.hpp"

namespace qgrass {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Solves A x = b for the unique x. Throws SingularSystem when the system is
/// inconsistent, rank deficient, or would need a non-unit pivot.
inline std::vector<Scalar> solve_linear(ScalarMatrix a, std::vector<Scalar> b) {
  const std::size_t rows = a.size();
  if (rows != b.size()) throw DomainError("row count mismatch in linear system");
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  const int level = b.empty() ? 2 : b[0].level();

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t piv = rows;
    bool any_nonzero = false;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r][col].is_zero()) continue;
      any_nonzero = true;
      if (a[r][col].is_unit()) {
        piv = r;
        break;
      }
    }
    if (piv == rows) {
      if (any_nonzero) throw SingularSystem("column " + std::to_string(col) + " has no unit pivot");
      throw SingularSystem("solution is not unique: unknown " + std::to_string(col) + " is free");
    }
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    const Scalar inv = a[rank][col].inverse();
    for (auto& x : a[rank]) x = x * inv;
    b[rank] = b[rank] * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      const Scalar f = a[r][col];
      for (std::size_t k = col; k < cols; ++k) a[r][k] -= f * a[rank][k];
      b[r] -= f * b[rank];
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) throw SingularSystem("inconsistent system: equation " + std::to_string(r));

  std::vector<Scalar> x(cols, Scalar::zero(level));
  for (std::size_t r = 0; r < rank; ++r) x[r] = b[r];
  return x;
}

}  // namespace qgrass
