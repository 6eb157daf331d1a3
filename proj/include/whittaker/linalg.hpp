#ifndef WHITTAKER_LINALG_HPP
#define WHITTAKER_LINALG_HPP

#include <span>
#include <utility>
#include <vector>

#include "whittaker/rational.hpp"

namespace whittaker::linalg {

/// Sparse row: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

struct Kernel {
  int rank = 0;
  /// Pivot column of each row of the reduced echelon form, ascending.
  std::vector<int> pivots;
  /// One vector per free column j (ascending): x_j = 1, other free
  /// coordinates 0, pivot coordinates from the reduced echelon form.
  std::vector<std::vector<Rational>> basis;
};

/// Kernel of the matrix with the given rows over ncols columns.
///
/// Fraction-free Gaussian elimination: rows are scaled to primitive integer
/// vectors, eliminated against existing pivots by cross-multiplication and
/// content removal, with the leftmost nonzero column of each row as its
/// pivot. Rows are processed in the given order, so the output is a
/// deterministic function of the input; the returned basis is the canonical
/// reduced-echelon kernel basis and does not depend on row order.
Kernel nullspace(std::span<const SparseRow> rows, int ncols);

/// Primitive integer multiple of v with positive leading entry.
std::vector<Rational> primitive(std::vector<Rational> v);

/// Dense convenience: kernel of an m x n matrix.
Kernel nullspace_dense(const std::vector<std::vector<Rational>>& rows, int ncols);

}  // namespace whittaker::linalg

#endif  // WHITTAKER_LINALG_HPP
