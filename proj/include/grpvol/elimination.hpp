#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "grpvol/integer_matrix.hpp"
#include "grpvol/numeric.hpp"

namespace grpvol {

/// Exact sparse Gaussian elimination over Q with Markowitz pivoting
/// (ties: unit pivots, then lowest row, then lowest column). The
/// factorization is computed once; solve() replays the recorded row
/// operations on each right-hand side. Fully deterministic.
class RationalElimination {
 public:
  explicit RationalElimination(const IntegerMatrix& a);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int rank() const noexcept { return static_cast<int>(pivots_.size()); }

  /// det(A) for square A (0 when singular).
  Rational determinant() const;

  /// Some x with A x = rhs (free variables set to 0), or nullopt if the
  /// system is inconsistent.
  std::optional<std::vector<Rational>> solve(std::span<const Rational> rhs) const;

 private:
  using Row = std::vector<std::pair<int, Rational>>;
  struct Op {
    int target;
    int source;
    Rational factor;
  };
  struct Pivot {
    int row;
    int col;
  };

  int rows_;
  int cols_;
  std::vector<Row> u_;  // pivot rows as they stood when chosen
  std::vector<Op> ops_;
  std::vector<Pivot> pivots_;
  std::vector<char> is_pivot_row_;
};

}  // namespace grpvol
