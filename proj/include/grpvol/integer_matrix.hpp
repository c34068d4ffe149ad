#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "grpvol/numeric.hpp"

namespace grpvol {

/// Sparse integer matrix, row-major, entries kept sorted by column.
class IntegerMatrix {
 public:
  using Entry = std::pair<int, std::int64_t>;

  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  /// Adds `value` to entry (r, c); zero results are removed.
  void add(int r, int c, std::int64_t value);
  std::int64_t at(int r, int c) const;
  std::span<const Entry> row(int r) const { return data_[static_cast<std::size_t>(r)]; }
  std::size_t nonzeros() const;
  std::int64_t max_abs_entry() const;

  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& other) const;
  bool is_zero() const { return nonzeros() == 0; }

  /// Dense column-major columns; convenient for tests and small systems.
  static IntegerMatrix from_columns(int rows, const std::vector<std::vector<std::int64_t>>& columns);

  bool operator==(const IntegerMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Nonzero invariant factors d1 | d2 | ... | dk (all positive, ones
/// included). k is the rank of the matrix over Q.
std::vector<Integer> smith_invariants(const IntegerMatrix& m);

/// Rank over F_p.
int rank_mod_p(const IntegerMatrix& m, std::int64_t p);

bool is_prime(std::int64_t n);

}  // namespace grpvol
