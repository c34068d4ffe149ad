#include "grpvol/integer_matrix.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace grpvol {

IntegerMatrix::IntegerMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

void IntegerMatrix::add(int r, int c, std::int64_t value) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("IntegerMatrix::add");
  if (value == 0) return;
  auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, int col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    it->second += value;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {c, value});
  }
}

std::int64_t IntegerMatrix::at(int r, int c) const {
  const auto& row = data_[static_cast<std::size_t>(r)];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, int col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? it->second : 0;
}

std::size_t IntegerMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

std::int64_t IntegerMatrix::max_abs_entry() const {
  std::int64_t m = 0;
  for (const auto& row : data_) {
    for (const auto& [c, v] : row) m = std::max(m, v < 0 ? -v : v);
  }
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[static_cast<std::size_t>(r)]) {
      t.data_[static_cast<std::size_t>(c)].push_back({r, v});
    }
  }
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("IntegerMatrix: shape mismatch");
  IntegerMatrix out(rows_, other.cols_);
  std::vector<std::int64_t> acc(static_cast<std::size_t>(other.cols_), 0);
  std::vector<int> touched;
  for (int r = 0; r < rows_; ++r) {
    touched.clear();
    for (const auto& [k, v] : data_[static_cast<std::size_t>(r)]) {
      for (const auto& [c, w] : other.data_[static_cast<std::size_t>(k)]) {
        if (acc[static_cast<std::size_t>(c)] == 0) touched.push_back(c);
        acc[static_cast<std::size_t>(c)] += v * w;
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int c : touched) {
      auto& a = acc[static_cast<std::size_t>(c)];
      if (a != 0) out.data_[static_cast<std::size_t>(r)].push_back({c, a});
      a = 0;
    }
  }
  return out;
}

IntegerMatrix IntegerMatrix::from_columns(int rows,
                                          const std::vector<std::vector<std::int64_t>>& columns) {
  IntegerMatrix m(rows, static_cast<int>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (int r = 0; r < rows; ++r) m.add(r, static_cast<int>(c), columns[c][static_cast<std::size_t>(r)]);
  }
  return m;
}

namespace {

using BigRow = std::vector<std::pair<int, Integer>>;

// row_a -= factor * row_b, both sorted by column.
void axpy(BigRow& a, const Integer& factor, const BigRow& b) {
  BigRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, -factor * b[j].second});
      ++j;
    } else {
      Integer v = a[i].second - factor * b[j].second;
      if (v != 0) out.push_back({a[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

// Classic dense Smith form on the residual block, invariant factors only.
std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero |entry| in the trailing block
    std::size_t pr = rows;
    std::size_t pc = cols;
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (auto& row : a) std::swap(row[t], row[c]);
          clean = false;
        }
      }
      if (clean) {
        // divisibility: fold a non-multiple back into the pivot row
        for (std::size_t r = t + 1; r < rows && clean; ++r) {
          for (std::size_t c = t + 1; c < cols; ++c) {
            if (a[r][c] % a[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) a[t][k] += a[r][k];
              clean = false;
              break;
            }
          }
        }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

std::vector<Integer> smith_invariants(const IntegerMatrix& m) {
  const int nrows = m.rows();
  const int ncols = m.cols();
  std::vector<BigRow> rows(static_cast<std::size_t>(nrows));
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(ncols));
  std::vector<int> col_count(static_cast<std::size_t>(ncols), 0);
  for (int r = 0; r < nrows; ++r) {
    for (const auto& [c, v] : m.row(r)) {
      rows[static_cast<std::size_t>(r)].push_back({c, Integer(static_cast<long>(v))});
      col_rows[static_cast<std::size_t>(c)].push_back(r);
      ++col_count[static_cast<std::size_t>(c)];
    }
  }
  std::vector<char> row_alive(static_cast<std::size_t>(nrows), 1);
  std::vector<Integer> invariants;

  auto contains = [&](int r, int c) -> const Integer* {
    const auto& row = rows[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  };

  // Phase 1: eliminate unit pivots with Markowitz-style selection.
  for (;;) {
    long best_cost = std::numeric_limits<long>::max();
    int pr = -1;
    int pc = -1;
    for (int r = 0; r < nrows; ++r) {
      if (!row_alive[static_cast<std::size_t>(r)]) continue;
      const auto& row = rows[static_cast<std::size_t>(r)];
      for (const auto& [c, v] : row) {
        if (v != 1 && v != -1) continue;
        long cost = static_cast<long>(row.size() - 1) * (col_count[static_cast<std::size_t>(c)] - 1);
        if (cost < best_cost) {
          best_cost = cost;
          pr = r;
          pc = c;
        }
      }
      if (best_cost == 0) break;
    }
    if (pr < 0) break;
    const BigRow pivot_row = rows[static_cast<std::size_t>(pr)];
    const Integer pivot = *contains(pr, pc);
    auto targets = col_rows[static_cast<std::size_t>(pc)];
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int r : targets) {
      if (r == pr || !row_alive[static_cast<std::size_t>(r)]) continue;
      const Integer* v = contains(r, pc);
      if (!v) continue;
      Integer factor = *v * pivot;  // pivot is ±1 so pivot^-1 == pivot
      auto& row = rows[static_cast<std::size_t>(r)];
      for (const auto& e : row) --col_count[static_cast<std::size_t>(e.first)];
      axpy(row, factor, pivot_row);
      for (const auto& e : row) {
        ++col_count[static_cast<std::size_t>(e.first)];
        col_rows[static_cast<std::size_t>(e.first)].push_back(r);
      }
    }
    for (const auto& e : pivot_row) --col_count[static_cast<std::size_t>(e.first)];
    row_alive[static_cast<std::size_t>(pr)] = 0;
    rows[static_cast<std::size_t>(pr)].clear();
    invariants.push_back(1);
    // Column pc is now zero outside the pivot row; the remaining entries of
    // the pivot row are cleared by column operations touching no other row.
  }

  // Phase 2: dense Smith form on what is left.
  std::vector<int> live_cols;
  for (int c = 0; c < ncols; ++c) {
    if (col_count[static_cast<std::size_t>(c)] > 0) live_cols.push_back(c);
  }
  std::vector<std::vector<Integer>> dense;
  for (int r = 0; r < nrows; ++r) {
    if (!row_alive[static_cast<std::size_t>(r)] || rows[static_cast<std::size_t>(r)].empty()) continue;
    std::vector<Integer> d(live_cols.size(), 0);
    for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) {
      auto it = std::lower_bound(live_cols.begin(), live_cols.end(), c);
      d[static_cast<std::size_t>(it - live_cols.begin())] = v;
    }
    dense.push_back(std::move(d));
  }
  std::vector<Integer> rest = dense_smith(std::move(dense));

  // Normalize the diagonal into a divisibility chain.
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      Integer g = gcd(rest[i], rest[j]);
      Integer l = rest[i] / g * rest[j];
      rest[i] = g;
      rest[j] = l;
    }
  }
  invariants.insert(invariants.end(), rest.begin(), rest.end());
  return invariants;
}

int rank_mod_p(const IntegerMatrix& m, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(m.rows()),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(m.cols()), 0));
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = ((v % p) + p) % p;
  }
  auto inv = [p](std::int64_t x) {
    std::int64_t result = 1;
    std::int64_t e = p - 2;
    x %= p;
    while (e > 0) {
      if (e & 1) result = static_cast<std::int64_t>((__int128)result * x % p);
      x = static_cast<std::int64_t>((__int128)x * x % p);
      e >>= 1;
    }
    return result;
  };
  int rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = static_cast<std::size_t>(m.cols());
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t pr = static_cast<std::size_t>(rank);
    while (pr < rows && a[pr][c] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[static_cast<std::size_t>(rank)]);
    auto& piv = a[static_cast<std::size_t>(rank)];
    const std::int64_t s = inv(piv[c]);
    for (auto& v : piv) v = static_cast<std::int64_t>((__int128)v * s % p);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || a[r][c] == 0) continue;
      const std::int64_t f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        a[r][k] = static_cast<std::int64_t>(((a[r][k] - (__int128)f * piv[k]) % p + p) % p);
      }
    }
    ++rank;
  }
  return rank;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace grpvol
