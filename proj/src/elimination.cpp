#include "grpvol/elimination.hpp"

#include <algorithm>
#include <limits>

namespace grpvol {

namespace {

using Row = std::vector<std::pair<int, Rational>>;

const Rational* find(const Row& row, int c) {
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? &it->second : nullptr;
}

void axpy(Row& a, const Rational& factor, const Row& b, int skip_col) {
  Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      if (b[j].first != skip_col) out.push_back({b[j].first, -factor * b[j].second});
      ++j;
    } else {
      if (a[i].first != skip_col) {
        Rational v = a[i].second - factor * b[j].second;
        if (v != 0) out.push_back({a[i].first, std::move(v)});
      }
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

bool is_unit(const Rational& v) { return v == 1 || v == -1; }

int permutation_parity(std::vector<int> perm) {
  int parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    while (perm[i] != static_cast<int>(i)) {
      std::swap(perm[i], perm[static_cast<std::size_t>(perm[i])]);
      parity ^= 1;
    }
  }
  return parity;
}

}  // namespace

RationalElimination::RationalElimination(const IntegerMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), u_(static_cast<std::size_t>(a.rows())),
      is_pivot_row_(static_cast<std::size_t>(a.rows()), 0) {
  std::vector<Row> work(static_cast<std::size_t>(rows_));
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(cols_));
  std::vector<long> col_count(static_cast<std::size_t>(cols_), 0);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : a.row(r)) {
      work[static_cast<std::size_t>(r)].push_back({c, Rational(static_cast<long>(v))});
      col_rows[static_cast<std::size_t>(c)].push_back(r);
      ++col_count[static_cast<std::size_t>(c)];
    }
  }
  std::vector<char> active(static_cast<std::size_t>(rows_), 1);

  for (;;) {
    long best = std::numeric_limits<long>::max();
    bool best_unit = false;
    int pr = -1;
    int pc = -1;
    for (int r = 0; r < rows_ && !(best == 0 && best_unit); ++r) {
      if (!active[static_cast<std::size_t>(r)]) continue;
      const Row& row = work[static_cast<std::size_t>(r)];
      const long rl = static_cast<long>(row.size()) - 1;
      if (rl < 0) continue;
      for (const auto& [c, v] : row) {
        const long cost = rl * (col_count[static_cast<std::size_t>(c)] - 1);
        if (cost > best || (cost == best && best_unit)) continue;
        const bool unit = is_unit(v);
        if (cost < best || (unit && !best_unit)) {
          best = cost;
          best_unit = unit;
          pr = r;
          pc = c;
        }
      }
    }
    if (pr < 0) break;

    const Row pivot_row = work[static_cast<std::size_t>(pr)];
    const Rational pivot = *find(pivot_row, pc);
    auto targets = std::move(col_rows[static_cast<std::size_t>(pc)]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int r : targets) {
      if (r == pr || !active[static_cast<std::size_t>(r)]) continue;
      Row& row = work[static_cast<std::size_t>(r)];
      const Rational* v = find(row, pc);
      if (!v) continue;
      Rational factor = *v / pivot;
      for (const auto& e : row) --col_count[static_cast<std::size_t>(e.first)];
      axpy(row, factor, pivot_row, pc);
      for (const auto& e : row) {
        ++col_count[static_cast<std::size_t>(e.first)];
        col_rows[static_cast<std::size_t>(e.first)].push_back(r);
      }
      ops_.push_back({r, pr, std::move(factor)});
    }
    for (const auto& e : pivot_row) --col_count[static_cast<std::size_t>(e.first)];
    active[static_cast<std::size_t>(pr)] = 0;
    is_pivot_row_[static_cast<std::size_t>(pr)] = 1;
    u_[static_cast<std::size_t>(pr)] = pivot_row;
    work[static_cast<std::size_t>(pr)].clear();
    pivots_.push_back({pr, pc});
  }
}

Rational RationalElimination::determinant() const {
  if (rows_ != cols_ || rank() != rows_) return Rational(0);
  Rational det = 1;
  std::vector<int> row_perm;
  std::vector<int> col_perm;
  for (const auto& p : pivots_) {
    det *= *find(u_[static_cast<std::size_t>(p.row)], p.col);
    row_perm.push_back(p.row);
    col_perm.push_back(p.col);
  }
  if (permutation_parity(row_perm) ^ permutation_parity(col_perm)) det = -det;
  det.canonicalize();
  return det;
}

std::optional<std::vector<Rational>> RationalElimination::solve(std::span<const Rational> rhs) const {
  std::vector<Rational> b(rhs.begin(), rhs.end());
  for (const Op& op : ops_) {
    const Rational& s = b[static_cast<std::size_t>(op.source)];
    if (s != 0) b[static_cast<std::size_t>(op.target)] -= op.factor * s;
  }
  for (int r = 0; r < rows_; ++r) {
    if (!is_pivot_row_[static_cast<std::size_t>(r)] && b[static_cast<std::size_t>(r)] != 0) return std::nullopt;
  }
  std::vector<Rational> x(static_cast<std::size_t>(cols_), 0);
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    Rational acc = b[static_cast<std::size_t>(it->row)];
    const Rational* pivot = nullptr;
    for (const auto& [c, v] : u_[static_cast<std::size_t>(it->row)]) {
      if (c == it->col) {
        pivot = &v;
      } else if (x[static_cast<std::size_t>(c)] != 0) {
        acc -= v * x[static_cast<std::size_t>(c)];
      }
    }
    x[static_cast<std::size_t>(it->col)] = acc / *pivot;
  }
  for (auto& v : x) v.canonicalize();
  return x;
}

}  // namespace grpvol
