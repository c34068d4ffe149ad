#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "grpvol/integer_matrix.hpp"
#include "grpvol/presentation.hpp"

namespace grpvol {

/// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2.
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<Integer> torsion;

  int minimal_generator_count() const { return free_rank + static_cast<int>(torsion.size()); }
  bool operator==(const AbelianInvariants&) const = default;
};

/// Closed integer interval; `hi == std::nullopt` stands for +infinity.
struct Interval {
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;

  bool tight() const { return hi && *hi == lo; }
  bool operator==(const Interval&) const = default;
};

/// g x r matrix of exponent sums (column j belongs to relator j).
IntegerMatrix relation_matrix(const Presentation& p);

AbelianInvariants abelianization(const Presentation& p);

/// dim_{F_p} H^1(G; F_p) = g - rank_p(relation matrix).
int mod_p_first_cohomology(const Presentation& p, std::int64_t prime);

inline constexpr int kDefaultSimplifyBudget = 1000;

/// [abelianization generator count, #gens after tietze_simplify].
Interval rank_bounds(const Presentation& p, int simplify_budget = kDefaultSimplifyBudget);

/// [best (g - r) seen along the Tietze trace, rank_bounds(p).hi].
Interval deficiency_bounds(const Presentation& p, int simplify_budget = kDefaultSimplifyBudget);

}  // namespace grpvol
