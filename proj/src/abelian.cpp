#include "grpvol/abelian.hpp"

#include "grpvol/tietze.hpp"

namespace grpvol {

IntegerMatrix relation_matrix(const Presentation& p) {
  IntegerMatrix m(p.generator_count(), p.relator_count());
  for (int j = 0; j < p.relator_count(); ++j) {
    const auto sums = exponent_sums(p.relators()[static_cast<std::size_t>(j)], p.generator_count());
    for (int i = 0; i < p.generator_count(); ++i) m.add(i, j, sums[static_cast<std::size_t>(i)]);
  }
  return m;
}

AbelianInvariants abelianization(const Presentation& p) {
  const auto factors = smith_invariants(relation_matrix(p));
  AbelianInvariants out;
  out.free_rank = p.generator_count() - static_cast<int>(factors.size());
  for (const auto& f : factors) {
    if (f != 1) out.torsion.push_back(f);
  }
  return out;
}

int mod_p_first_cohomology(const Presentation& p, std::int64_t prime) {
  return p.generator_count() - rank_mod_p(relation_matrix(p), prime);
}

Interval rank_bounds(const Presentation& p, int simplify_budget) {
  const int lo = abelianization(p).minimal_generator_count();
  const int hi = tietze_simplify(p, simplify_budget).generator_count();
  return {lo, hi};
}

Interval deficiency_bounds(const Presentation& p, int simplify_budget) {
  const TietzeResult t = tietze_trace(p, simplify_budget);
  return {t.best_deficiency, t.presentation.generator_count()};
}

}  // namespace grpvol
