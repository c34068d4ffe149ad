#include "doctest.h"

#include <cmath>
#include <numbers>

#include "grpvol/cochain.hpp"
#include "grpvol/errors.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/hopf.hpp"
#include "grpvol/triangulation.hpp"

using namespace grpvol;

namespace {

// The opposite cup order: sum of eps * gamma(v0 v1 v2) * alpha(v2 v3).
// Integrates to the same value on a closed oriented manifold.
Rational reverse_cup(const Triangulation& t, const Cochain& alpha, const Cochain& gamma) {
  Rational acc = 0;
  const auto& eps = t.orientation();
  for (std::size_t i = 0; i < t.tetrahedra().size(); ++i) {
    const auto& s = t.tetrahedra()[i];
    const Rational g = gamma.at(*t.triangle_index(s[0], s[1], s[2]));
    const Rational a = alpha.at(*t.edge_index(s[2], s[3]));
    acc += eps[i] * g * a;
  }
  return acc;
}

// Direct per-tetrahedron definition, looked up by vertices.
Rational front_back_cup(const Triangulation& t, const Cochain& alpha, const Cochain& gamma) {
  Rational acc = 0;
  const auto& eps = t.orientation();
  for (std::size_t i = 0; i < t.tetrahedra().size(); ++i) {
    const auto& s = t.tetrahedra()[i];
    acc += eps[i] * alpha.at(*t.edge_index(s[0], s[1])) * gamma.at(*t.triangle_index(s[1], s[2], s[3]));
  }
  return acc;
}

double as_double(const Rational& r) { return r.get_d(); }

}  // namespace

TEST_CASE("solve_potential basics") {
  const Triangulation t = boundary_4simplex().load();
  const PairingEngine engine(t);
  CHECK(engine.is_qhs());
  const Cochain zero{2, {}};
  CHECK(engine.solve_potential(zero, Gauge::harmonic).is_zero());
  CHECK(engine.pairing(zero).value == 0);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Cochain alpha0 = random_cochain(t, 1, rng);
    const Cochain gamma = coboundary(t, alpha0);
    for (Gauge g : {Gauge::harmonic, Gauge::any}) {
      const Cochain alpha = engine.solve_potential(gamma, g);
      CHECK(coboundary(t, alpha).values == gamma.values);
    }
  }
}

TEST_CASE("non-cocycle is rejected with a witness") {
  const Triangulation t = boundary_4simplex().load();
  const Cochain bad{2, {{0, 1}}};
  CHECK_THROWS_WITH_AS(hopf_pairing(t, bad), doctest::Contains("tetrahedron"), PreconditionError);
  CHECK_THROWS_AS(hopf_pairing(t, Cochain{1, {}}), InvalidInput);
  CHECK_THROWS_AS(hopf_pairing(three_torus().load(), Cochain{2, {}}), PreconditionError);
}

TEST_CASE("cup_pair matches the direct and reversed formulas") {
  for (const auto& t : {boundary_4simplex().load(), lens_space(2, 1).data.load()}) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      const Cochain gamma = random_exact_cocycle(t, rng);
      const Cochain alpha = solve_potential(t, gamma, Gauge::harmonic);
      const Rational v = cup_pair(t, alpha, gamma);
      CHECK(v == front_back_cup(t, alpha, gamma));
      CHECK(v == reverse_cup(t, alpha, gamma));
      CHECK(v == hopf_pairing(t, gamma).value);
    }
  }
}

TEST_CASE("pairing: bilinear form, gauge invariance, scaling") {
  const Triangulation t = lens_space(3, 1).data.load();
  const PairingEngine engine(t);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const Cochain g1 = random_exact_cocycle(t, rng);
    const Cochain g2 = random_exact_cocycle(t, rng);
    const Rational p1 = engine.pairing(g1).value;
    const Rational p2 = engine.pairing(g2).value;
    const Rational p12 = engine.pairing(sum(g1, g2)).value;
    const Cochain a1 = engine.solve_potential(g1, Gauge::harmonic);
    const Cochain a2 = engine.solve_potential(g2, Gauge::harmonic);
    // the cochain-level cross terms are not symmetric, but integrating by
    // parts moves the coboundary across the cup
    CHECK(cup_pair(t, a1, g2) == reverse_cup(t, a2, g1));
    CHECK(p12 == p1 + p2 + cup_pair(t, a1, g2) + cup_pair(t, a2, g1));

    const Rational c = random_rational(rng);
    CHECK(engine.pairing(scaled(g1, c)).value == c * c * p1);

    const Cochain phi = random_cochain(t, 0, rng);
    const Cochain shifted = sum(a1, coboundary(t, phi));
    CHECK(cup_pair(t, shifted, g1) == p1);
    CHECK(engine.pairing(g1, Gauge::any).value == p1);
  }
}

TEST_CASE("hadamard bound values") {
  const Triangulation t = boundary_4simplex().load();
  const ComplexityBound b = hadamard_bound(t, SupNorm::pi());
  CHECK(b.a == 4);
  CHECK(b.n == 14);
  CHECK(b.c3 == 5);
  const double expected = 16384.0 * 14 * std::numbers::pi * std::numbers::pi * 5;
  CHECK(as_double(b.lower) <= as_double(b.upper));
  CHECK(as_double(b.lower) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(b.lower < b.upper);
  CHECK((b.upper - b.lower) / b.lower < Rational(1, 1000000000));
  CHECK(b.upper_str().rfind("1.1319", 0) == 0);

  const ComplexityBound zero = hadamard_bound(4, 14, 5, SupNorm::rational(0));
  CHECK(zero.lower == 0);
  CHECK(zero.upper == 0);
  const ComplexityBound one = hadamard_bound(4, 14, 5, SupNorm::rational(1));
  CHECK(one.lower == one.upper);
  CHECK(one.lower == Rational(16384 * 14 * 5));
  const ComplexityBound two = hadamard_bound(4, 14, 5, SupNorm::rational(2));
  CHECK(two.lower == 4 * one.lower);
  CHECK(hadamard_bound(3, 5, 2, SupNorm::rational(1)).lower_str().rfind("1.5588", 0) == 0);  // 3^2.5*10

  // monotone in every argument
  const ComplexityBound base = hadamard_bound(3, 10, 7, SupNorm::pi());
  CHECK(hadamard_bound(4, 10, 7, SupNorm::pi()).lower > base.upper);
  CHECK(hadamard_bound(3, 11, 7, SupNorm::pi()).lower > base.upper);
  CHECK(hadamard_bound(3, 10, 8, SupNorm::pi()).lower > base.upper);
  CHECK(hadamard_bound(3, 10, 7, SupNorm::rational(4)).lower > base.upper);

  CHECK_THROWS_AS(hadamard_bound(-1, 3, 3, SupNorm::pi()), InvalidInput);
}

TEST_CASE("sup norm parsing and decimal rendering") {
  CHECK(parse_sup_norm("pi").is_pi);
  CHECK(parse_sup_norm("3/2").value == Rational(3, 2));
  CHECK_THROWS_AS(parse_sup_norm("-1"), InvalidInput);
  CHECK_THROWS_AS(parse_sup_norm("x"), ParseError);
  CHECK(render_decimal(Rational(1, 3), true, 3).rfind("3.334e-01", 0) == 0);
  CHECK(render_decimal(Rational(1, 3), false, 3).rfind("3.333e-01", 0) == 0);
  CHECK(parse_gauge("any") == Gauge::any);
  CHECK_THROWS_AS(parse_gauge("coulomb"), InvalidInput);
}

TEST_CASE("verify_pairing_bound") {
  const Triangulation t = boundary_4simplex().load();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Cochain g = random_unit_cocycle(t, rng);
    const BoundCheck chk = verify_pairing_bound(t, g, SupNorm::rational(1));
    CHECK(chk.holds);
    CHECK(chk.findings.empty());
    CHECK(chk.margin == chk.bound.lower - abs(chk.pairing.value));
  }
  const Cochain big = scaled(random_unit_cocycle(t, rng), 5);
  CHECK_THROWS_AS(verify_pairing_bound(t, big, SupNorm::rational(1)), PreconditionError);
  CHECK_THROWS_AS(verify_pairing_bound(t, big, SupNorm::pi()), PreconditionError);  // 5 > pi
  CHECK(verify_pairing_bound(t, big, SupNorm::rational(5)).holds);
}

TEST_CASE("check_bound findings") {
  PairingResult p{Rational(100), Cochain{1, {}}, Gauge::harmonic};
  const ComplexityBound small = hadamard_bound(1, 1, 1, SupNorm::rational(1));  // exactly 1
  const BoundCheck bad = check_bound(p, small);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.findings.size() == 1);
  CHECK(bad.findings[0].find("bound violated") != std::string::npos);
  CHECK(check_bound(PairingResult{Rational(1), Cochain{1, {}}, Gauge::harmonic}, small).holds);
  CHECK_FALSE(check_bound(PairingResult{Rational(1), Cochain{1, {}}, Gauge::harmonic}, small, 2).holds);
}

TEST_CASE("multiplicativity under covers") {
  const Triangulation s3 = boundary_4simplex().load();
  std::mt19937_64 rng(31);
  const Cochain g = random_exact_cocycle(s3, rng);
  const MultiplicativityReport trivial = cover_multiplicativity(s3, CoverSpec{2, {}}, g);
  REQUIRE(trivial.skipped.has_value());
  CHECK(trivial.skipped->find("cover disconnected") != std::string::npos);

  const auto l4 = lens_space(4, 1);
  const Triangulation base = l4.data.load();
  const CoverCheck check(base, reduced_spec(l4.generator, 2));
  CHECK(check.cover().connected);
  for (int trial = 0; trial < 2; ++trial) {
    const Cochain gamma = random_unit_cocycle(base, rng);
    const MultiplicativityReport r = check.run(gamma, SupNorm::rational(1));
    CHECK_FALSE(r.skipped.has_value());
    CHECK(r.cover_qhs);
    CHECK(r.exact);
    CHECK(r.cover_pairing == 2 * r.base_pairing);
    REQUIRE(r.cover_bound.has_value());
    CHECK(r.cover_bound->holds);
  }
}

TEST_CASE("the any gauge works off a rational homology sphere") {
  const Triangulation t = s2_times_s1().load();
  const PairingEngine engine(t);
  CHECK_FALSE(engine.is_qhs());
  std::mt19937_64 rng(4);
  const Cochain gamma = random_exact_cocycle(t, rng);
  CHECK_THROWS_AS(engine.pairing(gamma, Gauge::harmonic), PreconditionError);
  const PairingResult p = engine.pairing(gamma, Gauge::any);
  CHECK(coboundary(t, p.potential_used).values == gamma.values);
  CHECK(p.value == front_back_cup(t, p.potential_used, gamma));
  const auto l2 = lens_space(2, 1);
  const MultiplicativityReport r = cover_multiplicativity(l2.data.load(), l2.generator,
                                                          random_exact_cocycle(l2.data.load(), rng));
  CHECK(r.cover_qhs);
  CHECK(r.exact);
}

TEST_CASE("growth") {
  CHECK(invert_growth(-1) == 1.0);
  const double x = invert_growth(100);
  CHECK(1.5 * x * std::log(x) >= 100 - 1e-9);
  CHECK(1.5 * (x - 1e-6) * std::log(x - 1e-6) < 100);

  const auto l2 = lens_space(2, 1);
  const Triangulation base = l2.data.load();
  std::mt19937_64 rng(9);
  Cochain gamma = random_unit_cocycle(base, rng);
  while (hopf_pairing(base, gamma).value == 0) gamma = random_unit_cocycle(base, rng);

  const GrowthReport r = growth_report(base, {CoverSpec{1, {}}, l2.generator}, gamma);
  CHECK(r.applicable);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].d == 1);
  CHECK(r.rows[1].d == 2);
  CHECK(r.rows[1].pairing == 2 * r.rows[0].pairing);
  CHECK(r.rows[1].c3 == 2 * r.rows[0].c3);
  REQUIRE(r.const_m.has_value());
  CHECK(*r.const_m == doctest::Approx(std::log(std::abs(as_double(r.rows[0].pairing))) -
                                      std::log(std::numbers::pi * std::numbers::pi)));
  for (const auto& row : r.rows) CHECK(row.bound_holds);
  REQUIRE(r.rows[0].implied_c3_lower.has_value());
  REQUIRE(r.rows[1].implied_c3_lower.has_value());
  CHECK(*r.rows[1].implied_c3_lower >= *r.rows[0].implied_c3_lower);

  const GrowthReport zero = growth_report(base, {CoverSpec{1, {}}}, Cochain{2, {}});
  CHECK_FALSE(zero.applicable);
  CHECK(zero.reason.has_value());
}
