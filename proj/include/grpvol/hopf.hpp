#pragma once

// Combinatorial Hopf pairing of an exact 2-cochain on an oriented rational
// homology 3-sphere, the Hadamard-type complexity bound, and cover checks.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpvol/cochain.hpp"
#include "grpvol/elimination.hpp"
#include "grpvol/triangulation.hpp"

namespace grpvol {

enum class Gauge { harmonic, any };

std::string to_string(Gauge g);
Gauge parse_gauge(std::string_view text);

struct PairingResult {
  Rational value;
  Cochain potential_used;
  Gauge gauge = Gauge::harmonic;
};

/// Caches homology and both factorizations for repeated solves on one
/// triangulation. Holds its own copy of the triangulation.
class PairingEngine {
 public:
  explicit PairingEngine(Triangulation t);

  const Triangulation& triangulation() const noexcept { return t_; }
  bool is_qhs() const;
  /// Throws PreconditionError when not a QHS.
  const DPlusDelta& dplusdelta() const;

  /// Throws PreconditionError naming a tetrahedron when d gamma != 0.
  void check_cocycle(const Cochain& gamma) const;

  /// d alpha = gamma exactly. harmonic: the unique solution of the d+delta
  /// system (needs a QHS). any: elimination on d alone; without a QHS this
  /// still succeeds whenever gamma is exact.
  Cochain solve_potential(const Cochain& gamma, Gauge gauge) const;

  PairingResult pairing(const Cochain& gamma, Gauge gauge = Gauge::harmonic) const;

 private:
  Triangulation t_;
  mutable std::optional<bool> qhs_;
  mutable std::optional<DPlusDelta> dplusdelta_;
  mutable std::unique_ptr<RationalElimination> harmonic_;
  mutable std::unique_ptr<RationalElimination> any_;
};

/// Requires a QHS (PreconditionError otherwise).
Cochain solve_potential(const Triangulation& t, const Cochain& gamma, Gauge gauge);

/// sum over tetrahedra v0<v1<v2<v3 of eps * alpha(v0 v1) * gamma(v1 v2 v3).
Rational cup_pair(const Triangulation& t, const Cochain& alpha, const Cochain& gamma);

PairingResult hopf_pairing(const Triangulation& t, const Cochain& gamma, Gauge gauge = Gauge::harmonic);

/// Either an exact nonnegative rational or pi.
struct SupNorm {
  bool is_pi = false;
  Rational value;

  static SupNorm pi() { return {true, 0}; }
  static SupNorm rational(const Rational& r);
  std::string str() const;
};

SupNorm parse_sup_norm(std::string_view text);

/// (sqrt a)^n * n * s^2 * c3 enclosed between two dyadic rationals computed
/// with 128-bit directed rounding: lower <= true value <= upper.
struct ComplexityBound {
  int a = 0;
  long n = 0;
  long c3 = 0;
  SupNorm sup_norm;
  Rational lower;
  Rational upper;

  /// Scientific notation, rounded up (resp. down).
  std::string upper_str() const;
  std::string lower_str() const;
};

ComplexityBound hadamard_bound(long a, long n, long c3, const SupNorm& s);
ComplexityBound hadamard_bound(const Triangulation& t, const SupNorm& s);

/// Scientific rendering of an exact rational rounded up or down.
std::string render_decimal(const Rational& x, bool round_up, int digits = 20);

struct BoundCheck {
  PairingResult pairing;
  ComplexityBound bound;
  bool holds = false;      // certified: |pairing| <= lower
  Rational margin;         // lower - |pairing|
  std::vector<std::string> findings;
};

/// |pairing| against the bound; `scale` multiplies |pairing| first (the
/// cover inequality uses the number of sheets).
BoundCheck check_bound(const PairingResult& p, const ComplexityBound& b, const Rational& scale = 1);

/// Requires sup_norm(gamma) <= s (PreconditionError otherwise).
BoundCheck verify_pairing_bound(const PairingEngine& engine, const Cochain& gamma, const SupNorm& s,
                                Gauge gauge = Gauge::harmonic);
BoundCheck verify_pairing_bound(const Triangulation& t, const Cochain& gamma, const SupNorm& s);

struct MultiplicativityReport {
  int sheets = 0;
  std::optional<std::string> skipped;
  bool cover_qhs = false;
  Rational base_pairing;
  Rational cover_pairing;
  bool exact = false;  // cover_pairing == sheets * base_pairing
  Gauge cover_gauge = Gauge::harmonic;
  std::optional<BoundCheck> cover_bound;  // sheets * |base| vs bound(cover)
  std::vector<std::string> findings;
};

/// Builds the cover once and reuses both engines across cocycles.
class CoverCheck {
 public:
  CoverCheck(const Triangulation& base, const CoverSpec& spec);

  const CoverResult& cover() const noexcept { return cover_; }
  const PairingEngine& base_engine() const noexcept { return base_; }
  const PairingEngine& cover_engine() const noexcept { return *cover_engine_; }

  MultiplicativityReport run(const Cochain& gamma, std::optional<SupNorm> s = std::nullopt) const;

 private:
  PairingEngine base_;
  CoverResult cover_;
  std::unique_ptr<PairingEngine> cover_engine_;
};

MultiplicativityReport cover_multiplicativity(const Triangulation& t, const CoverSpec& spec, const Cochain& gamma);

struct GrowthRow {
  int d = 1;
  long c3 = 0;
  int a = 0;
  long n = 0;
  Rational pairing;
  ComplexityBound bound;
  bool bound_holds = false;
  std::optional<double> implied_c3_lower;  // only when applicable
};

struct GrowthReport {
  bool applicable = false;
  std::optional<std::string> reason;
  std::optional<double> const_m;  // log|base pairing| - log(pi^2)
  std::vector<GrowthRow> rows;
};

/// Smallest x >= 1 with (3/2) x log x >= rhs (1 when rhs <= 0).
double invert_growth(double rhs);

/// d = 1 entries produce the base row. Bounds use sup norm pi, or the sup
/// norm of gamma when that exceeds pi.
GrowthReport growth_report(const Triangulation& t, const std::vector<CoverSpec>& family, const Cochain& gamma);

}  // namespace grpvol
