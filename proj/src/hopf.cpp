#include "grpvol/hopf.hpp"

#include <mpfr.h>

#include <cmath>

#include "grpvol/errors.hpp"

namespace grpvol {

namespace {

constexpr mpfr_prec_t kPrecision = 128;

class Real {
 public:
  Real() { mpfr_init2(x_, kPrecision); }
  ~Real() { mpfr_clear(x_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return x_; }
  mpfr_srcptr get() const { return x_; }

 private:
  mpfr_t x_;
};

Rational exact_value(const Real& r) {
  Integer m;
  const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), r.get());
  Rational out;
  if (e >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    out = Rational(m);
  } else {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    out = Rational(m, den);
    out.canonicalize();
  }
  return out;
}

Rational pi_bound(mpfr_rnd_t rnd) {
  Real p;
  mpfr_const_pi(p.get(), rnd);
  return exact_value(p);
}

Rational bound_value(long a, long n, long c3, const SupNorm& s, mpfr_rnd_t rnd) {
  if (!s.is_pi && s.value == 0) return 0;
  Real acc;
  Real t;
  mpfr_sqrt_ui(acc.get(), static_cast<unsigned long>(a), rnd);
  mpfr_pow_ui(acc.get(), acc.get(), static_cast<unsigned long>(n), rnd);
  mpfr_mul_ui(acc.get(), acc.get(), static_cast<unsigned long>(n), rnd);
  mpfr_mul_ui(acc.get(), acc.get(), static_cast<unsigned long>(c3), rnd);
  if (s.is_pi) {
    mpfr_const_pi(t.get(), rnd);
  } else {
    mpfr_set_q(t.get(), s.value.get_mpq_t(), rnd);
  }
  mpfr_sqr(t.get(), t.get(), rnd);
  mpfr_mul(acc.get(), acc.get(), t.get(), rnd);
  return exact_value(acc);
}

bool within(const Rational& x, const SupNorm& s) {
  return s.is_pi ? x <= pi_bound(MPFR_RNDD) : x <= s.value;
}

}  // namespace

std::string to_string(Gauge g) { return g == Gauge::harmonic ? "harmonic" : "any"; }

Gauge parse_gauge(std::string_view text) {
  if (text == "harmonic") return Gauge::harmonic;
  if (text == "any") return Gauge::any;
  throw InvalidInput("unknown gauge '" + std::string(text) + "' (expected harmonic or any)");
}

PairingEngine::PairingEngine(Triangulation t) : t_(std::move(t)) { t_.orientation(); }

bool PairingEngine::is_qhs() const {
  if (!qhs_) qhs_ = qhs_check(t_);
  return *qhs_;
}

const DPlusDelta& PairingEngine::dplusdelta() const {
  if (!dplusdelta_) {
    if (!is_qhs()) throw PreconditionError("precondition violated: not a rational homology sphere");
    DPlusDelta d;
    d.matrix = dplusdelta_matrix(t_);
    auto lu = std::make_unique<RationalElimination>(d.matrix);
    if (lu->rank() != d.matrix.rows()) throw PreconditionError("d+delta degenerate: matrix is singular");
    d.abs_determinant = abs(lu->determinant()).get_num();
    harmonic_ = std::move(lu);
    dplusdelta_ = std::move(d);
  }
  return *dplusdelta_;
}

void PairingEngine::check_cocycle(const Cochain& gamma) const {
  if (gamma.degree != 2) throw InvalidInput("gamma must be a 2-cochain");
  const Cochain dg = coboundary(t_, gamma);
  if (!dg.is_zero()) {
    const int w = dg.values.begin()->first;
    const auto& s = t_.tetrahedra()[static_cast<std::size_t>(w)];
    throw PreconditionError("gamma is not a cocycle: d(gamma) = " + to_string(dg.values.begin()->second) +
                            " on tetrahedron " + std::to_string(w) + " (" + std::to_string(s[0]) + "," +
                            std::to_string(s[1]) + "," + std::to_string(s[2]) + "," + std::to_string(s[3]) +
                            ")");
  }
}

Cochain PairingEngine::solve_potential(const Cochain& gamma, Gauge gauge) const {
  check_cocycle(gamma);
  const std::vector<Rational> g = to_dense(t_, gamma);
  Cochain alpha;
  if (gauge == Gauge::harmonic) {
    dplusdelta();
    const int c0 = t_.count(0);
    std::vector<Rational> rhs(static_cast<std::size_t>(c0 - 1));
    rhs.insert(rhs.end(), g.begin(), g.end());
    auto x = harmonic_->solve(rhs);
    if (!x) throw PreconditionError("d+delta degenerate: system inconsistent");
    x->resize(static_cast<std::size_t>(t_.count(1)));
    alpha = from_dense(1, *x);
  } else {
    if (!any_) any_ = std::make_unique<RationalElimination>(coboundary_matrix(t_, 1));
    auto x = any_->solve(g);
    if (!x) throw PreconditionError("gamma is not exact over Q");
    alpha = from_dense(1, *x);
  }
  if (coboundary(t_, alpha) != gamma) throw Error("internal error: d(alpha) != gamma after solve");
  return alpha;
}

PairingResult PairingEngine::pairing(const Cochain& gamma, Gauge gauge) const {
  PairingResult r;
  r.gauge = gauge;
  r.potential_used = solve_potential(gamma, gauge);
  r.value = cup_pair(t_, r.potential_used, gamma);
  return r;
}

Cochain solve_potential(const Triangulation& t, const Cochain& gamma, Gauge gauge) {
  PairingEngine engine(t);
  if (!engine.is_qhs()) throw PreconditionError("precondition violated: not a rational homology sphere");
  return engine.solve_potential(gamma, gauge);
}

Rational cup_pair(const Triangulation& t, const Cochain& alpha, const Cochain& gamma) {
  if (alpha.degree != 1 || gamma.degree != 2) throw InvalidInput("cup_pair expects a 1-cochain and a 2-cochain");
  validate_cochain(t, alpha);
  validate_cochain(t, gamma);
  const auto& eps = t.orientation();
  Rational total = 0;
  for (std::size_t i = 0; i < t.tetrahedra().size(); ++i) {
    const auto& s = t.tetrahedra()[i];
    auto a = alpha.values.find(*t.edge_index(s[0], s[1]));
    if (a == alpha.values.end()) continue;
    auto g = gamma.values.find(*t.triangle_index(s[1], s[2], s[3]));
    if (g == gamma.values.end()) continue;
    total += eps[i] * a->second * g->second;
  }
  return total;
}

PairingResult hopf_pairing(const Triangulation& t, const Cochain& gamma, Gauge gauge) {
  PairingEngine engine(t);
  if (!engine.is_qhs()) throw PreconditionError("precondition violated: not a rational homology sphere");
  return engine.pairing(gamma, gauge);
}

SupNorm SupNorm::rational(const Rational& r) {
  if (r < 0) throw InvalidInput("sup norm must be nonnegative");
  return {false, r};
}

std::string SupNorm::str() const { return is_pi ? "pi" : to_string(value); }

SupNorm parse_sup_norm(std::string_view text) {
  if (text == "pi") return SupNorm::pi();
  return SupNorm::rational(parse_rational(text));
}

std::string render_decimal(const Rational& x, bool round_up, int digits) {
  const mpfr_rnd_t rnd = round_up ? MPFR_RNDU : MPFR_RNDD;
  Real r;
  mpfr_set_q(r.get(), x.get_mpq_t(), rnd);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*e", digits, rnd, r.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string ComplexityBound::upper_str() const { return render_decimal(upper, true); }
std::string ComplexityBound::lower_str() const { return render_decimal(lower, false); }

ComplexityBound hadamard_bound(long a, long n, long c3, const SupNorm& s) {
  if (a < 0 || n < 0 || c3 < 0) throw InvalidInput("bound parameters must be nonnegative");
  ComplexityBound b;
  b.a = static_cast<int>(a);
  b.n = n;
  b.c3 = c3;
  b.sup_norm = s;
  b.lower = bound_value(a, n, c3, s, MPFR_RNDD);
  b.upper = bound_value(a, n, c3, s, MPFR_RNDU);
  return b;
}

ComplexityBound hadamard_bound(const Triangulation& t, const SupNorm& s) {
  t.orientation();
  return hadamard_bound(adjacency_statistic(t), t.count(1) + t.count(3) - 1, t.count(3), s);
}

BoundCheck check_bound(const PairingResult& p, const ComplexityBound& b, const Rational& scale) {
  BoundCheck c;
  c.pairing = p;
  c.bound = b;
  const Rational x = scale * abs(p.value);
  c.holds = x <= b.lower;
  c.margin = b.lower - x;
  if (x > b.upper) {
    c.findings.push_back("bound violated: |pairing| = " + render_decimal(x, false) + " exceeds " + b.upper_str());
  } else if (!c.holds) {
    c.findings.push_back("bound comparison indeterminate at 128-bit precision");
  }
  return c;
}

BoundCheck verify_pairing_bound(const PairingEngine& engine, const Cochain& gamma, const SupNorm& s, Gauge gauge) {
  if (!within(sup_norm(gamma), s)) {
    throw PreconditionError("sup norm of gamma (" + to_string(sup_norm(gamma)) + ") exceeds " + s.str());
  }
  const PairingResult p = engine.pairing(gamma, gauge);
  return check_bound(p, hadamard_bound(engine.triangulation(), s));
}

BoundCheck verify_pairing_bound(const Triangulation& t, const Cochain& gamma, const SupNorm& s) {
  PairingEngine engine(t);
  return verify_pairing_bound(engine, gamma, s);
}

CoverCheck::CoverCheck(const Triangulation& base, const CoverSpec& spec)
    : base_(base), cover_(cyclic_cover(base, spec)) {
  if (cover_.connected) cover_engine_ = std::make_unique<PairingEngine>(cover_.cover);
}

MultiplicativityReport CoverCheck::run(const Cochain& gamma, std::optional<SupNorm> s) const {
  base_.check_cocycle(gamma);
  MultiplicativityReport r;
  r.sheets = cover_.sheets;
  if (!cover_.connected) {
    r.skipped = "cover disconnected";
    return r;
  }
  const PairingResult base = base_.pairing(gamma, Gauge::harmonic);
  r.base_pairing = base.value;
  r.cover_qhs = cover_engine_->is_qhs();
  r.cover_gauge = r.cover_qhs ? Gauge::harmonic : Gauge::any;
  if (!r.cover_qhs) r.findings.push_back("cover is not a rational homology sphere");
  const Cochain lifted = pullback_cochain(cover_, gamma);
  try {
    r.cover_pairing = cover_engine_->pairing(lifted, r.cover_gauge).value;
  } catch (const PreconditionError& e) {
    r.skipped = std::string("potential solve failed on cover: ") + e.what();
    return r;
  }
  r.exact = r.cover_pairing == r.sheets * r.base_pairing;
  if (!r.exact) {
    r.findings.push_back("multiplicativity failed: cover pairing " + to_string(r.cover_pairing) + " != " +
                         std::to_string(r.sheets) + " * " + to_string(r.base_pairing));
  }
  const SupNorm norm = s ? *s : SupNorm::rational(sup_norm(gamma));
  r.cover_bound = check_bound(base, hadamard_bound(cover_.cover, norm), r.sheets);
  for (const auto& f : r.cover_bound->findings) r.findings.push_back(f);
  return r;
}

MultiplicativityReport cover_multiplicativity(const Triangulation& t, const CoverSpec& spec, const Cochain& gamma) {
  return CoverCheck(t, spec).run(gamma);
}

double invert_growth(double rhs) {
  if (!(rhs > 0)) return 1.0;
  auto f = [](double x) { return 1.5 * x * std::log(x); };
  double lo = 1.0;
  double hi = 2.0;
  while (f(hi) < rhs) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= rhs) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

GrowthReport growth_report(const Triangulation& t, const std::vector<CoverSpec>& family, const Cochain& gamma) {
  const PairingEngine base(t);
  if (!base.is_qhs()) throw PreconditionError("precondition violated: not a rational homology sphere");
  // pi as in the hyperbolic setting; larger cochains use their own sup norm
  const SupNorm pi = within(sup_norm(gamma), SupNorm::pi()) ? SupNorm::pi() : SupNorm::rational(sup_norm(gamma));
  const PairingResult p = base.pairing(gamma);
  GrowthReport report;
  report.applicable = p.value != 0;
  if (report.applicable) {
    Real x;
    const Rational mag = abs(p.value);
    mpfr_set_q(x.get(), mag.get_mpq_t(), MPFR_RNDN);
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    report.const_m = mpfr_get_d(x.get(), MPFR_RNDN) - 2.0 * std::log(M_PI);
  } else {
    report.reason = "inapplicable: base pairing is zero, so no growth bound follows";
  }
  for (const auto& spec : family) {
    GrowthRow row;
    row.d = spec.modulus;
    if (spec.modulus < 1) throw InvalidInput("cover degree must be positive");
    if (spec.modulus == 1) {
      row.c3 = t.count(3);
      row.pairing = p.value;
      row.bound = hadamard_bound(t, pi);
      row.bound_holds = check_bound(p, row.bound).holds;
    } else {
      const CoverCheck check(t, spec);
      if (!check.cover().connected) {
        throw PreconditionError("cover of degree " + std::to_string(spec.modulus) + " is disconnected");
      }
      const MultiplicativityReport m = check.run(gamma, pi);
      if (m.skipped) throw PreconditionError("degree " + std::to_string(spec.modulus) + ": " + *m.skipped);
      row.c3 = check.cover().cover.count(3);
      row.pairing = m.cover_pairing;
      row.bound = m.cover_bound->bound;
      row.bound_holds = m.cover_bound->holds;
    }
    row.a = row.bound.a;
    row.n = row.bound.n;
    if (report.const_m) row.implied_c3_lower = invert_growth(std::log(static_cast<double>(row.d)) + *report.const_m);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace grpvol
