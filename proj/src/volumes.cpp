#include "grpvol/volumes.hpp"

#include <algorithm>
#include <set>

#include "grpvol/errors.hpp"
#include "grpvol/tietze.hpp"

namespace grpvol {

std::string to_string(VolumeKind kind) {
  switch (kind) {
    case VolumeKind::deficiency: return "deficiency";
    case VolumeKind::rank: return "rank";
    case VolumeKind::euler: return "euler";
    case VolumeKind::modp: return "modp";
  }
  return "unknown";
}

VolumeKind parse_volume_kind(const std::string& text) {
  if (text == "def" || text == "deficiency") return VolumeKind::deficiency;
  if (text == "rank") return VolumeKind::rank;
  if (text == "euler") return VolumeKind::euler;
  if (text == "modp") return VolumeKind::modp;
  throw ParseError("unknown volume kind '" + text + "'");
}

Rational lower_def_volume(const Presentation& p, int simplify_budget) {
  const auto lo = deficiency_bounds(p, simplify_budget).lo;
  return Rational(static_cast<long>(std::max<std::int64_t>(lo, 1) - 1));
}

Rational upper_rank_volume(const Presentation& p, int simplify_budget) {
  return Rational(static_cast<long>(*rank_bounds(p, simplify_budget).hi - 1));
}

std::optional<Rational> euler_volume(const Presentation& p, bool aspherical) {
  if (!aspherical) return std::nullopt;
  const long chi = 1L - p.generator_count() + p.relator_count();
  return Rational(chi < 0 ? -chi : chi);
}

namespace {

EnumerationOptions enumeration_options(const VolumeOptions& o) {
  return {o.max_index, o.node_budget, o.filter};
}

// Base functional of one (sub)group presentation.
Rational functional(VolumeKind kind, const Presentation& p, const VolumeOptions& o) {
  switch (kind) {
    case VolumeKind::deficiency: return lower_def_volume(p, o.simplify_budget);
    case VolumeKind::rank: return upper_rank_volume(p, o.simplify_budget);
    case VolumeKind::euler: return *euler_volume(p, true);
    case VolumeKind::modp: return Rational(mod_p_first_cohomology(p, o.prime));
  }
  return Rational(0);
}

std::string filter_name(SubgroupFilter f) {
  switch (f) {
    case SubgroupFilter::all: return "all subgroups";
    case SubgroupFilter::conjugacy_reps: return "conjugacy class representatives";
    case SubgroupFilter::normal: return "normal subgroups only";
  }
  return "";
}

}  // namespace

VolumeEstimate truncated_volume(const Presentation& p, VolumeKind kind, const VolumeOptions& options) {
  if (options.max_index < 1) throw PreconditionError("max_index must be at least 1");
  if (kind == VolumeKind::euler && !options.aspherical) {
    throw PreconditionError("euler volume requires an explicit asphericity assertion");
  }
  if (kind == VolumeKind::modp && !is_prime(options.prime)) {
    throw PreconditionError("modulus " + std::to_string(options.prime) + " is not prime");
  }
  VolumeEstimate est;
  est.kind = kind;
  est.prime = kind == VolumeKind::modp ? options.prime : 0;
  est.max_index = options.max_index;
  est.base_value = functional(kind, p, options);

  // Work on the simplified presentation so the Schreier counts are taken
  // relative to the presentation realizing the parent's certified bounds.
  const Presentation work = kind == VolumeKind::euler ? p : tietze_simplify(p, options.simplify_budget);
  const auto tables = enumerate_subgroups(work, enumeration_options(options));

  std::map<int, IndexStats> stats;
  bool first = true;
  for (const CosetTable& t : tables) {
    const Presentation sub = reidemeister_schreier(work, t);
    const Rational value = functional(kind, sub, options);
    Rational ratio = value / t.index;
    ratio.canonicalize();
    auto& s = stats[t.index];
    if (s.count == 0) {
      s.index = t.index;
      s.min_ratio = ratio;
      s.max_ratio = ratio;
    } else {
      s.min_ratio = std::min(s.min_ratio, ratio);
      s.max_ratio = std::max(s.max_ratio, ratio);
    }
    ++s.count;
    if (first) {
      est.truncated_liminf = ratio;
      est.truncated_limsup = ratio;
      first = false;
    } else {
      est.truncated_liminf = std::min(est.truncated_liminf, ratio);
      est.truncated_limsup = std::max(est.truncated_limsup, ratio);
    }
    if (kind == VolumeKind::modp && value > est.base_value * t.index) {
      est.findings.push_back("dim H^1(subgroup, F_" + std::to_string(options.prime) + ") = " +
                             to_string(value) + " exceeds index " + std::to_string(t.index) +
                             " times dim H^1(group) = " + to_string(est.base_value * t.index));
    }
  }
  for (auto& [d, s] : stats) est.per_index.push_back(s);
  est.truncated_value = kind == VolumeKind::deficiency ? est.truncated_liminf : est.truncated_limsup;

  est.assumptions.push_back("truncated at index " + std::to_string(options.max_index) +
                            "; this is not the lattice limit");
  est.assumptions.push_back("subgroups: " + filter_name(options.filter));
  switch (kind) {
    case VolumeKind::deficiency:
      est.assumptions.push_back("deficiency lower bounds from Tietze search; value is a certified lower bound at this truncation");
      break;
    case VolumeKind::rank:
      est.assumptions.push_back("rank upper bounds from Tietze search; value is a certified upper bound at this truncation");
      break;
    case VolumeKind::euler:
      est.assumptions.push_back("conditional on asserted asphericity of the presentation complex");
      break;
    case VolumeKind::modp:
      est.assumptions.push_back("first cohomology only, computed on the discrete group");
      break;
  }
  return est;
}

VolumeEstimate modp_mu1(const Presentation& p, std::int64_t prime, const VolumeOptions& options) {
  VolumeOptions o = options;
  o.prime = prime;
  return truncated_volume(p, VolumeKind::modp, o);
}

AxiomReport check_volume_axiom(const Presentation& p, const VolumeOptions& options) {
  if (options.max_index < 1) throw PreconditionError("max_index must be at least 1");
  const TietzeResult parent = tietze_trace(p, options.simplify_budget);
  AxiomReport report;
  report.max_index = options.max_index;
  report.rank_ub_parent = parent.presentation.generator_count();
  report.def_lb_parent = parent.best_deficiency;

  const auto tables = enumerate_subgroups(parent.presentation, enumeration_options(options));
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const CosetTable& t = tables[k];
    const Presentation sub = reidemeister_schreier(parent.presentation, t);
    const TietzeResult child = tietze_trace(sub, options.simplify_budget);
    const std::int64_t d = t.index;
    const std::int64_t rank_lhs = child.presentation.generator_count() - 1;
    const std::int64_t rank_rhs = d * (report.rank_ub_parent - 1);
    const std::int64_t def_lhs = child.best_deficiency - 1;
    const std::int64_t def_rhs = d * (report.def_lb_parent - 1);
    if (rank_lhs > rank_rhs) {
      report.violations.push_back({t.index, static_cast<int>(k), "r(D) - 1 <= d (r(G) - 1)",
                                   std::to_string(rank_lhs) + " > " + std::to_string(rank_rhs)});
    }
    if (def_lhs < def_rhs) {
      report.violations.push_back({t.index, static_cast<int>(k), "def(D) - 1 >= d (def(G) - 1)",
                                   std::to_string(def_lhs) + " < " + std::to_string(def_rhs)});
    }
    report.rank_equalities += rank_lhs == rank_rhs;
    report.deficiency_equalities += def_lhs == def_rhs;
    ++report.subgroups_checked;
  }
  return report;
}

namespace {

// v lies in the column lattice of m iff appending it changes neither the
// rank nor the product of the invariant factors.
bool in_lattice(const IntegerMatrix& m, const std::vector<std::int64_t>& v) {
  IntegerMatrix ext(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (const auto& [c, x] : m.row(r)) ext.add(r, c, x);
    ext.add(r, m.cols(), v[static_cast<std::size_t>(r)]);
  }
  const auto a = smith_invariants(m);
  const auto b = smith_invariants(ext);
  if (a.size() != b.size()) return false;
  Integer pa = 1;
  Integer pb = 1;
  for (const auto& x : a) pa *= x;
  for (const auto& x : b) pb *= x;
  return pa == pb;
}

}  // namespace

HopfianReport hopfian_harness(const Presentation& source, const Presentation& target,
                              const std::map<std::string, Word>& images, const VolumeOptions& options) {
  const int gs = source.generator_count();
  const int gt = target.generator_count();
  std::vector<std::vector<std::int64_t>> image_sums;
  for (const auto& name : source.generators()) {
    auto it = images.find(name);
    if (it == images.end()) throw PreconditionError("no image given for generator '" + name + "'");
    for (const Letter& l : it->second) {
      if (l.gen < 0 || l.gen >= gt) throw PreconditionError("image of '" + name + "' is not a word in the target");
    }
    image_sums.push_back(exponent_sums(it->second, gt));
  }
  for (const auto& [name, w] : images) {
    if (!source.find_generator(name)) throw PreconditionError("image given for unknown generator '" + name + "'");
  }

  const IntegerMatrix target_rel = relation_matrix(target);
  for (const Word& r : source.relators()) {
    const auto src_sums = exponent_sums(r, gs);
    std::vector<std::int64_t> v(static_cast<std::size_t>(gt), 0);
    for (int g = 0; g < gs; ++g) {
      for (int k = 0; k < gt; ++k) {
        v[static_cast<std::size_t>(k)] += src_sums[static_cast<std::size_t>(g)] *
                                          image_sums[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)];
      }
    }
    if (!in_lattice(target_rel, v)) {
      throw PreconditionError("abelianized map is not a homomorphism: image of relator " +
                              format_word(r, source.generators()) + " is nonzero in the target abelianization");
    }
  }

  IntegerMatrix span(gt, gs + target_rel.cols());
  for (int g = 0; g < gs; ++g) {
    for (int k = 0; k < gt; ++k) span.add(k, g, image_sums[static_cast<std::size_t>(g)][static_cast<std::size_t>(k)]);
  }
  for (int r = 0; r < gt; ++r) {
    for (const auto& [c, x] : target_rel.row(r)) span.add(r, gs + c, x);
  }
  const auto inv = smith_invariants(span);
  const bool onto = static_cast<int>(inv.size()) == gt &&
                    std::all_of(inv.begin(), inv.end(), [](const Integer& x) { return x == 1; });
  if (!onto) throw PreconditionError("abelianized map is not surjective");

  HopfianReport report;
  report.homomorphism_on_abelianization = true;
  report.surjective_on_abelianization = true;
  report.max_index = options.max_index;
  report.source_volume = truncated_volume(source, VolumeKind::rank, options).truncated_value;
  report.target_volume = truncated_volume(target, VolumeKind::rank, options).truncated_value;
  report.inequality_holds = report.source_volume >= report.target_volume;
  report.assumptions = {
      "homomorphism property verified on the abelianization only",
      "surjectivity verified on the abelianization only",
      "rank volumes truncated at index " + std::to_string(options.max_index) +
          "; a consistency check of the epimorphism inequality, not a proof",
  };
  return report;
}

DistinctabilityReport distinctability_report(const Presentation& p, int simplify_budget) {
  DistinctabilityReport r;
  const Interval def = deficiency_bounds(p, simplify_budget);
  r.lower_def_volume = Rational(static_cast<long>(std::max<std::int64_t>(def.lo, 1) - 1));
  r.distinctable = r.lower_def_volume > 0;
  if (r.distinctable) {
    r.certificate = "deficiency lower bound " + std::to_string(def.lo) +
                    " gives lower deficiency volume >= " + to_string(r.lower_def_volume) +
                    " > 0; isomorphic finite-index subgroups have equal index";
  }
  return r;
}

IndexRigidityReport index_rigidity_harness(const Presentation& p, const VolumeOptions& options) {
  IndexRigidityReport report;
  report.certificate_fires = distinctability_report(p, options.simplify_budget).distinctable;
  const Presentation work = tietze_simplify(p, options.simplify_budget);
  const auto tables = enumerate_subgroups(work, enumeration_options(options));
  std::map<SubgroupSignature, std::set<int>> seen;
  for (const CosetTable& t : tables) {
    const Presentation sub = tietze_simplify(reidemeister_schreier(work, t), options.simplify_budget);
    SubgroupSignature sig{sub.generator_count(), sub.relator_count(), abelianization(sub)};
    seen[sig].insert(t.index);
    ++report.subgroups;
  }
  for (const auto& [sig, indices] : seen) {
    if (indices.size() < 2) continue;
    report.collisions.push_back({sig, *indices.begin(), *std::next(indices.begin())});
  }
  report.consistent = !(report.certificate_fires && !report.collisions.empty());
  return report;
}

}  // namespace grpvol
