#pragma once

// Volume functionals over truncations of the finite-index subgroup lattice.
// All ratios are exact rationals. Deficiency-type quantities always use
// certified lower bounds and rank-type quantities certified upper bounds,
// so every reported truncation is on the sound side of its inequality.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpvol/abelian.hpp"
#include "grpvol/numeric.hpp"
#include "grpvol/presentation.hpp"
#include "grpvol/subgroups.hpp"

namespace grpvol {

enum class VolumeKind { deficiency, rank, euler, modp };

std::string to_string(VolumeKind kind);
VolumeKind parse_volume_kind(const std::string& text);

struct VolumeOptions {
  int max_index = 1;
  int simplify_budget = kDefaultSimplifyBudget;
  std::int64_t node_budget = 10'000'000;
  std::int64_t prime = 2;       // modp only
  bool aspherical = false;      // euler only: user assertion, never verified
  SubgroupFilter filter = SubgroupFilter::all;
};

struct IndexStats {
  int index = 0;
  int count = 0;
  Rational min_ratio;
  Rational max_ratio;
};

struct VolumeEstimate {
  VolumeKind kind = VolumeKind::deficiency;
  std::int64_t prime = 0;
  int max_index = 0;
  std::vector<IndexStats> per_index;  // indices with at least one subgroup
  Rational truncated_liminf;
  Rational truncated_limsup;
  /// liminf surrogate for deficiency, limsup surrogate otherwise.
  Rational truncated_value;
  /// Base functional of the whole group (the d = 1 reference value).
  Rational base_value;
  std::vector<std::string> assumptions;
  std::vector<std::string> findings;
};

/// max(deficiency_bounds(P).lo, 1) - 1
Rational lower_def_volume(const Presentation& p, int simplify_budget = kDefaultSimplifyBudget);

/// rank_bounds(P).hi - 1
Rational upper_rank_volume(const Presentation& p, int simplify_budget = kDefaultSimplifyBudget);

/// |1 - g + r| when the user asserts asphericity of the presentation
/// complex; nullopt otherwise.
std::optional<Rational> euler_volume(const Presentation& p, bool aspherical);

/// Enumerates subgroups of the Tietze-simplified presentation, rewrites
/// each by Reidemeister-Schreier and evaluates the base functional / index.
VolumeEstimate truncated_volume(const Presentation& p, VolumeKind kind, const VolumeOptions& options);

/// mod-p first cohomology ratios; violations of dim H^1(D) <= d dim H^1(G)
/// are recorded as findings.
VolumeEstimate modp_mu1(const Presentation& p, std::int64_t prime, const VolumeOptions& options);

struct AxiomViolation {
  int index = 0;
  int table = 0;  // position in the enumeration
  std::string inequality;
  std::string detail;
};

struct AxiomReport {
  int max_index = 0;
  int subgroups_checked = 0;
  std::int64_t rank_ub_parent = 0;
  std::int64_t def_lb_parent = 0;
  int rank_equalities = 0;
  int deficiency_equalities = 0;
  std::vector<AxiomViolation> violations;
};

/// Checks r(D) - 1 <= d (r(G) - 1) and def(D) - 1 >= d (def(G) - 1) at the
/// certified-bound level for every enumerated subgroup.
AxiomReport check_volume_axiom(const Presentation& p, const VolumeOptions& options);

struct HopfianReport {
  bool homomorphism_on_abelianization = false;
  bool surjective_on_abelianization = false;
  Rational source_volume;
  Rational target_volume;
  bool inequality_holds = false;
  int max_index = 0;
  std::vector<std::string> assumptions;
};

/// Compares truncated rank volumes across a map given on generators.
/// Throws PreconditionError when the abelianized map is not a
/// homomorphism or not surjective.
HopfianReport hopfian_harness(const Presentation& source, const Presentation& target,
                              const std::map<std::string, Word>& images, const VolumeOptions& options);

struct DistinctabilityReport {
  bool distinctable = false;
  Rational lower_def_volume;
  std::optional<std::string> certificate;
};

DistinctabilityReport distinctability_report(const Presentation& p,
                                             int simplify_budget = kDefaultSimplifyBudget);

/// (gens, rels, abelianization) of a simplified subgroup presentation.
struct SubgroupSignature {
  int generators = 0;
  int relators = 0;
  AbelianInvariants abelian;
  bool operator<(const SubgroupSignature& o) const {
    if (generators != o.generators) return generators < o.generators;
    if (relators != o.relators) return relators < o.relators;
    if (abelian.free_rank != o.abelian.free_rank) return abelian.free_rank < o.abelian.free_rank;
    return std::lexicographical_compare(abelian.torsion.begin(), abelian.torsion.end(),
                                        o.abelian.torsion.begin(), o.abelian.torsion.end());
  }
  bool operator==(const SubgroupSignature& o) const = default;
};

struct SignatureCollision {
  SubgroupSignature signature;
  int index_a = 0;
  int index_b = 0;
};

/// Isomorphic finite-index subgroups must share their index once the
/// distinctability certificate fires. Collects signatures that appear at
/// two different indices; `consistent` is false only if a collision
/// coexists with the certificate.
struct IndexRigidityReport {
  bool certificate_fires = false;
  int subgroups = 0;
  std::vector<SignatureCollision> collisions;
  bool consistent = true;
};

IndexRigidityReport index_rigidity_harness(const Presentation& p, const VolumeOptions& options);

}  // namespace grpvol
