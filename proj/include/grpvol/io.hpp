#pragma once

// JSON encodings of inputs and reports. Rationals are strings in lowest
// terms ("3/2", "-1", "0"); bounds are scientific strings tagged with the
// direction they were rounded in.

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "grpvol/abelian.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/hopf.hpp"
#include "grpvol/subgroups.hpp"
#include "grpvol/volumes.hpp"

namespace grpvol {

using Json = nlohmann::json;

/// Parses JSON text; throws ParseError with line/column on failure.
Json parse_json(const std::string& text);

// inputs
TriangulationData triangulation_from_json(const Json& j);
Json to_json(const TriangulationData& t);
Json to_json(const Triangulation& t);

/// {"d": d, "labels": {"u-v": k}}; `allow_trivial` admits d = 1.
CoverSpec cover_spec_from_json(const Json& j, bool allow_trivial = false);
Json to_json(const CoverSpec& s);

/// Either an array of cover specs or {"labels": {...}, "d": [d1, d2, ...]}
/// with integer labels reduced mod each d.
std::vector<CoverSpec> cover_family_from_json(const Json& j);

Cochain cochain_from_json(const Json& j);
Json to_json(const Cochain& c);

struct HomomorphismSpec {
  Presentation target;
  std::map<std::string, Word> images;
};

/// {"target": "<presentation text>", "images": {"a": "word", ...}}; images
/// are words over the target generators.
HomomorphismSpec homomorphism_from_json(const Json& j, const Presentation& source);

// reports
Json to_json(const AbelianInvariants& a);
Json to_json(const Interval& i);
Json to_json(const CosetTable& t);
Json to_json(const VolumeEstimate& v);
Json to_json(const AxiomReport& r);
Json to_json(const HopfianReport& r);
Json to_json(const DistinctabilityReport& r);
Json to_json(const IndexRigidityReport& r);
Json to_json(const Homology& h);
Json to_json(const ComplexityBound& b);
Json to_json(const PairingResult& p);
Json to_json(const BoundCheck& c);
Json to_json(const MultiplicativityReport& r);
Json to_json(const GrowthReport& r);
std::string growth_csv(const GrowthReport& r);

/// Deficiency/rank intervals, abelianization and the simplified form.
Json analyze_presentation(const Presentation& p, int simplify_budget);

/// Counts, homology, orientation, qhs and (when qhs) the d+delta size.
Json check_triangulation(const Triangulation& t);

}  // namespace grpvol
