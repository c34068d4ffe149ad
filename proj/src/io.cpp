#include "grpvol/io.hpp"

#include <cstdio>
#include <sstream>

#include "grpvol/errors.hpp"
#include "grpvol/tietze.hpp"

namespace grpvol {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Json rational_list(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::pair<int, int> parse_edge_key(const std::string& key) {
  const auto dash = key.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 >= key.size()) {
    throw ParseError("edge key '" + key + "' is not of the form u-v");
  }
  try {
    std::size_t used = 0;
    const int u = std::stoi(key.substr(0, dash), &used);
    if (used != dash) throw std::invalid_argument(key);
    const std::string rest = key.substr(dash + 1);
    const int v = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(key);
    return {u, v};
  } catch (const std::logic_error&) {
    throw ParseError("edge key '" + key + "' is not of the form u-v");
  }
}

Rational json_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<std::int64_t>()));
  throw ParseError("expected a rational string, got " + v.dump());
}

std::map<std::pair<int, int>, std::int64_t> parse_labels(const Json& labels) {
  std::map<std::pair<int, int>, std::int64_t> out;
  if (!labels.is_object()) throw ParseError("\"labels\" must be an object");
  for (const auto& [key, value] : labels.items()) {
    const auto [u, v] = parse_edge_key(key);
    if (u >= v) throw InvalidInput("edge key '" + key + "' must have u < v");
    if (!value.is_number_integer()) throw ParseError("label of " + key + " must be an integer");
    out[{u, v}] = value.get<std::int64_t>();
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", static_cast<int>(line), static_cast<int>(col));
  }
}

TriangulationData triangulation_from_json(const Json& j) {
  return guarded("triangulation", [&] {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("tetrahedra")) {
      throw ParseError("triangulation needs \"vertices\" and \"tetrahedra\"");
    }
    TriangulationData t;
    t.vertices = j.at("vertices").get<int>();
    for (const auto& tet : j.at("tetrahedra")) {
      if (!tet.is_array() || tet.size() != 4) throw ParseError("tetrahedron must list 4 vertices: " + tet.dump());
      t.tetrahedra.push_back({tet[0].get<int>(), tet[1].get<int>(), tet[2].get<int>(), tet[3].get<int>()});
    }
    return t;
  });
}

Json to_json(const TriangulationData& t) {
  Json tets = Json::array();
  for (const auto& s : t.tetrahedra) tets.push_back({s[0], s[1], s[2], s[3]});
  return {{"vertices", t.vertices}, {"tetrahedra", tets}};
}

Json to_json(const Triangulation& t) {
  return to_json(TriangulationData{t.vertex_count(), t.tetrahedra()});
}

CoverSpec cover_spec_from_json(const Json& j, bool allow_trivial) {
  return guarded("cover spec", [&] {
    if (!j.is_object() || !j.contains("d")) throw ParseError("cover spec needs \"d\"");
    CoverSpec s;
    s.modulus = j.at("d").get<int>();
    if (s.modulus < (allow_trivial ? 1 : 2)) throw InvalidInput("cover degree d must be at least 2");
    if (j.contains("labels")) s.labels = parse_labels(j.at("labels"));
    return s;
  });
}

Json to_json(const CoverSpec& s) {
  Json labels = Json::object();
  for (const auto& [key, value] : s.labels) {
    labels[std::to_string(key.first) + "-" + std::to_string(key.second)] = value;
  }
  return {{"d", s.modulus}, {"labels", labels}};
}

std::vector<CoverSpec> cover_family_from_json(const Json& j) {
  return guarded("cover family", [&] {
    std::vector<CoverSpec> out;
    if (j.is_array()) {
      for (const auto& s : j) out.push_back(cover_spec_from_json(s, true));
      return out;
    }
    if (!j.is_object() || !j.contains("d") || !j.at("d").is_array()) {
      throw ParseError("cover family must be an array of specs or {\"labels\", \"d\": [...]}");
    }
    const auto labels = j.contains("labels") ? parse_labels(j.at("labels")) : decltype(parse_labels(j)){};
    for (const auto& dv : j.at("d")) {
      const int d = dv.get<int>();
      if (d < 1) throw InvalidInput("cover degree must be positive");
      CoverSpec s;
      s.modulus = d;
      for (const auto& [key, value] : labels) {
        const std::int64_t r = ((value % d) + d) % d;
        if (r != 0) s.labels.emplace(key, r);
      }
      out.push_back(std::move(s));
    }
    return out;
  });
}

Cochain cochain_from_json(const Json& j) {
  return guarded("cochain", [&] {
    if (!j.is_object() || !j.contains("degree")) throw ParseError("cochain needs \"degree\"");
    Cochain c;
    c.degree = j.at("degree").get<int>();
    if (c.degree < 0 || c.degree > 3) throw InvalidInput("cochain degree must be in 0..3");
    if (j.contains("values")) {
      for (const auto& [key, value] : j.at("values").items()) {
        std::size_t used = 0;
        int i = 0;
        try {
          i = std::stoi(key, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used == 0 || used != key.size()) throw ParseError("cochain key '" + key + "' is not an index");
        c.set(i, json_rational(value));
      }
    }
    return c;
  });
}

Json to_json(const Cochain& c) {
  Json values = Json::object();
  for (const auto& [i, v] : c.values) values[std::to_string(i)] = to_string(v);
  return {{"degree", c.degree}, {"values", values}};
}

HomomorphismSpec homomorphism_from_json(const Json& j, const Presentation& source) {
  return guarded("homomorphism", [&] {
    if (!j.is_object() || !j.contains("target") || !j.contains("images")) {
      throw ParseError("map file needs \"target\" and \"images\"");
    }
    HomomorphismSpec h{parse_presentation(j.at("target").get<std::string>()), {}};
    for (const auto& [gen, word] : j.at("images").items()) {
      if (!source.find_generator(gen)) throw InvalidInput("image given for unknown generator '" + gen + "'");
      h.images[gen] = parse_word(word.get<std::string>(), h.target);
    }
    for (const auto& g : source.generators()) {
      if (!h.images.count(g)) throw InvalidInput("no image for generator '" + g + "'");
    }
    return h;
  });
}

Json to_json(const AbelianInvariants& a) {
  return {{"free_rank", a.free_rank}, {"torsion", rational_list(a.torsion)}};
}

Json to_json(const Interval& i) {
  return {{"lo", i.lo}, {"hi", i.hi ? Json(*i.hi) : Json(nullptr)}};
}

Json to_json(const CosetTable& t) {
  Json action = Json::object();
  for (std::size_t g = 0; g < t.action.size(); ++g) {
    const std::string name = t.base ? t.base->generators()[g] : std::to_string(g);
    action[name] = t.action[g];
  }
  return {{"index", t.index}, {"action", action}};
}

Json to_json(const VolumeEstimate& v) {
  Json rows = Json::array();
  for (const auto& s : v.per_index) {
    rows.push_back({{"d", s.index},
                    {"count", s.count},
                    {"min_ratio", to_string(s.min_ratio)},
                    {"max_ratio", to_string(s.max_ratio)}});
  }
  Json out = {{"kind", to_string(v.kind)},
              {"max_index", v.max_index},
              {"per_index", rows},
              {"truncated_liminf", to_string(v.truncated_liminf)},
              {"truncated_limsup", to_string(v.truncated_limsup)},
              {"truncated_value", to_string(v.truncated_value)},
              {"base_value", to_string(v.base_value)},
              {"assumptions", v.assumptions},
              {"findings", v.findings}};
  if (v.kind == VolumeKind::modp) out["prime"] = v.prime;
  return out;
}

Json to_json(const AxiomReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"d", v.index}, {"table", v.table}, {"inequality", v.inequality}, {"detail", v.detail}});
  }
  return {{"max_index", r.max_index},
          {"subgroups_checked", r.subgroups_checked},
          {"rank_ub_parent", r.rank_ub_parent},
          {"def_lb_parent", r.def_lb_parent},
          {"rank_equalities", r.rank_equalities},
          {"deficiency_equalities", r.deficiency_equalities},
          {"violations", violations},
          {"holds", r.violations.empty()}};
}

Json to_json(const HopfianReport& r) {
  return {{"homomorphism_on_abelianization", r.homomorphism_on_abelianization},
          {"surjective_on_abelianization", r.surjective_on_abelianization},
          {"source_volume", to_string(r.source_volume)},
          {"target_volume", to_string(r.target_volume)},
          {"inequality_holds", r.inequality_holds},
          {"max_index", r.max_index},
          {"assumptions", r.assumptions}};
}

Json to_json(const DistinctabilityReport& r) {
  return {{"distinctable", r.distinctable},
          {"lower_def_volume", to_string(r.lower_def_volume)},
          {"certificate", r.certificate ? Json(*r.certificate) : Json(nullptr)}};
}

Json to_json(const IndexRigidityReport& r) {
  Json collisions = Json::array();
  for (const auto& c : r.collisions) {
    collisions.push_back({{"generators", c.signature.generators},
                          {"relators", c.signature.relators},
                          {"abelianization", to_json(c.signature.abelian)},
                          {"index_a", c.index_a},
                          {"index_b", c.index_b}});
  }
  return {{"certificate_fires", r.certificate_fires},
          {"subgroups", r.subgroups},
          {"collisions", collisions},
          {"consistent", r.consistent}};
}

Json to_json(const Homology& h) {
  Json out = Json::array();
  for (const auto& g : h.groups) out.push_back({{"free_rank", g.free_rank}, {"torsion", rational_list(g.torsion)}});
  return out;
}

Json to_json(const ComplexityBound& b) {
  return {{"a", b.a},
          {"n", b.n},
          {"c3", b.c3},
          {"sup_norm", b.sup_norm.str()},
          {"value", b.upper_str()},
          {"rounding", "up"},
          {"lower", b.lower_str()},
          {"lower_rounding", "down"}};
}

Json to_json(const PairingResult& p) {
  return {{"pairing", to_string(p.value)}, {"gauge", to_string(p.gauge)}, {"potential", to_json(p.potential_used)}};
}

Json to_json(const BoundCheck& c) {
  return {{"pairing", to_string(c.pairing.value)},
          {"gauge", to_string(c.pairing.gauge)},
          {"bound", c.bound.upper_str()},
          {"bound_rounding", "up"},
          {"bound_detail", to_json(c.bound)},
          {"margin", render_decimal(c.margin, false)},
          {"margin_rounding", "down"},
          {"holds", c.holds},
          {"findings", c.findings}};
}

Json to_json(const MultiplicativityReport& r) {
  Json out = {{"d", r.sheets}, {"skipped", r.skipped ? Json(*r.skipped) : Json(nullptr)}, {"findings", r.findings}};
  if (!r.skipped || r.cover_qhs) out["cover_qhs"] = r.cover_qhs;
  if (!r.skipped) {
    out["base_pairing"] = to_string(r.base_pairing);
    out["cover_pairing"] = to_string(r.cover_pairing);
    out["expected"] = to_string(Rational(r.sheets * r.base_pairing));
    out["exact"] = r.exact;
    out["cover_gauge"] = to_string(r.cover_gauge);
    if (r.cover_bound) out["cover_bound"] = to_json(*r.cover_bound);
  }
  return out;
}

Json to_json(const GrowthReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"d", row.d},
                    {"c3", row.c3},
                    {"a", row.a},
                    {"n", row.n},
                    {"pairing", to_string(row.pairing)},
                    {"bound", row.bound.upper_str()},
                    {"bound_rounding", "up"},
                    {"bound_holds", row.bound_holds},
                    {"implied_c3_lower", row.implied_c3_lower ? Json(*row.implied_c3_lower) : Json(nullptr)}});
  }
  return {{"applicable", r.applicable},
          {"reason", r.reason ? Json(*r.reason) : Json(nullptr)},
          {"const_m", r.const_m ? Json(*r.const_m) : Json(nullptr)},
          {"const_m_definition", "log|pairing(base)| - log(pi^2)"},
          {"rows", rows}};
}

std::string growth_csv(const GrowthReport& r) {
  std::ostringstream out;
  out << "d,c3,a,n,pairing,bound_up,bound_holds,implied_c3_lower\n";
  for (const auto& row : r.rows) {
    out << row.d << ',' << row.c3 << ',' << row.a << ',' << row.n << ',' << to_string(row.pairing) << ','
        << row.bound.upper_str() << ',' << (row.bound_holds ? "true" : "false") << ',';
    if (row.implied_c3_lower) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", *row.implied_c3_lower);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

Json analyze_presentation(const Presentation& p, int simplify_budget) {
  const TietzeResult trace = tietze_trace(p, simplify_budget);
  return {{"presentation", to_string(p)},
          {"generators", p.generator_count()},
          {"relators", p.relator_count()},
          {"presentation_deficiency", presentation_deficiency(p)},
          {"deficiency_bounds", to_json(deficiency_bounds(p, simplify_budget))},
          {"rank_bounds", to_json(rank_bounds(p, simplify_budget))},
          {"abelianization", to_json(abelianization(p))},
          {"simplified", to_string(trace.presentation)},
          {"tietze_moves", trace.moves_used}};
}

Json check_triangulation(const Triangulation& t) {
  const Homology h = homology(t);
  const bool qhs = qhs_check(h);
  Json out = {{"counts", {t.count(0), t.count(1), t.count(2), t.count(3)}},
              {"euler_characteristic", t.count(0) - t.count(1) + t.count(2) - t.count(3)},
              {"orientable", t.orientable()},
              {"homology", to_json(h)},
              {"connected", h.connected()},
              {"qhs", qhs},
              {"adjacency", adjacency_statistic(t)}};
  if (!t.orientable()) {
    const auto f = *t.orientation_obstruction();
    out["orientation_obstruction"] = {f[0], f[1], f[2]};
  }
  if (qhs && t.orientable()) {
    const DPlusDelta d = build_dplusdelta(t);
    out["dplusdelta"] = {{"size", d.size()}, {"abs_determinant", to_string(d.abs_determinant)}};
  }
  return out;
}

}  // namespace grpvol
