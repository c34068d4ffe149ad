// grpvol: command-line front end. Reports are JSON on stdout (or --output);
// errors are a JSON body on stderr with exit codes
//   1 parse / invalid input, 2 resource limit, 3 precondition, 4 I/O.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "grpvol/errors.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/hopf.hpp"
#include "grpvol/io.hpp"
#include "grpvol/subgroups.hpp"
#include "grpvol/volumes.hpp"

using namespace grpvol;

namespace {

struct Config {
  std::string input;
  std::string output;
  std::string format = "json";
  int max_index = 1;
  std::string kind = "rank";
  std::int64_t prime = 2;
  bool aspherical = false;
  std::string filter = "all";
  int budget = kDefaultSimplifyBudget;
  std::int64_t node_budget = 0;
  std::string map_file;
  std::string gamma_file;
  std::string gauge = "harmonic";
  std::string sup_norm = "pi";
  std::string spec_file;
  std::string family_file;
  std::vector<std::string> fixture_args;
  std::uint64_t seed = 1;
  bool unit = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + c.output + "'");
}

void emit(const Config& c, const Json& j) {
  if (c.format == "csv") throw InvalidInput("--format csv is only available for `manifold growth`");
  emit(c, (c.format == "pretty" ? j.dump(2) : j.dump()) + "\n");
}

std::int64_t node_budget(const Config& c) {
  if (c.node_budget > 0) return c.node_budget;
  if (const char* env = std::getenv("GRPVOL_NODE_BUDGET")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end == env || *end != '\0' || v <= 0) throw InvalidInput("GRPVOL_NODE_BUDGET must be a positive integer");
    return v;
  }
  return VolumeOptions{}.node_budget;
}

VolumeOptions volume_options(const Config& c) {
  if (c.max_index < 1) throw InvalidInput("--max-index must be at least 1");
  if (c.budget < 0) throw InvalidInput("--budget must be nonnegative");
  VolumeOptions o;
  o.max_index = c.max_index;
  o.simplify_budget = c.budget;
  o.node_budget = node_budget(c);
  o.prime = c.prime;
  o.aspherical = c.aspherical;
  o.filter = parse_subgroup_filter(c.filter);
  return o;
}

Presentation load_presentation(const Config& c) { return parse_presentation(read_file(c.input)); }
Triangulation load_triangulation(const Config& c) {
  return triangulation_from_json(parse_json(read_file(c.input))).load();
}
Cochain load_gamma(const Config& c) { return cochain_from_json(parse_json(read_file(c.gamma_file))); }

void run_group(const std::string& cmd, const Config& c) {
  const Presentation p = load_presentation(c);
  if (cmd == "analyze") {
    emit(c, analyze_presentation(p, c.budget));
  } else if (cmd == "subgroups") {
    const VolumeOptions o = volume_options(c);
    const auto tables = enumerate_subgroups(p, {o.max_index, o.node_budget, o.filter});
    Json rows = Json::array();
    for (const auto& t : tables) {
      Json row = to_json(t);
      row["normal"] = is_normal(t);
      row["subgroup"] = to_string(reidemeister_schreier(p, t));
      rows.push_back(row);
    }
    emit(c, Json{{"max_index", o.max_index}, {"filter", c.filter}, {"count", tables.size()}, {"subgroups", rows}});
  } else if (cmd == "volume") {
    const VolumeOptions o = volume_options(c);
    const VolumeKind kind = parse_volume_kind(c.kind);
    emit(c, to_json(kind == VolumeKind::modp ? modp_mu1(p, o.prime, o) : truncated_volume(p, kind, o)));
  } else if (cmd == "axioms") {
    const VolumeOptions o = volume_options(c);
    Json out = to_json(check_volume_axiom(p, o));
    out["index_rigidity"] = to_json(index_rigidity_harness(p, o));
    emit(c, out);
  } else if (cmd == "distinct") {
    emit(c, to_json(distinctability_report(p, c.budget)));
  } else if (cmd == "hopfian") {
    const HomomorphismSpec h = homomorphism_from_json(parse_json(read_file(c.map_file)), p);
    emit(c, to_json(hopfian_harness(p, h.target, h.images, volume_options(c))));
  }
}

void run_manifold(const std::string& cmd, const Config& c) {
  const Triangulation t = load_triangulation(c);
  if (cmd == "check") {
    emit(c, check_triangulation(t));
  } else if (cmd == "pairing") {
    const PairingEngine engine(t);
    if (!engine.is_qhs()) throw PreconditionError("precondition violated: not a rational homology sphere");
    const PairingResult r = engine.pairing(load_gamma(c), parse_gauge(c.gauge));
    emit(c, to_json(r));
  } else if (cmd == "bound") {
    const SupNorm s = parse_sup_norm(c.sup_norm);
    if (c.gamma_file.empty()) {
      emit(c, to_json(hadamard_bound(t, s)));
    } else {
      const PairingEngine engine(t);
      if (!engine.is_qhs()) throw PreconditionError("precondition violated: not a rational homology sphere");
      emit(c, to_json(verify_pairing_bound(engine, load_gamma(c), s, parse_gauge(c.gauge))));
    }
  } else if (cmd == "cover") {
    const CoverSpec spec = cover_spec_from_json(parse_json(read_file(c.spec_file)));
    const CoverCheck check(t, spec);
    const auto& cov = check.cover();
    Json out = {{"d", cov.sheets},
                {"connected", cov.connected},
                {"counts", {cov.cover.count(0), cov.cover.count(1), cov.cover.count(2), cov.cover.count(3)}},
                {"homology", to_json(homology(cov.cover))},
                {"triangulation", to_json(cov.cover)}};
    if (!c.gamma_file.empty()) out["multiplicativity"] = to_json(check.run(load_gamma(c)));
    emit(c, out);
  } else if (cmd == "growth") {
    const auto family = cover_family_from_json(parse_json(read_file(c.family_file)));
    const GrowthReport r = growth_report(t, family, load_gamma(c));
    if (c.format == "csv") {
      emit(c, growth_csv(r));
    } else {
      emit(c, to_json(r));
    }
  }
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidInput("expected an integer, got '" + s + "'");
  return v;
}

void run_fixtures(const Config& c) {
  const auto& a = c.fixture_args;
  if (a.empty()) throw InvalidInput("fixture name required");
  const std::string& name = a[0];
  auto tri = [&](const TriangulationData& d) { emit(c, to_json(d)); };
  if (name == "s3") return tri(boundary_4simplex());
  if (name == "tetrahedron") return tri(single_tetrahedron());
  if (name == "two-spheres") return tri(two_spheres());
  if (name == "s2xs1") return tri(s2_times_s1());
  if (name == "t3") return tri(three_torus());
  if (name == "twisted") return tri(twisted_s2_bundle());
  if (name == "lens" || name == "lens-spec") {
    if (a.size() != (name == "lens" ? 3u : 4u)) {
      throw InvalidInput(name == "lens" ? "usage: fixtures lens P Q" : "usage: fixtures lens-spec P Q D");
    }
    const LensFixture l = lens_space(parse_int(a[1]), parse_int(a[2]));
    const Homology h = homology(l.data.load());
    const auto& h1 = h.groups[1];
    if (h1.free_rank != 0 || h1.torsion.size() != 1 || h1.torsion[0] != l.p) {
      throw Error("lens fixture failed its H1 certification");
    }
    if (name == "lens-spec") return emit(c, to_json(reduced_spec(l.generator, parse_int(a[3]))));
    Json out = to_json(l.data);
    out["certificate"] = {{"h1_torsion", {std::to_string(l.p)}}, {"lens", {l.p, l.q}}};
    out["generator"] = to_json(l.generator);
    return emit(c, out);
  }
  if (name == "cocycle") {
    if (a.size() != 2) throw InvalidInput("usage: fixtures cocycle TRIANGULATION [--seed S] [--unit]");
    Config in = c;
    in.input = a[1];
    const Triangulation t = load_triangulation(in);
    std::mt19937_64 rng(c.seed);
    return emit(c, to_json(c.unit ? random_unit_cocycle(t, rng) : random_exact_cocycle(t, rng)));
  }
  if (a.size() != 1) throw InvalidInput("unexpected arguments after fixture '" + name + "'");
  emit(c, to_string(named_presentation(name)) + "\n");
}

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Volumes of finitely presented groups and Hopf pairings on triangulated 3-manifolds"};
  app.require_subcommand(1);
  app.add_option("-o,--output", c.output, "Write the report to this file");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "pretty", "csv"}));
  app.fallthrough();

  auto* group = app.add_subcommand("group", "Finitely presented group reports");
  group->require_subcommand(1);
  group->fallthrough();
  std::map<std::string, CLI::App*> group_cmds;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"analyze", "Deficiency and rank bounds, abelianization"},
           {"subgroups", "Enumerate subgroups of index <= N"},
           {"volume", "Truncated volume over subgroups of index <= N"},
           {"axioms", "Check the index inequalities on every subgroup"},
           {"distinct", "Distinctability certificate"},
           {"hopfian", "Compare volumes across a surjection"}}) {
    auto* s = group->add_subcommand(name, help);
    s->add_option("file", c.input, "Presentation file")->required();
    s->add_option("--budget", c.budget, "Tietze move budget");
    group_cmds[name] = s;
  }
  for (const char* name : {"subgroups", "volume", "axioms", "hopfian"}) {
    auto* s = group_cmds[name];
    s->add_option("--max-index", c.max_index, "Largest subgroup index")->required();
    s->add_option("--node-budget", c.node_budget, "Search node budget (default: $GRPVOL_NODE_BUDGET or 1e7)");
    s->add_option("--filter", c.filter, "all, conjugacy or normal")->check(CLI::IsMember({"all", "conjugacy", "normal"}));
  }
  group_cmds["volume"]->add_option("--kind", c.kind, "def, rank, euler or modp")->required();
  group_cmds["volume"]->add_option("--prime", c.prime, "Prime for --kind modp");
  group_cmds["volume"]->add_flag("--aspherical", c.aspherical, "Assert the presentation complex is aspherical");
  group_cmds["hopfian"]->add_option("--map", c.map_file, "JSON map file")->required();

  auto* manifold = app.add_subcommand("manifold", "Triangulated 3-manifold reports");
  manifold->require_subcommand(1);
  manifold->fallthrough();
  std::map<std::string, CLI::App*> man_cmds;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"check", "Invariants, homology, qhs"},
           {"pairing", "Hopf pairing of a 2-cocycle"},
           {"bound", "Hadamard complexity bound"},
           {"cover", "Cyclic cover from a cocycle"},
           {"growth", "Pairing and bounds over a family of cyclic covers"}}) {
    auto* s = manifold->add_subcommand(name, help);
    s->add_option("file", c.input, "Triangulation JSON file")->required();
    man_cmds[name] = s;
  }
  man_cmds["pairing"]->add_option("--gamma", c.gamma_file, "2-cochain JSON file")->required();
  man_cmds["bound"]->add_option("--gamma", c.gamma_file, "Optional 2-cochain to check against the bound");
  man_cmds["cover"]->add_option("--gamma", c.gamma_file, "Optional 2-cochain for the multiplicativity check");
  man_cmds["growth"]->add_option("--gamma", c.gamma_file, "2-cochain JSON file")->required();
  for (const char* name : {"pairing", "bound"}) {
    man_cmds[name]->add_option("--gauge", c.gauge, "harmonic or any")->check(CLI::IsMember({"harmonic", "any"}));
  }
  man_cmds["bound"]->add_option("--sup-norm", c.sup_norm, "Rational or pi");
  man_cmds["cover"]->add_option("--spec", c.spec_file, "Cover spec JSON file")->required();
  man_cmds["growth"]->add_option("--spec-family", c.family_file, "Cover family JSON file")->required();

  auto* fixtures = app.add_subcommand("fixtures", "Emit built-in fixtures");
  fixtures->add_option("args", c.fixture_args,
                       "s3 | tetrahedron | two-spheres | s2xs1 | t3 | twisted | lens P Q | lens-spec P Q D | "
                       "cocycle FILE | f<n> | z<n> | surface<g> | trefoil | cyclic<n> | triangle<pqr> | bs<mn>")
      ->required();
  fixtures->add_option("--seed", c.seed, "Seed for `cocycle`");
  fixtures->add_flag("--unit", c.unit, "Rescale `cocycle` to sup norm 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(1, "usage", e.what());
  }

  try {
    if (group->parsed()) {
      for (const auto& [name, s] : group_cmds) {
        if (s->parsed()) run_group(name, c);
      }
    } else if (manifold->parsed()) {
      for (const auto& [name, s] : man_cmds) {
        if (s->parsed()) run_manifold(name, c);
      }
    } else if (fixtures->parsed()) {
      run_fixtures(c);
    }
  } catch (const ParseError& e) {
    return fail(1, "parse", e.what());
  } catch (const InvalidInput& e) {
    return fail(1, "invalid_input", e.what());
  } catch (const ResourceLimitError& e) {
    return fail(2, "resource_limit", e.what());
  } catch (const PreconditionError& e) {
    return fail(3, "precondition", e.what());
  } catch (const IoError& e) {
    return fail(4, "io", e.what());
  } catch (const std::exception& e) {
    return fail(5, "internal", e.what());
  }
  return 0;
}
