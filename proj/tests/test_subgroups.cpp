#include "doctest.h"
#include "oracles.hpp"

#include "grpvol/abelian.hpp"
#include "grpvol/errors.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/subgroups.hpp"

using namespace grpvol;

namespace {

std::vector<std::int64_t> counts_by_index(const std::vector<CosetTable>& tables, int n) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n + 1), 0);
  for (const auto& t : tables) ++out[static_cast<std::size_t>(t.index)];
  return out;
}

}  // namespace

TEST_CASE("Hall recursion oracle values") {
  const auto a = oracle::hall_counts(2, 5);
  CHECK(a[1] == 1);
  CHECK(a[2] == 3);
  CHECK(a[3] == 13);
  CHECK(a[4] == 71);
  CHECK(a[5] == 461);
  // the permutation-counting oracle agrees with the recursion
  for (int n = 1; n <= 4; ++n) CHECK(oracle::subgroup_count_by_perms(free_group(2), n) == a[static_cast<std::size_t>(n)]);
  const auto f3 = oracle::hall_counts(3, 3);
  CHECK(f3[2] == 7);
}

TEST_CASE("enumerate: free group F2 against the Hall recursion") {
  const auto tables = enumerate_subgroups(free_group(2), {5});
  const auto hall = oracle::hall_counts(2, 5);
  CHECK(counts_by_index(tables, 5) == hall);
  REQUIRE(!tables.empty());
  CHECK(tables.front().index == 1);
}

TEST_CASE("enumerate: spec examples") {
  CHECK(enumerate_subgroups(free_group(2), {2}).size() == 4);
  const auto z = enumerate_subgroups(free_group(1), {5});
  CHECK(counts_by_index(z, 5) == std::vector<std::int64_t>{0, 1, 1, 1, 1, 1});
  const auto c3 = enumerate_subgroups(cyclic_group(3), {3});
  CHECK(counts_by_index(c3, 3) == std::vector<std::int64_t>{0, 1, 0, 1});
}

TEST_CASE("enumerate: permutation oracle on other groups") {
  for (const char* name : {"z2", "trefoil", "cyclic6", "triangle235", "bs12", "f3"}) {
    const Presentation p = named_presentation(name);
    const int n = p.generator_count() >= 3 ? 3 : 4;
    const auto tables = enumerate_subgroups(p, {n});
    const auto got = counts_by_index(tables, n);
    for (int k = 1; k <= n; ++k) {
      CAPTURE(name);
      CAPTURE(k);
      CHECK(got[static_cast<std::size_t>(k)] == oracle::subgroup_count_by_perms(p, k));
    }
  }
  const auto s2 = enumerate_subgroups(surface_group(2), {2});
  CHECK(counts_by_index(s2, 2)[2] == 15);
}

TEST_CASE("enumerate: every table validates, output is sorted and deterministic") {
  const Presentation p = named_presentation("trefoil");
  const auto a = enumerate_subgroups(p, {5});
  const auto b = enumerate_subgroups(p, {5});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].same_action(b[i]));
    CHECK_FALSE(validate_table(a[i]).has_value());
    if (i > 0) {
      const bool ordered = a[i - 1].index < a[i].index ||
                           (a[i - 1].index == a[i].index && a[i - 1].action < a[i].action);
      CHECK(ordered);
    }
  }
}

TEST_CASE("enumerate: filters") {
  const auto all = enumerate_subgroups(free_group(2), {3});
  const auto reps = enumerate_subgroups(free_group(2), {3, 10'000'000, SubgroupFilter::conjugacy_reps});
  const auto normal = enumerate_subgroups(free_group(2), {3, 10'000'000, SubgroupFilter::normal});
  // F2 index 3: 13 subgroups = 4 normal + 3 classes of size 3
  CHECK(counts_by_index(reps, 3) == std::vector<std::int64_t>{0, 1, 3, 7});
  CHECK(counts_by_index(normal, 3) == std::vector<std::int64_t>{0, 1, 3, 4});
  // each conjugacy class is the orbit of its representative under re-rooting
  std::size_t covered = 0;
  for (const auto& r : reps) {
    std::vector<CosetTable> orbit;
    for (int c = 0; c < r.index; ++c) {
      const CosetTable s = standardize(r, c);
      bool fresh = true;
      for (const auto& o : orbit) fresh = fresh && !o.same_action(s);
      if (fresh) orbit.push_back(s);
    }
    covered += orbit.size();
    CHECK(is_normal(r) == (orbit.size() == 1));
  }
  CHECK(covered == all.size());
}

TEST_CASE("enumerate: budget exhaustion is reported") {
  CHECK_THROWS_AS(enumerate_subgroups(free_group(2), {5, 50}), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_subgroups(free_group(0), {2}), PreconditionError);
  CHECK_THROWS_AS(enumerate_subgroups(free_group(2), {0}), PreconditionError);
}

TEST_CASE("validate_table: negative cases") {
  auto base = std::make_shared<const Presentation>(cyclic_group(2));
  // a acting as a 3-cycle does not satisfy a^2
  CosetTable bad{base, 3, {{1, 2, 0}}};
  auto v = validate_table(bad);
  REQUIRE(v.has_value());
  CHECK(v->kind == TableViolation::Kind::relator_nontrivial);
  CHECK(v->relator == 0);

  auto f1 = std::make_shared<const Presentation>(free_group(1));
  CosetTable split{f1, 3, {{1, 0, 2}}};
  v = validate_table(split);
  REQUIRE(v.has_value());
  CHECK(v->kind == TableViolation::Kind::unreachable_coset);
  CHECK(v->message.find("unreachable coset") != std::string::npos);

  CosetTable not_perm{f1, 2, {{1, 1}}};
  v = validate_table(not_perm);
  REQUIRE(v.has_value());
  CHECK(v->kind == TableViolation::Kind::not_bijective);

  CosetTable wrong_shape{f1, 2, {{1}}};
  CHECK(validate_table(wrong_shape)->kind == TableViolation::Kind::shape);
}

TEST_CASE("schreier_transversal examples") {
  const Presentation f2 = free_group(2);
  const auto tables = enumerate_subgroups(f2, {2});
  CHECK(schreier_transversal(tables[0]).transversal == std::vector<Word>{Word{}});
  bool found = false;
  for (const auto& t : tables) {
    if (t.index == 2 && t.action[0] == std::vector<int>{1, 0}) {
      found = true;
      CHECK(schreier_transversal(t).transversal == std::vector<Word>{Word{}, parse_word("a", f2)});
    }
  }
  CHECK(found);
  const Presentation z = free_group(1);
  for (const auto& t : enumerate_subgroups(z, {5})) {
    const auto s = schreier_transversal(t);
    for (int c = 0; c < t.index; ++c) {
      // a power of a, going the short way round (positive on ties)
      const auto& word = s.transversal[static_cast<std::size_t>(c)];
      Word expect;
      for (int k = 0; k <= t.index; ++k) {
        const Word pos(static_cast<std::size_t>(k), Letter{0, 1});
        const Word neg(static_cast<std::size_t>(k), Letter{0, -1});
        if (t.apply(0, pos) == c) { expect = pos; break; }
        if (t.apply(0, neg) == c) { expect = neg; break; }
      }
      CHECK(word == expect);
      CHECK(t.apply(0, word) == c);
    }
    CHECK(s.tree_edges.size() == static_cast<std::size_t>(t.index - 1));
  }
}

TEST_CASE("reidemeister_schreier examples") {
  for (const auto& t : enumerate_subgroups(free_group(2), {2})) {
    if (t.index != 2) continue;
    const Presentation s = reidemeister_schreier(free_group(2), t);
    CHECK(s.generator_count() == 3);
    CHECK(s.relator_count() == 0);
  }
  for (const auto& t : enumerate_subgroups(free_group(1), {5})) {
    const Presentation s = reidemeister_schreier(free_group(1), t);
    CHECK(s.generator_count() == 1);
    CHECK(s.relator_count() == 0);
  }
  const Presentation z2 = free_abelian_group(2);
  for (const auto& t : enumerate_subgroups(z2, {2})) {
    if (t.index != 2) continue;
    const Presentation s = reidemeister_schreier(z2, t);
    CHECK(s.generator_count() == 3);
    CHECK(s.relator_count() == 2);
    const auto ab = abelianization(s);
    CHECK(ab.free_rank == 2);
    CHECK(ab.torsion.empty());
  }
}

TEST_CASE("property: Schreier count identity and non-tree edge oracle") {
  for (const char* name : {"f2", "z2", "trefoil", "cyclic6", "triangle235", "bs12"}) {
    const Presentation p = named_presentation(name);
    const int g = p.generator_count();
    const int r = p.relator_count();
    for (const auto& t : enumerate_subgroups(p, {4})) {
      const Presentation s = reidemeister_schreier(p, t);
      const int d = t.index;
      CHECK(s.generator_count() == d * (g - 1) + 1);
      CHECK(s.relator_count() == d * r);
      CHECK(presentation_deficiency(s) - 1 == d * (presentation_deficiency(p) - 1));
      // d*g edges in the Schreier graph, d-1 of them in the tree
      const auto data = schreier_transversal(t);
      int non_tree = 0;
      for (const auto& row : data.is_tree) {
        for (char x : row) non_tree += !x;
      }
      CHECK(non_tree == s.generator_count());
    }
  }
}
