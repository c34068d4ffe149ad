#include "doctest.h"
#include "oracles.hpp"

#include "grpvol/abelian.hpp"
#include "grpvol/errors.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/presentation.hpp"
#include "grpvol/tietze.hpp"

using namespace grpvol;

namespace {
Word w(const Presentation& p, const char* text) { return parse_word(text, p); }
}  // namespace

TEST_CASE("parse: grammar examples") {
  const Presentation comm = parse_presentation("gens: a b; rels: a b a^-1 b^-1;");
  CHECK(comm.generator_count() == 2);
  REQUIRE(comm.relator_count() == 1);
  CHECK(comm.relators()[0].size() == 4);

  const Presentation z = parse_presentation("gens: a; rels: ;");
  CHECK(z.generator_count() == 1);
  CHECK(z.relator_count() == 0);

  const Presentation tre = parse_presentation("gens: a b; rels: a^2 b^-3;");
  REQUIRE(tre.relator_count() == 1);
  CHECK(tre.relators()[0].size() == 5);
}

TEST_CASE("parse: comments, whitespace and empty relators") {
  const Presentation p = parse_presentation("# header\ngens:  x   y ;\n rels: x x^-1 , y^3 # trailing\n;");
  CHECK(p.generator_count() == 2);
  CHECK(p.relator_count() == 1);  // x x^-1 reduces to nothing
  CHECK(to_string(p) == "gens: x y; rels: y^3;");
}

TEST_CASE("parse: errors carry positions") {
  try {
    parse_presentation("gens: a b;\nrels: a c;");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 9);
    CHECK(std::string(e.what()).find("unknown generator 'c'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_presentation("gens: a a; rels: ;"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a; rels: a^;"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a; rels: a"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gen: a; rels: ;"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: 1a; rels: ;"), ParseError);
  CHECK_THROWS_AS(Presentation({"a", "a"}, {}), InvalidInput);
}

TEST_CASE("free_reduce examples") {
  const Presentation p = free_group(2);
  CHECK(free_reduce(w(p, "a a^-1 b")) == w(p, "b"));
  CHECK(free_reduce(Word{}).empty());
  CHECK(free_reduce(Word{{0, 1}, {1, 1}, {1, -1}, {0, -1}, {0, 1}}) == w(p, "a"));
}

TEST_CASE("property: free_reduce is idempotent and yields reduced words") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Word raw = oracle::random_letters(rng, 3, 30);
    const Word r = free_reduce(raw);
    CHECK(free_reduce(r) == r);
    for (std::size_t k = 1; k < r.size(); ++k) CHECK(r[k] != r[k - 1].inverse());
    // same element: exponent sums agree
    CHECK(exponent_sums(raw, 3) == exponent_sums(r, 3));
  }
}

TEST_CASE("property: parse(print(P)) == P") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> gens(1, 4);
    std::uniform_int_distribution<int> rels(0, 4);
    const int g = gens(rng);
    std::vector<std::string> names;
    for (int k = 0; k < g; ++k) names.push_back("g" + std::to_string(k));
    std::vector<Word> relators;
    const int r = rels(rng);
    for (int k = 0; k < r; ++k) relators.push_back(oracle::random_letters(rng, g, 12));
    const Presentation p(names, relators);
    const std::string text = to_string(p);
    CHECK(parse_presentation(text) == p);
    CHECK(to_string(parse_presentation(text)) == text);
  }
}

TEST_CASE("presentation_deficiency examples") {
  CHECK(presentation_deficiency(free_group(2)) == 2);
  CHECK(presentation_deficiency(free_group(1)) == 1);
  CHECK(presentation_deficiency(trefoil_group()) == 1);
}

TEST_CASE("abelianization examples") {
  const auto z2 = abelianization(free_abelian_group(2));
  CHECK(z2.free_rank == 2);
  CHECK(z2.torsion.empty());
  const auto c5 = abelianization(cyclic_group(5));
  CHECK(c5.free_rank == 0);
  REQUIRE(c5.torsion.size() == 1);
  CHECK(c5.torsion[0] == 5);
  const auto t = abelianization(trefoil_group());
  CHECK(t.free_rank == 1);
  CHECK(t.torsion.empty());
  // Z/2 x Z/4 x Z/6 -> invariants 2 | 2 | 12
  const auto m = abelianization(parse_presentation("gens: a b c; rels: a^2, b^4, c^6, a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1;"));
  CHECK(m.free_rank == 0);
  CHECK(m.torsion == std::vector<Integer>{2, 2, 12});
}

TEST_CASE("rank_bounds examples") {
  CHECK(rank_bounds(free_group(2), 100) == Interval{2, 2});
  CHECK(rank_bounds(parse_presentation("gens: a b; rels: a;"), 100) == Interval{1, 1});
  CHECK(rank_bounds(trefoil_group(), 100) == Interval{1, 2});
}

TEST_CASE("deficiency_bounds examples") {
  CHECK(deficiency_bounds(free_group(2), 100) == Interval{2, 2});
  CHECK(deficiency_bounds(free_group(1), 100) == Interval{1, 1});
  const Interval t = deficiency_bounds(triangle_group(2, 3, 5), 100);
  CHECK(t.lo == -1);
  CHECK(*t.hi == 2);
}

TEST_CASE("tietze examples") {
  CHECK(tietze_simplify(parse_presentation("gens: a b; rels: b;"), 100) == free_group(1));
  const Presentation dup =
      parse_presentation("gens: a b; rels: a b a b^-1 a^-1 b^-1, a b a b^-1 a^-1 b^-1;");
  const TietzeResult r = tietze_trace(dup, 1);
  CHECK(r.presentation.relator_count() == 1);
  CHECK(r.presentation.generator_count() == 2);
  CHECK(tietze_simplify(free_group(2), 100) == free_group(2));
  // cyclic rotation and inversion count as duplicates
  const Presentation rot = parse_presentation("gens: a b; rels: a b^2, b a b, b^-2 a^-1;");
  CHECK(tietze_trace(rot, 2).presentation.relator_count() <= 2);
}

TEST_CASE("property: Tietze keeps the abelianization and never widens bounds") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 150; ++i) {
    std::uniform_int_distribution<int> gens(1, 3);
    std::uniform_int_distribution<int> rels(0, 3);
    const int g = gens(rng);
    std::vector<std::string> names;
    for (int k = 0; k < g; ++k) names.push_back("x" + std::to_string(k));
    std::vector<Word> relators;
    const int r = rels(rng);
    for (int k = 0; k < r; ++k) relators.push_back(oracle::random_letters(rng, g, 8));
    const Presentation p(names, relators);
    const Presentation s = tietze_simplify(p, 50);
    CHECK(abelianization(s) == abelianization(p));
    CHECK(s.generator_count() <= p.generator_count());
    CHECK(s.relator_count() <= p.relator_count());
    Interval prev_rank = rank_bounds(p, 0);
    Interval prev_def = deficiency_bounds(p, 0);
    for (int budget : {1, 2, 5, 20}) {
      const Interval rb = rank_bounds(p, budget);
      const Interval db = deficiency_bounds(p, budget);
      CHECK(rb.lo <= *rb.hi);
      CHECK(db.lo <= *db.hi);
      CHECK(*rb.hi <= *prev_rank.hi);
      CHECK(db.lo >= prev_def.lo);
      prev_rank = rb;
      prev_def = db;
    }
    const auto a = abelianization(p);
    for (std::size_t k = 1; k < a.torsion.size(); ++k) CHECK(a.torsion[k] % a.torsion[k - 1] == 0);
    for (const auto& x : a.torsion) CHECK(x >= 2);
  }
}
