#include "doctest.h"
#include "oracles.hpp"

#include "grpvol/cochain.hpp"
#include "grpvol/elimination.hpp"
#include "grpvol/errors.hpp"
#include "grpvol/fixtures.hpp"
#include "grpvol/integer_matrix.hpp"
#include "grpvol/triangulation.hpp"

using namespace grpvol;

namespace {

bool is_sphere_homology(const Homology& h) {
  return h.groups[0] == HomologyGroup{1, {}} && h.groups[1] == HomologyGroup{0, {}} &&
         h.groups[2] == HomologyGroup{0, {}} && h.groups[3] == HomologyGroup{1, {}};
}

std::vector<Triangulation> oriented_fixtures() {
  std::vector<Triangulation> out;
  out.push_back(boundary_4simplex().load());
  for (int p = 2; p <= 3; ++p) out.push_back(lens_space(p, 1).data.load());
  out.push_back(lens_space(5, 2).data.load());
  out.push_back(s2_times_s1().load());
  out.push_back(three_torus().load());
  out.push_back(two_spheres().load());
  return out;
}

}  // namespace

TEST_CASE("smith_invariants examples") {
  CHECK(smith_invariants(IntegerMatrix::from_columns(2, {{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
  CHECK(smith_invariants(IntegerMatrix::from_columns(2, {{2, 4}, {4, 8}})) == std::vector<Integer>{2});
  CHECK(smith_invariants(IntegerMatrix(3, 3)).empty());
  CHECK(smith_invariants(IntegerMatrix::from_columns(3, {{2, 0, 0}, {0, 4, 0}, {0, 0, 6}})) ==
        std::vector<Integer>{2, 2, 12});
  CHECK(rank_mod_p(IntegerMatrix::from_columns(2, {{2, 0}, {0, 3}}), 2) == 1);
  CHECK(rank_mod_p(IntegerMatrix::from_columns(2, {{2, 0}, {0, 3}}), 5) == 2);
}

TEST_CASE("rational elimination: determinant and solve") {
  const IntegerMatrix a = IntegerMatrix::from_columns(3, {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  const RationalElimination lu(a);
  CHECK(lu.rank() == 3);
  CHECK(lu.determinant() == 18);  // 2(12-1) - 1(4-0)
  const std::vector<Rational> rhs{1, 2, 3};
  const auto x = lu.solve(rhs);
  REQUIRE(x.has_value());
  for (int r = 0; r < 3; ++r) {
    Rational acc = 0;
    for (const auto& [c, v] : a.row(r)) acc += (*x)[static_cast<std::size_t>(c)] * static_cast<long>(v);
    CHECK(acc == rhs[static_cast<std::size_t>(r)]);
  }
  const RationalElimination sing(IntegerMatrix::from_columns(2, {{1, 2}, {2, 4}}));
  CHECK(sing.rank() == 1);
  CHECK(sing.determinant() == 0);
  CHECK_FALSE(sing.solve(std::vector<Rational>{1, 0}).has_value());
  CHECK(sing.solve(std::vector<Rational>{1, 2}).has_value());
}

TEST_CASE("load: boundary of the 4-simplex") {
  const Triangulation t = boundary_4simplex().load();
  CHECK(t.count(0) == 5);
  CHECK(t.count(1) == 10);
  CHECK(t.count(2) == 10);
  CHECK(t.count(3) == 5);
  CHECK(t.orientable());
}

TEST_CASE("load: errors") {
  CHECK_THROWS_WITH_AS(single_tetrahedron().load(), doctest::Contains("triangle shared by 1 tetrahedra"),
                       InvalidInput);
  CHECK_THROWS_WITH_AS(Triangulation(5, {{0, 1, 2, 2}}), doctest::Contains("not simplicial"), InvalidInput);
  auto dup = boundary_4simplex();
  dup.tetrahedra.push_back({3, 2, 1, 0});
  CHECK_THROWS_WITH_AS(dup.load(), doctest::Contains("not simplicial"), InvalidInput);
  auto extra = boundary_4simplex();
  extra.vertices = 6;  // an isolated vertex breaks chi = 0
  CHECK_THROWS_WITH_AS(extra.load(), doctest::Contains("Euler characteristic"), InvalidInput);
  CHECK_THROWS_AS(Triangulation(4, {{0, 1, 2, 7}}), InvalidInput);
}

TEST_CASE("orientation") {
  const Triangulation t = boundary_4simplex().load();
  const auto& eps = t.orientation();
  CHECK(eps[0] == 1);
  const auto b = fundamental_boundary(t);
  CHECK(std::all_of(b.begin(), b.end(), [](std::int64_t x) { return x == 0; }));
  // sorted tets of the boundary skip vertex 4, 3, 2, 1, 0: signs alternate
  CHECK(eps == std::vector<int>{1, -1, 1, -1, 1});

  for (const auto& f : oriented_fixtures()) {
    const auto fb = fundamental_boundary(f);
    CHECK(std::all_of(fb.begin(), fb.end(), [](std::int64_t x) { return x == 0; }));
  }

  const Triangulation tw = twisted_s2_bundle().load();
  CHECK_FALSE(tw.orientable());
  CHECK(tw.orientation_obstruction().has_value());
  CHECK_THROWS_WITH_AS(tw.orientation(), doctest::Contains("not orientable"), PreconditionError);

  Triangulation copy = t;
  CHECK_THROWS_AS(copy.set_orientation({1, 1, 1, 1, 1}), InvalidInput);
  copy.set_orientation({-1, 1, -1, 1, -1});
  CHECK(copy.orientation()[0] == -1);
}

TEST_CASE("coboundary matrices") {
  const Triangulation t = boundary_4simplex().load();
  const IntegerMatrix d0 = coboundary_matrix(t, 0);
  CHECK(d0.rows() == 10);
  CHECK(d0.cols() == 5);
  for (int r = 0; r < d0.rows(); ++r) {
    REQUIRE(d0.row(r).size() == 2);
    CHECK(d0.row(r)[0].second * d0.row(r)[1].second == -1);
  }
  const IntegerMatrix d2 = coboundary_matrix(t, 2);
  CHECK(d2.rows() == 5);
  CHECK(d2.cols() == 10);
  const IntegerMatrix d2t = d2.transpose();
  for (int c = 0; c < d2t.rows(); ++c) CHECK(d2t.row(c).size() == 2);

  for (const auto& f : oriented_fixtures()) {
    const IntegerMatrix a = coboundary_matrix(f, 0);
    const IntegerMatrix b = coboundary_matrix(f, 1);
    const IntegerMatrix c = coboundary_matrix(f, 2);
    CHECK((b * a).is_zero());
    CHECK((c * b).is_zero());
    CHECK(a.max_abs_entry() <= 1);
    CHECK(c.max_abs_entry() <= 1);
    CHECK(c.transpose().transpose() == c);
  }
}

TEST_CASE("homology") {
  CHECK(is_sphere_homology(homology(boundary_4simplex().load())));
  for (int p = 2; p <= 5; ++p) {
    const Homology h = homology(lens_space(p, 1).data.load());
    CHECK(h.groups[1] == HomologyGroup{0, {p}});
    CHECK(h.groups[2] == HomologyGroup{0, {}});
    CHECK(qhs_check(h));
  }
  CHECK(homology(lens_space(5, 2).data.load()).groups[1] == HomologyGroup{0, {5}});

  const Homology two = homology(two_spheres().load());
  CHECK(two.groups[0].free_rank == 2);
  CHECK_FALSE(two.connected());
  CHECK_FALSE(qhs_check(two));

  const Homology t3 = homology(three_torus().load());
  CHECK(t3.groups[1].free_rank == 3);
  CHECK(t3.groups[2].free_rank == 3);
  CHECK_FALSE(qhs_check(t3));

  const Homology s2s1 = homology(s2_times_s1().load());
  CHECK(s2s1.groups[1] == HomologyGroup{1, {}});

  const Homology tw = homology(twisted_s2_bundle().load());
  CHECK(tw.groups[1].free_rank == 1);
  CHECK(tw.groups[3].free_rank == 0);
}

TEST_CASE("lens fixtures are manifolds of the right size") {
  for (int p = 2; p <= 5; ++p) {
    const auto l = lens_space(p, 1);
    const Triangulation t = l.data.load();
    CHECK(t.count(3) == 54 * p);
    CHECK(t.count(0) == 6 + 9 * p);
    CHECK(oracle::vertex_links_are_spheres(t));
    CHECK_NOTHROW(check_cocycle(t, l.generator));
  }
  CHECK(oracle::vertex_links_are_spheres(boundary_4simplex().load()));
  CHECK(oracle::vertex_links_are_spheres(three_torus().load()));
  CHECK_THROWS_AS(lens_space(4, 2), InvalidInput);
}

TEST_CASE("build_dplusdelta") {
  const DPlusDelta s3 = build_dplusdelta(boundary_4simplex().load());
  CHECK(s3.size() == 14);
  CHECK(s3.matrix.cols() == 14);
  CHECK(s3.abs_determinant > 0);
  for (int p = 2; p <= 3; ++p) {
    const Triangulation t = lens_space(p, 1).data.load();
    const DPlusDelta d = build_dplusdelta(t);
    CHECK(d.size() == t.count(1) + t.count(3) - 1);
    CHECK(d.abs_determinant > 0);
  }
  // succeeds exactly when qhs holds
  for (const auto& f : oriented_fixtures()) {
    if (qhs_check(f)) {
      CHECK_NOTHROW(build_dplusdelta(f));
    } else {
      CHECK_THROWS_WITH_AS(build_dplusdelta(f), doctest::Contains("not a rational homology sphere"),
                           PreconditionError);
    }
  }
  // delta blocks are transposes of the d blocks
  const Triangulation t = boundary_4simplex().load();
  const IntegerMatrix d0 = coboundary_matrix(t, 0);
  for (int e = 0; e < t.count(1); ++e) {
    for (int v = 1; v < t.count(0); ++v) CHECK(s3.matrix.at(v - 1, e) == d0.at(e, v));
  }
}

TEST_CASE("adjacency statistic") {
  CHECK(adjacency_statistic(boundary_4simplex().load()) == 4);
}

TEST_CASE("cyclic covers") {
  const Triangulation s3 = boundary_4simplex().load();
  const CoverResult trivial = cyclic_cover(s3, CoverSpec{2, {}});
  CHECK_FALSE(trivial.connected);
  CHECK(connected_components(trivial.cover) == 2);
  for (int k = 0; k < 4; ++k) CHECK(trivial.cover.count(k) == 2 * s3.count(k));
  CHECK(homology(trivial.cover).groups[0].free_rank == 2);

  const auto l4 = lens_space(4, 1);
  const Triangulation base = l4.data.load();
  const CoverResult c = cyclic_cover(base, reduced_spec(l4.generator, 2));
  CHECK(c.connected);
  for (int k = 0; k < 4; ++k) CHECK(c.cover.count(k) == 2 * base.count(k));
  CHECK(c.cover.count(0) - c.cover.count(1) + c.cover.count(2) - c.cover.count(3) == 0);
  CHECK(homology(c.cover).groups[1] == HomologyGroup{0, {2}});
  CHECK(oracle::vertex_links_are_spheres(c.cover));
  // projection respects simplices
  for (std::size_t i = 0; i < c.cover.tetrahedra().size(); ++i) {
    const auto& s = c.cover.tetrahedra()[i];
    const auto& b = base.tetrahedra()[static_cast<std::size_t>(c.projection[3][i])];
    for (std::size_t k = 0; k < 4; ++k) CHECK(s[k] / 2 == b[k]);
  }

  const CoverResult full = cyclic_cover(base, l4.generator);
  CHECK(full.connected);
  CHECK(is_sphere_homology(homology(full.cover)));

  CoverSpec bad{3, {{{0, 1}, 1}}};
  CHECK_THROWS_WITH_AS(cyclic_cover(s3, bad), doctest::Contains("cocycle condition violated on triangle"),
                       PreconditionError);
  CoverSpec nonedge{2, {{{0, 99}, 1}}};
  CHECK_THROWS_AS(cyclic_cover(s3, nonedge), InvalidInput);
}

TEST_CASE("pullback_cochain") {
  const Triangulation s3 = boundary_4simplex().load();
  const CoverResult trivial = cyclic_cover(s3, CoverSpec{2, {}});
  CHECK(pullback_cochain(trivial, Cochain{2, {}}).is_zero());
  std::mt19937_64 rng(5);
  const Cochain c = random_cochain(s3, 2, rng);
  const Cochain up = pullback_cochain(trivial, c);
  CHECK(sup_norm(up) == sup_norm(c));
  // two identical copies: sheet 0 vertices are even ids, sheet 1 odd ids
  for (int i = 0; i < trivial.cover.count(2); ++i) {
    const auto& f = trivial.cover.triangles()[static_cast<std::size_t>(i)];
    CHECK(up.at(i) == c.at(*s3.triangle_index(f[0] / 2, f[1] / 2, f[2] / 2)));
  }
  Rational total_up = 0;
  Rational total = 0;
  for (const auto& [i, v] : up.values) total_up += v;
  for (const auto& [i, v] : c.values) total += v;
  CHECK(total_up == 2 * total);
}

TEST_CASE("cochain arithmetic") {
  const Triangulation t = boundary_4simplex().load();
  std::mt19937_64 rng(6);
  const Cochain a = random_cochain(t, 0, rng);
  CHECK(coboundary(t, coboundary(t, a)).is_zero());
  const Cochain b = random_cochain(t, 1, rng);
  CHECK(coboundary(t, coboundary(t, b)).is_zero());
  CHECK(coboundary(t, sum(a, scaled(a, -1))).is_zero());
  CHECK_THROWS_AS(validate_cochain(t, Cochain{1, {{10, 1}}}), InvalidInput);
  CHECK_THROWS_AS(validate_cochain(t, Cochain{4, {}}), InvalidInput);
}
