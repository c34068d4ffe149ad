#pragma once

// Built-in presentations, triangulations and cochain generators used by
// the tests, the acceptance suite and `grpvol fixtures`.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grpvol/cochain.hpp"
#include "grpvol/presentation.hpp"
#include "grpvol/triangulation.hpp"

namespace grpvol {

/// Unvalidated triangulation data, as it appears in a file.
struct TriangulationData {
  int vertices = 0;
  std::vector<Tetrahedron> tetrahedra;

  Triangulation load() const { return Triangulation(vertices, tetrahedra); }
};

// presentations
Presentation free_group(int rank);
Presentation free_abelian_group(int rank);
Presentation surface_group(int genus);
Presentation trefoil_group();
Presentation cyclic_group(int n);
Presentation triangle_group(int p, int q, int r);
Presentation baumslag_solitar(int m, int n);

/// Looks up "f2", "z3", "surface2", "trefoil", "cyclic6", "triangle235",
/// "bs12", ...; throws InvalidInput for unknown names.
Presentation named_presentation(const std::string& name);

// triangulations
TriangulationData boundary_4simplex();
TriangulationData single_tetrahedron();
TriangulationData two_spheres();
/// Mapping torus of a triangulated surface with three layers.
TriangulationData s2_times_s1();
TriangulationData three_torus();
/// Mapping torus of a reflection of the tetrahedron boundary.
TriangulationData twisted_s2_bundle();

/// Lens space L(p,q) as a quotient of a thickened join of two circles.
/// `generator` is a Z/p-valued 1-cocycle dual to the core circle; it
/// classifies the universal cyclic cover.
struct LensFixture {
  int p = 0;
  int q = 0;
  TriangulationData data;
  CoverSpec generator;
};

LensFixture lens_space(int p, int q);

/// The generator cocycle reduced mod d (d must divide p).
CoverSpec reduced_spec(const CoverSpec& generator, int d);

// cochains
/// Independent uniform values in [-max_num, max_num] / [1, max_den].
Cochain random_cochain(const Triangulation& t, int degree, std::mt19937_64& rng, int max_num = 5,
                       int max_den = 3);
/// gamma = d(alpha0) for a random 1-cochain alpha0.
Cochain random_exact_cocycle(const Triangulation& t, std::mt19937_64& rng);
/// Same, rescaled so that the sup norm is exactly 1 (unless zero).
Cochain random_unit_cocycle(const Triangulation& t, std::mt19937_64& rng);
Rational random_rational(std::mt19937_64& rng, int max_num = 7, int max_den = 5);

}  // namespace grpvol
