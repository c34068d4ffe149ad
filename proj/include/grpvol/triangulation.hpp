#pragma once

// Closed triangulated 3-dimensional pseudo-manifolds with a global vertex
// order. Simplices of every dimension are stored as sorted vertex tuples
// in lexicographic order; that order fixes all cochain bases.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grpvol/integer_matrix.hpp"
#include "grpvol/numeric.hpp"

namespace grpvol {

using Edge = std::array<int, 2>;
using Triangle = std::array<int, 3>;
using Tetrahedron = std::array<int, 4>;

struct SimplexHash {
  template <std::size_t N>
  std::size_t operator()(const std::array<int, N>& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (int v : s) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

/// Validated simplicial complex: every triangle in exactly two
/// tetrahedra, Euler characteristic zero. Orientation is attached when the
/// complex is orientable.
class Triangulation {
 public:
  /// Throws InvalidInput when the complex is not simplicial, a triangle is
  /// not shared by exactly two tetrahedra, or the Euler characteristic is
  /// nonzero. Orients by propagation seeded at tetrahedron 0 with +1 (each
  /// further component is seeded at its lowest tetrahedron).
  Triangulation(int vertex_count, std::vector<Tetrahedron> tetrahedra);

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<Tetrahedron>& tetrahedra() const noexcept { return tets_; }

  /// c_k = number of k-simplices.
  int count(int k) const;

  std::optional<int> edge_index(int u, int v) const;
  std::optional<int> triangle_index(int u, int v, int w) const;
  std::optional<int> tetrahedron_index(const Tetrahedron& t) const;

  bool orientable() const noexcept { return orientation_.has_value(); }
  /// Per-tetrahedron sign; throws PreconditionError when not orientable.
  const std::vector<int>& orientation() const;
  /// Triangle at which orientation propagation failed, if it did.
  std::optional<Triangle> orientation_obstruction() const noexcept { return obstruction_; }

  /// Replaces the orientation after checking that sum(eps_t t) is a cycle.
  void set_orientation(std::vector<int> signs);

 private:
  void build_tables();
  void propagate_orientation();

  int vertex_count_ = 0;
  std::vector<Tetrahedron> tets_;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::unordered_map<Edge, int, SimplexHash> edge_lookup_;
  std::unordered_map<Triangle, int, SimplexHash> triangle_lookup_;
  std::unordered_map<Tetrahedron, int, SimplexHash> tet_lookup_;
  std::optional<std::vector<int>> orientation_;
  std::optional<Triangle> obstruction_;
};

/// Sign of face i (vertex i removed) in the boundary of an ordered simplex.
inline int face_sign(int i) { return (i % 2 == 0) ? 1 : -1; }

/// Matrix of d: C^k -> C^{k+1} (rows: (k+1)-simplices, cols: k-simplices),
/// entries (-1)^i for the i-th face in the vertex order.
IntegerMatrix coboundary_matrix(const Triangulation& t, int k);

/// Boundary of the fundamental chain sum(eps_t t), as a triangle vector.
std::vector<std::int64_t> fundamental_boundary(const Triangulation& t);

struct HomologyGroup {
  int free_rank = 0;
  std::vector<Integer> torsion;
  bool operator==(const HomologyGroup&) const = default;
};

struct Homology {
  std::array<HomologyGroup, 4> groups;
  bool connected() const { return groups[0].free_rank == 1; }
};

/// Integral homology in degrees 0..3 via Smith normal form.
Homology homology(const Triangulation& t);

/// b0 = b3 = 1 and b1 = b2 = 0.
bool qhs_check(const Homology& h);
bool qhs_check(const Triangulation& t);

/// Square block matrix of d + delta : C^1 + C~^3 -> C~^0 + C^2.
/// Columns: edges, then tetrahedra 1..c3-1. Rows: vertices 1..c0-1, then
/// triangles. Reduced spaces drop vertex 0 and tetrahedron 0.
struct DPlusDelta {
  IntegerMatrix matrix;
  Integer abs_determinant;
  int size() const { return matrix.rows(); }
};

/// Block assembly only; no preconditions are checked.
IntegerMatrix dplusdelta_matrix(const Triangulation& t);

/// Requires an oriented rational homology sphere (PreconditionError
/// otherwise). Certifies invertibility by exact rational elimination.
DPlusDelta build_dplusdelta(const Triangulation& t);

/// max over vertices, edges and triangles of their number of cofaces.
int adjacency_statistic(const Triangulation& t);

/// Z/d-valued 1-cocycle; label(v,u) = -label(u,v).
struct CoverSpec {
  int modulus = 2;
  std::map<std::pair<int, int>, std::int64_t> labels;  // keys u < v

  std::int64_t label(int u, int v) const;
};

/// Throws PreconditionError naming a triangle where the cocycle condition
/// fails, or InvalidInput for labels on non-edges.
void check_cocycle(const Triangulation& t, const CoverSpec& spec);

struct CoverResult {
  Triangulation cover;
  int sheets = 0;
  bool connected = false;
  /// projection[k][i] = base k-simplex under cover k-simplex i
  std::array<std::vector<int>, 4> projection;
};

/// Cyclic cover: vertex (v, s) gets id v*d + s, so the global order is
/// compatible with the projection. The cover carries the pulled-back
/// orientation.
CoverResult cyclic_cover(const Triangulation& base, const CoverSpec& spec);

/// Components of the 1-skeleton.
int connected_components(const Triangulation& t);

}  // namespace grpvol
