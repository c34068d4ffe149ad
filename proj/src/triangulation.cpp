#include "grpvol/triangulation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "grpvol/elimination.hpp"
#include "grpvol/errors.hpp"

namespace grpvol {

namespace {

template <std::size_t N>
std::string format_simplex(const std::array<int, N>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < N; ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

template <std::size_t N>
std::array<int, N - 1> drop(const std::array<int, N>& s, std::size_t i) {
  std::array<int, N - 1> out{};
  std::size_t k = 0;
  for (std::size_t j = 0; j < N; ++j) {
    if (j != i) out[k++] = s[j];
  }
  return out;
}

}  // namespace

Triangulation::Triangulation(int vertex_count, std::vector<Tetrahedron> tetrahedra)
    : vertex_count_(vertex_count), tets_(std::move(tetrahedra)) {
  if (vertex_count_ < 1) throw InvalidInput("vertex count must be positive");
  if (tets_.empty()) throw InvalidInput("no tetrahedra");
  for (std::size_t i = 0; i < tets_.size(); ++i) {
    auto& t = tets_[i];
    for (int v : t) {
      if (v < 0 || v >= vertex_count_) {
        throw InvalidInput("tetrahedron " + std::to_string(i) + " has vertex " + std::to_string(v) + " out of range");
      }
    }
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
      throw InvalidInput("not simplicial: tetrahedron " + std::to_string(i) + " repeats a vertex");
    }
  }
  std::sort(tets_.begin(), tets_.end());
  if (auto it = std::adjacent_find(tets_.begin(), tets_.end()); it != tets_.end()) {
    throw InvalidInput("not simplicial: two tetrahedra on vertex set " + format_simplex(*it));
  }
  build_tables();
  propagate_orientation();
}

void Triangulation::build_tables() {
  for (const auto& t : tets_) {
    for (std::size_t i = 0; i < 4; ++i) {
      const Triangle f = drop(t, i);
      triangles_.push_back(f);
      for (std::size_t j = 0; j < 3; ++j) edges_.push_back(drop(f, j));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  std::sort(triangles_.begin(), triangles_.end());
  // every triangle must appear exactly twice among tetrahedron faces
  std::vector<Triangle> unique_tris;
  for (std::size_t i = 0; i < triangles_.size();) {
    std::size_t j = i;
    while (j < triangles_.size() && triangles_[j] == triangles_[i]) ++j;
    if (j - i != 2) {
      throw InvalidInput("triangle shared by " + std::to_string(j - i) + " tetrahedra: " +
                         format_simplex(triangles_[i]));
    }
    unique_tris.push_back(triangles_[i]);
    i = j;
  }
  triangles_ = std::move(unique_tris);
  for (std::size_t i = 0; i < edges_.size(); ++i) edge_lookup_.emplace(edges_[i], static_cast<int>(i));
  for (std::size_t i = 0; i < triangles_.size(); ++i) triangle_lookup_.emplace(triangles_[i], static_cast<int>(i));
  for (std::size_t i = 0; i < tets_.size(); ++i) tet_lookup_.emplace(tets_[i], static_cast<int>(i));
  const long chi = static_cast<long>(vertex_count_) - count(1) + count(2) - count(3);
  if (chi != 0) throw InvalidInput("Euler characteristic is " + std::to_string(chi) + ", expected 0");
}

void Triangulation::propagate_orientation() {
  // for each triangle: the two (tet, face position) incidences
  std::vector<std::array<std::pair<int, int>, 2>> inc(triangles_.size());
  std::vector<int> filled(triangles_.size(), 0);
  for (std::size_t t = 0; t < tets_.size(); ++t) {
    for (std::size_t i = 0; i < 4; ++i) {
      const int f = triangle_lookup_.at(drop(tets_[t], i));
      inc[static_cast<std::size_t>(f)][static_cast<std::size_t>(filled[static_cast<std::size_t>(f)]++)] = {
          static_cast<int>(t), static_cast<int>(i)};
    }
  }
  std::vector<int> sign(tets_.size(), 0);
  for (std::size_t seed = 0; seed < tets_.size(); ++seed) {
    if (sign[seed] != 0) continue;
    sign[seed] = 1;
    std::deque<int> queue{static_cast<int>(seed)};
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < 4; ++i) {
        const int f = triangle_lookup_.at(drop(tets_[static_cast<std::size_t>(t)], i));
        const auto& pair = inc[static_cast<std::size_t>(f)];
        const auto [other, j] = pair[0].first == t && pair[0].second == static_cast<int>(i) ? pair[1] : pair[0];
        // induced orientations on the shared face must cancel
        const int want = -sign[static_cast<std::size_t>(t)] * face_sign(static_cast<int>(i)) * face_sign(j);
        if (sign[static_cast<std::size_t>(other)] == 0) {
          sign[static_cast<std::size_t>(other)] = want;
          queue.push_back(other);
        } else if (sign[static_cast<std::size_t>(other)] != want) {
          obstruction_ = triangles_[static_cast<std::size_t>(f)];
          orientation_.reset();
          return;
        }
      }
    }
  }
  orientation_ = std::move(sign);
}

int Triangulation::count(int k) const {
  switch (k) {
    case 0: return vertex_count_;
    case 1: return static_cast<int>(edges_.size());
    case 2: return static_cast<int>(triangles_.size());
    case 3: return static_cast<int>(tets_.size());
    default: return 0;
  }
}

std::optional<int> Triangulation::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = edge_lookup_.find(Edge{u, v});
  return it == edge_lookup_.end() ? std::nullopt : std::optional<int>(it->second);
}

std::optional<int> Triangulation::triangle_index(int u, int v, int w) const {
  Triangle f{u, v, w};
  std::sort(f.begin(), f.end());
  auto it = triangle_lookup_.find(f);
  return it == triangle_lookup_.end() ? std::nullopt : std::optional<int>(it->second);
}

std::optional<int> Triangulation::tetrahedron_index(const Tetrahedron& t) const {
  Tetrahedron s = t;
  std::sort(s.begin(), s.end());
  auto it = tet_lookup_.find(s);
  return it == tet_lookup_.end() ? std::nullopt : std::optional<int>(it->second);
}

const std::vector<int>& Triangulation::orientation() const {
  if (!orientation_) {
    throw PreconditionError("triangulation is not orientable (propagation contradiction at triangle " +
                            format_simplex(*obstruction_) + ")");
  }
  return *orientation_;
}

void Triangulation::set_orientation(std::vector<int> signs) {
  if (signs.size() != tets_.size()) throw InvalidInput("orientation has wrong length");
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidInput("orientation signs must be +1 or -1");
  }
  auto previous = std::move(orientation_);
  orientation_ = std::move(signs);
  const auto boundary = fundamental_boundary(*this);
  if (std::any_of(boundary.begin(), boundary.end(), [](std::int64_t x) { return x != 0; })) {
    orientation_ = std::move(previous);
    throw InvalidInput("orientation signs do not form a cycle");
  }
}

IntegerMatrix coboundary_matrix(const Triangulation& t, int k) {
  if (k < 0 || k > 2) throw PreconditionError("coboundary degree must be 0, 1 or 2");
  IntegerMatrix m(t.count(k + 1), t.count(k));
  if (k == 0) {
    for (std::size_t r = 0; r < t.edges().size(); ++r) {
      const auto& e = t.edges()[r];
      m.add(static_cast<int>(r), e[1], 1);
      m.add(static_cast<int>(r), e[0], -1);
    }
  } else if (k == 1) {
    for (std::size_t r = 0; r < t.triangles().size(); ++r) {
      const auto& f = t.triangles()[r];
      for (std::size_t i = 0; i < 3; ++i) {
        const auto e = drop(f, i);
        m.add(static_cast<int>(r), *t.edge_index(e[0], e[1]), face_sign(static_cast<int>(i)));
      }
    }
  } else {
    for (std::size_t r = 0; r < t.tetrahedra().size(); ++r) {
      const auto& s = t.tetrahedra()[r];
      for (std::size_t i = 0; i < 4; ++i) {
        const auto f = drop(s, i);
        m.add(static_cast<int>(r), *t.triangle_index(f[0], f[1], f[2]), face_sign(static_cast<int>(i)));
      }
    }
  }
  return m;
}

std::vector<std::int64_t> fundamental_boundary(const Triangulation& t) {
  const auto& eps = t.orientation();
  std::vector<std::int64_t> out(static_cast<std::size_t>(t.count(2)), 0);
  for (std::size_t r = 0; r < t.tetrahedra().size(); ++r) {
    for (std::size_t i = 0; i < 4; ++i) {
      const auto f = drop(t.tetrahedra()[r], i);
      out[static_cast<std::size_t>(*t.triangle_index(f[0], f[1], f[2]))] += eps[r] * face_sign(static_cast<int>(i));
    }
  }
  return out;
}

Homology homology(const Triangulation& t) {
  // invariant factors of the boundary maps d_{k+1} = (coboundary k)^T
  std::array<std::vector<Integer>, 5> bd;  // bd[k] for boundary C_k -> C_{k-1}
  for (int k = 0; k <= 2; ++k) bd[static_cast<std::size_t>(k + 1)] = smith_invariants(coboundary_matrix(t, k));
  Homology h;
  for (int k = 0; k <= 3; ++k) {
    const int rank_in = static_cast<int>(bd[static_cast<std::size_t>(k)].size());
    const int rank_out = static_cast<int>(bd[static_cast<std::size_t>(k + 1)].size());
    auto& g = h.groups[static_cast<std::size_t>(k)];
    g.free_rank = t.count(k) - rank_in - rank_out;
    for (const auto& x : bd[static_cast<std::size_t>(k + 1)]) {
      if (x != 1) g.torsion.push_back(x);
    }
  }
  return h;
}

bool qhs_check(const Homology& h) {
  return h.groups[0].free_rank == 1 && h.groups[1].free_rank == 0 && h.groups[2].free_rank == 0 &&
         h.groups[3].free_rank == 1;
}

bool qhs_check(const Triangulation& t) { return qhs_check(homology(t)); }

IntegerMatrix dplusdelta_matrix(const Triangulation& t) {
  const int c0 = t.count(0);
  const int c1 = t.count(1);
  const int c3 = t.count(3);
  const int n = c1 + c3 - 1;
  IntegerMatrix m(n, n);
  const IntegerMatrix d0 = coboundary_matrix(t, 0);
  const IntegerMatrix d1 = coboundary_matrix(t, 1);
  const IntegerMatrix d2 = coboundary_matrix(t, 2);
  for (int e = 0; e < c1; ++e) {
    for (const auto& [v, x] : d0.row(e)) {
      if (v > 0) m.add(v - 1, e, x);
    }
  }
  for (int f = 0; f < d1.rows(); ++f) {
    for (const auto& [e, x] : d1.row(f)) m.add(c0 - 1 + f, e, x);
  }
  for (int s = 1; s < c3; ++s) {
    for (const auto& [f, x] : d2.row(s)) m.add(c0 - 1 + f, c1 + s - 1, x);
  }
  return m;
}

DPlusDelta build_dplusdelta(const Triangulation& t) {
  t.orientation();
  if (!qhs_check(t)) throw PreconditionError("precondition violated: not a rational homology sphere");
  DPlusDelta out;
  out.matrix = dplusdelta_matrix(t);
  const RationalElimination lu(out.matrix);
  if (lu.rank() != out.matrix.rows()) throw PreconditionError("d+delta degenerate: matrix is singular");
  out.abs_determinant = abs(lu.determinant()).get_num();
  return out;
}

int adjacency_statistic(const Triangulation& t) {
  std::vector<int> vdeg(static_cast<std::size_t>(t.count(0)), 0);
  for (const auto& e : t.edges()) {
    ++vdeg[static_cast<std::size_t>(e[0])];
    ++vdeg[static_cast<std::size_t>(e[1])];
  }
  std::vector<int> edeg(static_cast<std::size_t>(t.count(1)), 0);
  for (const auto& f : t.triangles()) {
    for (std::size_t i = 0; i < 3; ++i) {
      const auto e = drop(f, i);
      ++edeg[static_cast<std::size_t>(*t.edge_index(e[0], e[1]))];
    }
  }
  int a = 2;  // every triangle lies in exactly two tetrahedra
  for (int x : vdeg) a = std::max(a, x);
  for (int x : edeg) a = std::max(a, x);
  return a;
}

std::int64_t CoverSpec::label(int u, int v) const {
  const bool flip = u > v;
  if (flip) std::swap(u, v);
  auto it = labels.find({u, v});
  std::int64_t x = it == labels.end() ? 0 : it->second;
  if (flip) x = -x;
  x %= modulus;
  return x < 0 ? x + modulus : x;
}

void check_cocycle(const Triangulation& t, const CoverSpec& spec) {
  if (spec.modulus < 2) throw PreconditionError("cover modulus must be at least 2");
  for (const auto& [key, value] : spec.labels) {
    if (!t.edge_index(key.first, key.second) || key.first >= key.second) {
      throw InvalidInput("label on " + std::to_string(key.first) + "-" + std::to_string(key.second) +
                         " does not name an edge (u < v)");
    }
  }
  for (std::size_t i = 0; i < t.triangles().size(); ++i) {
    const auto& f = t.triangles()[i];
    const std::int64_t s = spec.label(f[0], f[1]) + spec.label(f[1], f[2]) - spec.label(f[0], f[2]);
    if (((s % spec.modulus) + spec.modulus) % spec.modulus != 0) {
      throw PreconditionError("cocycle condition violated on triangle " + std::to_string(i) + " " +
                              format_simplex(f));
    }
  }
}

int connected_components(const Triangulation& t) {
  std::vector<int> parent(static_cast<std::size_t>(t.count(0)));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  int components = t.count(0);
  for (const auto& e : t.edges()) {
    const int a = root(e[0]);
    const int b = root(e[1]);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components;
}

CoverResult cyclic_cover(const Triangulation& base, const CoverSpec& spec) {
  check_cocycle(base, spec);
  const auto& eps = base.orientation();
  const int d = spec.modulus;
  std::vector<Tetrahedron> lifted;
  lifted.reserve(base.tetrahedra().size() * static_cast<std::size_t>(d));
  for (const auto& s : base.tetrahedra()) {
    for (int sheet = 0; sheet < d; ++sheet) {
      Tetrahedron t{};
      for (std::size_t i = 0; i < 4; ++i) {
        const std::int64_t k = (sheet + (i == 0 ? 0 : spec.label(s[0], s[i]))) % d;
        t[i] = s[i] * d + static_cast<int>(k);
      }
      lifted.push_back(t);
    }
  }
  std::optional<Triangulation> cover;
  try {
    cover.emplace(base.count(0) * d, std::move(lifted));
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("cover is not a valid simplicial complex (") + e.what() +
                       "); subdivide the base first");
  }
  CoverResult out{*cover, d, false, {}};
  auto& proj = out.projection;
  proj[0].resize(static_cast<std::size_t>(out.cover.count(0)));
  for (int v = 0; v < out.cover.count(0); ++v) proj[0][static_cast<std::size_t>(v)] = v / d;
  for (const auto& e : out.cover.edges()) proj[1].push_back(*base.edge_index(e[0] / d, e[1] / d));
  for (const auto& f : out.cover.triangles()) proj[2].push_back(*base.triangle_index(f[0] / d, f[1] / d, f[2] / d));
  std::vector<int> signs;
  for (const auto& s : out.cover.tetrahedra()) {
    const int b = *base.tetrahedron_index({s[0] / d, s[1] / d, s[2] / d, s[3] / d});
    proj[3].push_back(b);
    signs.push_back(eps[static_cast<std::size_t>(b)]);
  }
  out.cover.set_orientation(std::move(signs));
  out.connected = connected_components(out.cover) == 1;
  return out;
}

}  // namespace grpvol
