#include "grpvol/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <regex>

#include "grpvol/errors.hpp"

namespace grpvol {

namespace {

Presentation from_text(const std::string& text) { return parse_presentation(text); }

std::vector<std::string> letters(int n, const std::string& prefix = "x") {
  std::vector<std::string> out;
  if (n <= 3 && prefix == "x") {
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

// Prism with vertical edges A0-A1, B0-B1, C0-C1, cut so that every square
// face is split along the diagonal through its smallest vertex.
void add_prism(std::vector<Tetrahedron>& out, std::array<int, 3> bottom, std::array<int, 3> top) {
  int k = 0;
  int m = bottom[0];
  bool on_top = false;
  for (int i = 0; i < 3; ++i) {
    if (bottom[static_cast<std::size_t>(i)] < m) { m = bottom[static_cast<std::size_t>(i)]; k = i; on_top = false; }
    if (top[static_cast<std::size_t>(i)] < m) { m = top[static_cast<std::size_t>(i)]; k = i; on_top = true; }
  }
  if (on_top) std::swap(bottom, top);
  const int x0 = bottom[static_cast<std::size_t>(k)];
  const int x1 = top[static_cast<std::size_t>(k)];
  const int y0 = bottom[static_cast<std::size_t>((k + 1) % 3)];
  const int y1 = top[static_cast<std::size_t>((k + 1) % 3)];
  const int z0 = bottom[static_cast<std::size_t>((k + 2) % 3)];
  const int z1 = top[static_cast<std::size_t>((k + 2) % 3)];
  out.push_back({x0, x1, y1, z1});
  const int q = std::min({y0, z0, z1, y1});
  if (q == y0 || q == z1) {
    out.push_back({x0, y0, z0, z1});
    out.push_back({x0, y0, z1, y1});
  } else {
    out.push_back({x0, y0, z0, y1});
    out.push_back({x0, z0, z1, y1});
  }
}

// Surface triangles with a vertex map f; layers l = 0..2, layer 2 is glued
// back to layer 0 through f.
TriangulationData mapping_torus(int nv, const std::vector<Triangle>& surface, const std::vector<int>& f) {
  constexpr int layers = 3;
  TriangulationData out;
  out.vertices = nv * layers;
  for (int l = 0; l < layers; ++l) {
    for (const auto& tri : surface) {
      std::array<int, 3> bottom{};
      std::array<int, 3> top{};
      for (std::size_t i = 0; i < 3; ++i) {
        bottom[i] = l * nv + tri[i];
        top[i] = l + 1 < layers ? (l + 1) * nv + tri[i] : f[static_cast<std::size_t>(tri[i])];
      }
      add_prism(out.tetrahedra, bottom, top);
    }
  }
  return out;
}

std::vector<Triangle> tetrahedron_boundary() { return {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}; }

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

Presentation free_group(int rank) {
  if (rank < 0) throw InvalidInput("rank must be nonnegative");
  return Presentation(letters(rank), {});
}

Presentation free_abelian_group(int rank) {
  if (rank < 0) throw InvalidInput("rank must be nonnegative");
  const auto g = letters(rank);
  std::vector<std::string> rels;
  for (int i = 0; i < rank; ++i) {
    for (int j = i + 1; j < rank; ++j) {
      const auto& a = g[static_cast<std::size_t>(i)];
      const auto& b = g[static_cast<std::size_t>(j)];
      rels.push_back(a + " " + b + " " + a + "^-1 " + b + "^-1");
    }
  }
  return from_text("gens: " + join(g, " ") + "; rels: " + join(rels, ", ") + ";");
}

Presentation surface_group(int genus) {
  if (genus < 1) throw InvalidInput("genus must be positive");
  std::vector<std::string> g;
  std::string rel;
  for (int i = 1; i <= genus; ++i) {
    const std::string a = "a" + std::to_string(i);
    const std::string b = "b" + std::to_string(i);
    g.push_back(a);
    g.push_back(b);
    rel += (i > 1 ? " " : "") + a + " " + b + " " + a + "^-1 " + b + "^-1";
  }
  return from_text("gens: " + join(g, " ") + "; rels: " + rel + ";");
}

Presentation trefoil_group() { return from_text("gens: a b; rels: a^2 b^-3;"); }

Presentation cyclic_group(int n) {
  if (n < 1) throw InvalidInput("order must be positive");
  return from_text("gens: a; rels: a^" + std::to_string(n) + ";");
}

Presentation triangle_group(int p, int q, int r) {
  if (p < 1 || q < 1 || r < 1) throw InvalidInput("triangle group exponents must be positive");
  std::vector<std::string> ab(static_cast<std::size_t>(r), "a b");
  return from_text("gens: a b; rels: a^" + std::to_string(p) + ", b^" + std::to_string(q) + ", " + join(ab, " ") +
                   ";");
}

Presentation baumslag_solitar(int m, int n) {
  return from_text("gens: a b; rels: b a^" + std::to_string(m) + " b^-1 a^" + std::to_string(-n) + ";");
}

Presentation named_presentation(const std::string& name) {
  std::smatch m;
  if (std::regex_match(name, m, std::regex("f(\\d+)"))) return free_group(std::stoi(m[1]));
  if (name == "z") return free_abelian_group(1);
  if (std::regex_match(name, m, std::regex("z(\\d+)"))) return free_abelian_group(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex("surface(\\d+)"))) return surface_group(std::stoi(m[1]));
  if (name == "trefoil") return trefoil_group();
  if (std::regex_match(name, m, std::regex("cyclic(\\d+)"))) return cyclic_group(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex("triangle(\\d)(\\d)(\\d)"))) {
    return triangle_group(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
  }
  if (std::regex_match(name, m, std::regex("bs(\\d)(\\d)"))) return baumslag_solitar(std::stoi(m[1]), std::stoi(m[2]));
  throw InvalidInput("unknown presentation fixture '" + name + "'");
}

TriangulationData boundary_4simplex() {
  TriangulationData out;
  out.vertices = 5;
  for (int skip = 4; skip >= 0; --skip) {
    Tetrahedron t{};
    std::size_t k = 0;
    for (int v = 0; v < 5; ++v) {
      if (v != skip) t[k++] = v;
    }
    out.tetrahedra.push_back(t);
  }
  return out;
}

TriangulationData single_tetrahedron() { return {4, {{0, 1, 2, 3}}}; }

TriangulationData two_spheres() {
  TriangulationData out = boundary_4simplex();
  out.vertices = 10;
  const auto n = out.tetrahedra.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto t = out.tetrahedra[i];
    for (int& v : t) v += 5;
    out.tetrahedra.push_back(t);
  }
  return out;
}

TriangulationData s2_times_s1() { return mapping_torus(4, tetrahedron_boundary(), {0, 1, 2, 3}); }

TriangulationData twisted_s2_bundle() { return mapping_torus(4, tetrahedron_boundary(), {1, 0, 2, 3}); }

TriangulationData three_torus() {
  std::vector<Triangle> grid;
  auto id = [](int i, int j) { return ((i + 3) % 3) * 3 + (j + 3) % 3; };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      grid.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      grid.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  }
  for (auto& t : grid) std::sort(t.begin(), t.end());
  std::vector<int> identity(9);
  std::iota(identity.begin(), identity.end(), 0);
  return mapping_torus(9, grid, identity);
}

// S^3 = V1 u V2 with core circles u_0..u_{a-1} and w_0..w_{b-1} and a
// torus grid T(i,j) between them; V1 is the mapping cylinder of
// T(i,j) -> u_i, V2 that of T(i,j) -> w_j. The generator acts by
// (i,j) -> (i+3, j+3q), u_i -> u_{i+3}, w_j -> w_{j+3q}, freely and with
// orbit distance >= 3, so the quotient is again simplicial.
LensFixture lens_space(int p, int q) {
  if (p < 2) throw InvalidInput("lens space needs p >= 2");
  if (std::gcd(p, q) != 1) throw InvalidInput("lens space needs gcd(p, q) = 1");
  constexpr int m = 3;
  const int a = m * p;
  const int b = m * p;
  q = static_cast<int>(mod(q, p));
  int q_inv = 1;
  while (mod(static_cast<std::int64_t>(q_inv) * q, p) != 1) ++q_inv;

  struct Lifted {
    int id;
    int k;  // group element carrying the orbit representative here
  };
  auto u = [&](int i) {
    i = static_cast<int>(mod(i, a));
    return Lifted{i % m, i / m};
  };
  auto w = [&](int j) {
    j = static_cast<int>(mod(j, b));
    const int j0 = j % m;
    const int t = (j - j0) / m;
    return Lifted{m + j0, static_cast<int>(mod(static_cast<std::int64_t>(t) * q_inv, p))};
  };
  auto torus = [&](int i, int j) {
    i = static_cast<int>(mod(i, a));
    j = static_cast<int>(mod(j, b));
    const int k = i / m;
    const int j0 = static_cast<int>(mod(j - static_cast<std::int64_t>(k) * m * q, b));
    return Lifted{2 * m + (i % m) * b + j0, k};
  };

  LensFixture out;
  out.p = p;
  out.q = q;
  out.data.vertices = 2 * m + m * b;
  out.generator.modulus = p;
  auto label = [&](const Lifted& x, const Lifted& y) {
    std::int64_t l = y.k - x.k;
    int lo = x.id;
    int hi = y.id;
    if (lo > hi) {
      std::swap(lo, hi);
      l = -l;
    }
    l = mod(l, p);
    auto [it, fresh] = out.generator.labels.emplace(std::make_pair(lo, hi), l);
    if (!fresh && it->second != l) throw Error("lens construction: inconsistent edge label");
  };
  auto prism = [&](const std::array<Lifted, 3>& bottom, const std::array<Lifted, 3>& top) {
    std::array<Lifted, 6> all{bottom[0], bottom[1], bottom[2], top[0], top[1], top[2]};
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) label(all[i], all[j]);
    }
    add_prism(out.data.tetrahedra, {bottom[0].id, bottom[1].id, bottom[2].id}, {top[0].id, top[1].id, top[2].id});
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < b; ++j) {
      prism({torus(i, j), torus(i, j + 1), u(i)}, {torus(i + 1, j), torus(i + 1, j + 1), u(i + 1)});
      prism({torus(i, j), torus(i + 1, j), w(j)}, {torus(i, j + 1), torus(i + 1, j + 1), w(j + 1)});
    }
  }
  // keep only labels on actual edges; prism diagonals not used are dropped
  const Triangulation t = out.data.load();
  std::erase_if(out.generator.labels, [&](const auto& kv) {
    return !t.edge_index(kv.first.first, kv.first.second) || kv.second == 0;
  });
  return out;
}

CoverSpec reduced_spec(const CoverSpec& generator, int d) {
  if (d < 1 || generator.modulus % d != 0) {
    throw InvalidInput("cover degree " + std::to_string(d) + " does not divide " + std::to_string(generator.modulus));
  }
  CoverSpec out;
  out.modulus = d;
  for (const auto& [key, value] : generator.labels) {
    const std::int64_t r = mod(value, d);
    if (r != 0) out.labels.emplace(key, r);
  }
  return out;
}

Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

Cochain random_cochain(const Triangulation& t, int degree, std::mt19937_64& rng, int max_num, int max_den) {
  Cochain c{degree, {}};
  for (int i = 0; i < t.count(degree); ++i) c.set(i, random_rational(rng, max_num, max_den));
  return c;
}

Cochain random_exact_cocycle(const Triangulation& t, std::mt19937_64& rng) {
  return coboundary(t, random_cochain(t, 1, rng));
}

Cochain random_unit_cocycle(const Triangulation& t, std::mt19937_64& rng) {
  Cochain g = random_exact_cocycle(t, rng);
  const Rational s = sup_norm(g);
  return s == 0 ? g : scaled(g, Rational(1) / s);
}

}  // namespace grpvol
