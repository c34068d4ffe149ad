#pragma once

// Independent reference computations for the tests. Nothing here calls
// into the enumeration or elimination code it is used to check.

#include <algorithm>
#include <array>
#include <functional>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "grpvol/presentation.hpp"
#include "grpvol/triangulation.hpp"

namespace oracle {

inline std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Subgroups of index n of the free group of rank r:
// a_n = n (n!)^{r-1} - sum_{k<n} ((n-k)!)^{r-1} a_k
inline std::vector<std::int64_t> hall_counts(int rank, int max_n) {
  std::vector<std::int64_t> a(static_cast<std::size_t>(max_n + 1), 0);
  auto pw = [](std::int64_t b, int e) {
    std::int64_t out = 1;
    for (int i = 0; i < e; ++i) out *= b;
    return out;
  };
  for (int n = 1; n <= max_n; ++n) {
    std::int64_t v = n * pw(factorial(n), rank - 1);
    for (int k = 1; k < n; ++k) v -= pw(factorial(n - k), rank - 1) * a[static_cast<std::size_t>(k)];
    a[static_cast<std::size_t>(n)] = v;
  }
  return a;
}

using Perm = std::vector<int>;

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Number of subgroups of index n = #transitive homomorphisms G -> S_n / (n-1)!
inline std::int64_t subgroup_count_by_perms(const grpvol::Presentation& p, int n) {
  const auto perms = all_perms(n);
  const int g = p.generator_count();
  std::vector<Perm> inv(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) {
    inv[i].resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) inv[i][static_cast<std::size_t>(perms[i][static_cast<std::size_t>(x)])] = x;
  }
  std::vector<std::size_t> choice(static_cast<std::size_t>(g), 0);
  std::int64_t transitive = 0;
  while (true) {
    bool ok = true;
    for (const auto& r : p.relators()) {
      for (int x = 0; x < n && ok; ++x) {
        int y = x;
        for (const auto& l : r) {
          const auto& m = l.exp > 0 ? perms[choice[static_cast<std::size_t>(l.gen)]] : inv[choice[static_cast<std::size_t>(l.gen)]];
          y = m[static_cast<std::size_t>(y)];
        }
        ok = y == x;
      }
      if (!ok) break;
    }
    if (ok) {
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      std::vector<int> stack{0};
      seen[0] = 1;
      int reached = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int k = 0; k < g; ++k) {
          const int y = perms[choice[static_cast<std::size_t>(k)]][static_cast<std::size_t>(x)];
          if (!seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            ++reached;
            stack.push_back(y);
          }
        }
      }
      if (reached == n || g == 0) transitive += (reached == n);
    }
    int k = 0;
    while (k < g && ++choice[static_cast<std::size_t>(k)] == perms.size()) choice[static_cast<std::size_t>(k++)] = 0;
    if (k == g) break;
  }
  return transitive / factorial(n - 1);
}

// Link of every vertex is a triangulated 2-sphere: connected, chi = 2,
// every link edge in exactly two link triangles.
inline bool vertex_links_are_spheres(const grpvol::Triangulation& t) {
  for (int v = 0; v < t.count(0); ++v) {
    std::vector<std::array<int, 3>> tris;
    for (const auto& s : t.tetrahedra()) {
      if (std::find(s.begin(), s.end(), v) == s.end()) continue;
      std::array<int, 3> f{};
      std::size_t k = 0;
      for (int x : s) {
        if (x != v) f[k++] = x;
      }
      tris.push_back(f);
    }
    std::map<std::pair<int, int>, int> edges;
    std::set<int> verts;
    for (const auto& f : tris) {
      for (int x : f) verts.insert(x);
      edges[{f[0], f[1]}]++;
      edges[{f[0], f[2]}]++;
      edges[{f[1], f[2]}]++;
    }
    for (const auto& [e, c] : edges) {
      if (c != 2) return false;
    }
    const long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) + static_cast<long>(tris.size());
    if (chi != 2) return false;
    std::map<int, int> parent;
    for (int x : verts) parent[x] = x;
    std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (const auto& [e, c] : edges) parent[root(e.first)] = root(e.second);
    std::set<int> roots;
    for (int x : verts) roots.insert(root(x));
    if (roots.size() != 1) return false;
  }
  return true;
}

// Random word over g generators (not reduced).
inline grpvol::Word random_letters(std::mt19937_64& rng, int g, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, g - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  grpvol::Word w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w.push_back({gen(rng), sign(rng) ? 1 : -1});
  return w;
}

}  // namespace oracle
