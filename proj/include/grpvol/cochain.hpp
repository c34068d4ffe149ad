#pragma once

#include <map>
#include <vector>

#include "grpvol/numeric.hpp"
#include "grpvol/triangulation.hpp"

namespace grpvol {

/// Sparse rational k-cochain keyed by the index of the sorted k-simplex.
/// Zero values are never stored.
struct Cochain {
  int degree = 0;
  std::map<int, Rational> values;

  Rational at(int i) const;
  void set(int i, const Rational& v);
  bool is_zero() const { return values.empty(); }
  bool operator==(const Cochain&) const = default;
};

/// Throws InvalidInput for bad degree or out-of-range keys.
void validate_cochain(const Triangulation& t, const Cochain& c);

std::vector<Rational> to_dense(const Triangulation& t, const Cochain& c);
Cochain from_dense(int degree, const std::vector<Rational>& values);

/// d c as a (degree + 1)-cochain; degree must be 0, 1 or 2.
Cochain coboundary(const Triangulation& t, const Cochain& c);

Rational sup_norm(const Cochain& c);
Cochain scaled(const Cochain& c, const Rational& factor);
Cochain sum(const Cochain& a, const Cochain& b);

/// Value on each lifted simplex is the value on its projection.
Cochain pullback_cochain(const CoverResult& cover, const Cochain& c);

}  // namespace grpvol
