#include "grpvol/cochain.hpp"

#include "grpvol/errors.hpp"

namespace grpvol {

Rational Cochain::at(int i) const {
  auto it = values.find(i);
  return it == values.end() ? Rational(0) : it->second;
}

void Cochain::set(int i, const Rational& v) {
  if (v == 0) {
    values.erase(i);
  } else {
    values[i] = v;
  }
}

void validate_cochain(const Triangulation& t, const Cochain& c) {
  if (c.degree < 0 || c.degree > 3) throw InvalidInput("cochain degree must be in 0..3");
  const int n = t.count(c.degree);
  for (const auto& [i, v] : c.values) {
    if (i < 0 || i >= n) {
      throw InvalidInput("cochain key " + std::to_string(i) + " is not a " + std::to_string(c.degree) +
                         "-simplex index (count " + std::to_string(n) + ")");
    }
  }
}

std::vector<Rational> to_dense(const Triangulation& t, const Cochain& c) {
  validate_cochain(t, c);
  std::vector<Rational> out(static_cast<std::size_t>(t.count(c.degree)));
  for (const auto& [i, v] : c.values) out[static_cast<std::size_t>(i)] = v;
  return out;
}

Cochain from_dense(int degree, const std::vector<Rational>& values) {
  Cochain c{degree, {}};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0) c.values.emplace(static_cast<int>(i), values[i]);
  }
  return c;
}

Cochain coboundary(const Triangulation& t, const Cochain& c) {
  validate_cochain(t, c);
  const IntegerMatrix d = coboundary_matrix(t, c.degree);
  Cochain out{c.degree + 1, {}};
  for (int r = 0; r < d.rows(); ++r) {
    Rational acc = 0;
    for (const auto& [col, x] : d.row(r)) {
      auto it = c.values.find(col);
      if (it != c.values.end()) acc += it->second * static_cast<long>(x);
    }
    out.set(r, acc);
  }
  return out;
}

Rational sup_norm(const Cochain& c) {
  Rational m = 0;
  for (const auto& [i, v] : c.values) {
    if (abs(v) > m) m = abs(v);
  }
  return m;
}

Cochain scaled(const Cochain& c, const Rational& factor) {
  Cochain out{c.degree, {}};
  if (factor == 0) return out;
  for (const auto& [i, v] : c.values) out.values.emplace(i, Rational(v * factor));
  return out;
}

Cochain sum(const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree) throw InvalidInput("cochain degrees differ");
  Cochain out = a;
  for (const auto& [i, v] : b.values) out.set(i, out.at(i) + v);
  return out;
}

Cochain pullback_cochain(const CoverResult& cover, const Cochain& c) {
  if (c.degree < 0 || c.degree > 3) throw InvalidInput("cochain degree must be in 0..3");
  const auto& proj = cover.projection[static_cast<std::size_t>(c.degree)];
  Cochain out{c.degree, {}};
  for (std::size_t i = 0; i < proj.size(); ++i) {
    auto it = c.values.find(proj[i]);
    if (it != c.values.end()) out.values.emplace(static_cast<int>(i), it->second);
  }
  return out;
}

}  // namespace grpvol
