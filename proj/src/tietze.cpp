#include "grpvol/tietze.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace grpvol {

namespace {

// Lexicographically least cyclic rotation of w or of w^-1.
Word cyclic_canonical(const Word& w) {
  Word best = w;
  for (const Word& base : {w, inverse(w)}) {
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
      if (rot < best) best = std::move(rot);
    }
  }
  return best;
}

struct State {
  std::vector<std::string> names;
  std::vector<Word> rels;

  int deficiency() const { return static_cast<int>(names.size()) - static_cast<int>(rels.size()); }

  std::size_t total_length() const {
    std::size_t n = 0;
    for (const auto& r : rels) n += r.size();
    return n;
  }

  void normalize() {
    std::vector<Word> kept;
    for (auto& r : rels) {
      Word c = cyclic_reduce(r);
      if (!c.empty()) kept.push_back(std::move(c));
    }
    rels = std::move(kept);
  }

  std::vector<std::size_t> relator_order() const {
    std::vector<std::size_t> order(rels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rels[a].size() < rels[b].size(); });
    return order;
  }

  bool remove_duplicate() {
    std::vector<Word> canon;
    canon.reserve(rels.size());
    for (const auto& r : rels) canon.push_back(cyclic_canonical(r));
    for (std::size_t j : relator_order()) {
      for (std::size_t i = 0; i < rels.size(); ++i) {
        if (i != j && canon[i] == canon[j] && (rels[i].size() < rels[j].size() || i < j)) {
          rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(j));
          return true;
        }
      }
    }
    return false;
  }

  bool eliminate_generator(std::size_t length_cap) {
    for (std::size_t ri : relator_order()) {
      const Word& r = rels[ri];
      std::vector<int> count(names.size(), 0);
      for (const Letter& l : r) ++count[static_cast<std::size_t>(l.gen)];
      for (std::size_t g = 0; g < names.size(); ++g) {
        if (count[g] != 1) continue;
        auto pos = std::find_if(r.begin(), r.end(), [&](const Letter& l) {
          return l.gen == static_cast<int>(g);
        });
        // r ~ x^e v u  =>  x^e = (v u)^-1
        Word vu(pos + 1, r.end());
        vu.insert(vu.end(), r.begin(), pos);
        Word value = inverse(vu);
        if (pos->exp < 0) value = inverse(value);
        std::vector<Word> next;
        std::size_t total = 0;
        for (std::size_t k = 0; k < rels.size(); ++k) {
          if (k == ri) continue;
          Word sub;
          for (const Letter& l : rels[k]) {
            if (l.gen == static_cast<int>(g)) {
              if (l.exp > 0) {
                sub.insert(sub.end(), value.begin(), value.end());
              } else {
                Word inv = inverse(value);
                sub.insert(sub.end(), inv.begin(), inv.end());
              }
            } else {
              sub.push_back(l);
            }
          }
          sub = cyclic_reduce(sub);
          total += sub.size();
          next.push_back(std::move(sub));
        }
        if (total > length_cap) continue;
        for (auto& w : next) {
          for (auto& l : w) {
            if (l.gen > static_cast<int>(g)) --l.gen;
          }
        }
        names.erase(names.begin() + static_cast<std::ptrdiff_t>(g));
        rels = std::move(next);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

TietzeResult tietze_trace(const Presentation& p, int budget) {
  State s{p.generators(), p.relators()};
  int best = s.deficiency();
  s.normalize();
  best = std::max(best, s.deficiency());
  const std::size_t cap = 4 * s.total_length() + 64;
  int moves = 0;
  while (moves < budget) {
    bool moved = s.remove_duplicate();
    if (!moved) moved = s.eliminate_generator(cap);
    if (!moved) break;
    ++moves;
    s.normalize();
    best = std::max(best, s.deficiency());
  }
  return {Presentation(std::move(s.names), std::move(s.rels)), best, moves};
}

Presentation tietze_simplify(const Presentation& p, int budget) {
  return tietze_trace(p, budget).presentation;
}

}  // namespace grpvol
