#include "grpvol/subgroups.hpp"

#include <algorithm>
#include <deque>

#include "grpvol/errors.hpp"

namespace grpvol {

SubgroupFilter parse_subgroup_filter(const std::string& text) {
  if (text == "all") return SubgroupFilter::all;
  if (text == "conjugacy") return SubgroupFilter::conjugacy_reps;
  if (text == "normal") return SubgroupFilter::normal;
  throw InvalidInput("unknown filter '" + text + "' (expected all, conjugacy or normal)");
}

int CosetTable::apply(int coset, Letter l) const {
  const auto& perm = action[static_cast<std::size_t>(l.gen)];
  if (l.exp > 0) return perm[static_cast<std::size_t>(coset)];
  for (int c = 0; c < index; ++c) {
    if (perm[static_cast<std::size_t>(c)] == coset) return c;
  }
  return -1;
}

int CosetTable::apply(int coset, const Word& w) const {
  for (const Letter& l : w) coset = apply(coset, l);
  return coset;
}

std::optional<TableViolation> validate_table(const CosetTable& t) {
  using K = TableViolation::Kind;
  const int gens = t.base ? t.base->generator_count() : static_cast<int>(t.action.size());
  if (t.index < 1 || static_cast<int>(t.action.size()) != gens) {
    return TableViolation{K::shape, "table shape does not match the presentation", -1, -1};
  }
  for (int g = 0; g < gens; ++g) {
    const auto& perm = t.action[static_cast<std::size_t>(g)];
    if (static_cast<int>(perm.size()) != t.index) {
      return TableViolation{K::shape, "generator column has wrong length", -1, -1};
    }
    std::vector<char> hit(static_cast<std::size_t>(t.index), 0);
    for (int c = 0; c < t.index; ++c) {
      const int img = perm[static_cast<std::size_t>(c)];
      if (img < 0 || img >= t.index || hit[static_cast<std::size_t>(img)]) {
        return TableViolation{K::not_bijective, "generator " + std::to_string(g) + " is not a bijection", -1, c};
      }
      hit[static_cast<std::size_t>(img)] = 1;
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(t.index), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int g = 0; g < gens; ++g) {
      for (int e : {1, -1}) {
        const int n = t.apply(c, Letter{g, e});
        if (!seen[static_cast<std::size_t>(n)]) {
          seen[static_cast<std::size_t>(n)] = 1;
          queue.push_back(n);
        }
      }
    }
  }
  for (int c = 0; c < t.index; ++c) {
    if (!seen[static_cast<std::size_t>(c)]) {
      return TableViolation{K::unreachable_coset, "unreachable coset " + std::to_string(c), -1, c};
    }
  }
  if (t.base) {
    const auto& rels = t.base->relators();
    for (std::size_t r = 0; r < rels.size(); ++r) {
      for (int c = 0; c < t.index; ++c) {
        if (t.apply(c, rels[r]) != c) {
          return TableViolation{K::relator_nontrivial,
                                "relator " + format_word(rels[r], t.base->generators()) +
                                    " acts nontrivially on coset " + std::to_string(c),
                                static_cast<int>(r), c};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

class LowIndexSearch {
 public:
  LowIndexSearch(const Presentation& p, const EnumerationOptions& opt)
      : base_(std::make_shared<const Presentation>(p)),
        gens_(p.generator_count()),
        cols_(2 * p.generator_count()),
        max_(opt.max_index),
        budget_(opt.node_budget) {
    // all cyclic conjugates of relators and their inverses, bucketed by first letter
    by_first_.resize(static_cast<std::size_t>(cols_));
    for (const Word& r : p.relators()) {
      for (const Word& base : {r, inverse(r)}) {
        for (std::size_t k = 0; k < base.size(); ++k) {
          Word rot(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
          std::vector<int> cols;
          for (const Letter& l : rot) cols.push_back(l.column());
          by_first_[static_cast<std::size_t>(cols.front())].push_back(std::move(cols));
        }
      }
    }
    for (auto& bucket : by_first_) {
      std::sort(bucket.begin(), bucket.end());
      bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
    }
  }

  std::vector<CosetTable> run() {
    Table t;
    t.cosets = 1;
    t.entries.assign(static_cast<std::size_t>(max_ * cols_), -1);
    search(std::move(t));
    return std::move(found_);
  }

 private:
  struct Table {
    int cosets = 0;
    std::vector<int> entries;  // entries[c * cols + col]
  };

  static int inv_col(int col) { return col ^ 1; }
  int& at(Table& t, int c, int col) const { return t.entries[static_cast<std::size_t>(c * cols_ + col)]; }

  // Defines c.col = d and d.col^-1 = c, then processes deductions.
  bool define(Table& t, int c, int col, int d) const {
    std::vector<std::pair<int, int>> stack;
    if (!assign(t, c, col, d, stack)) return false;
    while (!stack.empty()) {
      auto [sc, scol] = stack.back();
      stack.pop_back();
      for (const auto& rel : by_first_[static_cast<std::size_t>(scol)]) {
        if (!scan(t, sc, rel, stack)) return false;
      }
    }
    return true;
  }

  bool assign(Table& t, int c, int col, int d, std::vector<std::pair<int, int>>& stack) const {
    int& fwd = at(t, c, col);
    int& bwd = at(t, d, inv_col(col));
    if (fwd == d && bwd == c) return true;
    if (fwd != -1 || bwd != -1) return false;
    fwd = d;
    bwd = c;
    stack.push_back({c, col});
    stack.push_back({d, inv_col(col)});
    return true;
  }

  // Scans relator `rel` from coset c; deduces a single missing entry.
  bool scan(Table& t, int c, const std::vector<int>& rel, std::vector<std::pair<int, int>>& stack) const {
    const int n = static_cast<int>(rel.size());
    int f = c;
    int i = 0;
    while (i < n) {
      const int next = at(t, f, rel[static_cast<std::size_t>(i)]);
      if (next < 0) break;
      f = next;
      ++i;
    }
    if (i == n) return f == c;
    int b = c;
    int j = n - 1;
    while (j >= i) {
      const int prev = at(t, b, inv_col(rel[static_cast<std::size_t>(j)]));
      if (prev < 0) break;
      b = prev;
      --j;
    }
    if (j < i) return f == b;
    if (j == i) return assign(t, f, rel[static_cast<std::size_t>(i)], b, stack);
    return true;
  }

  void search(Table t) {
    if (++nodes_ > budget_) {
      throw ResourceLimitError("subgroup enumeration exceeded the node budget of " +
                               std::to_string(budget_) + " nodes");
    }
    int fc = -1;
    int fcol = -1;
    for (int c = 0; c < t.cosets && fc < 0; ++c) {
      for (int col = 0; col < cols_; ++col) {
        if (at(t, c, col) < 0) {
          fc = c;
          fcol = col;
          break;
        }
      }
    }
    if (fc < 0) {
      emit(t);
      return;
    }
    for (int d = 0; d < t.cosets; ++d) {
      if (at(t, d, inv_col(fcol)) >= 0) continue;
      Table next = t;
      if (define(next, fc, fcol, d)) search(std::move(next));
    }
    if (t.cosets < max_) {
      Table next = t;
      const int d = next.cosets++;
      if (define(next, fc, fcol, d)) search(std::move(next));
    }
  }

  void emit(const Table& t) {
    CosetTable out;
    out.base = base_;
    out.index = t.cosets;
    out.action.assign(static_cast<std::size_t>(gens_), std::vector<int>(static_cast<std::size_t>(t.cosets)));
    for (int g = 0; g < gens_; ++g) {
      for (int c = 0; c < t.cosets; ++c) {
        out.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] =
            t.entries[static_cast<std::size_t>(c * cols_ + 2 * g)];
      }
    }
    found_.push_back(std::move(out));
  }

  std::shared_ptr<const Presentation> base_;
  int gens_;
  int cols_;
  int max_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  std::vector<std::vector<std::vector<int>>> by_first_;
  std::vector<CosetTable> found_;
};

bool table_less(const CosetTable& a, const CosetTable& b) {
  if (a.index != b.index) return a.index < b.index;
  return a.action < b.action;
}

}  // namespace

std::vector<CosetTable> enumerate_subgroups(const Presentation& p, const EnumerationOptions& options) {
  if (options.max_index < 1) throw PreconditionError("max_index must be at least 1");
  if (p.generator_count() < 1) throw PreconditionError("presentation needs at least one generator");
  if (options.node_budget < 1) throw PreconditionError("node budget must be positive");
  std::vector<CosetTable> tables = LowIndexSearch(p, options).run();
  std::sort(tables.begin(), tables.end(), table_less);
  if (options.filter != SubgroupFilter::all) {
    std::erase_if(tables, [&](const CosetTable& t) {
      return options.filter == SubgroupFilter::normal ? !is_normal(t) : !is_conjugacy_representative(t);
    });
  }
  return tables;
}

CosetTable standardize(const CosetTable& t, int root) {
  const int gens = static_cast<int>(t.action.size());
  std::vector<int> number(static_cast<std::size_t>(t.index), -1);
  std::vector<int> order;
  number[static_cast<std::size_t>(root)] = 0;
  order.push_back(root);
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int col = 0; col < 2 * gens; ++col) {
      const int n = t.apply(order[k], Letter::from_column(col));
      if (number[static_cast<std::size_t>(n)] < 0) {
        number[static_cast<std::size_t>(n)] = static_cast<int>(order.size());
        order.push_back(n);
      }
    }
  }
  CosetTable out;
  out.base = t.base;
  out.index = t.index;
  out.action.assign(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(t.index)));
  for (int g = 0; g < gens; ++g) {
    for (int c = 0; c < t.index; ++c) {
      out.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(number[static_cast<std::size_t>(c)])] =
          number[static_cast<std::size_t>(t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)])];
    }
  }
  return out;
}

bool is_normal(const CosetTable& t) {
  for (int c = 1; c < t.index; ++c) {
    if (!standardize(t, c).same_action(t)) return false;
  }
  return true;
}

bool is_conjugacy_representative(const CosetTable& t) {
  for (int c = 1; c < t.index; ++c) {
    if (standardize(t, c).action < t.action) return false;
  }
  return true;
}

SchreierData schreier_transversal(const CosetTable& t) {
  const int gens = static_cast<int>(t.action.size());
  SchreierData s;
  s.transversal.assign(static_cast<std::size_t>(t.index), Word{});
  s.is_tree.assign(static_cast<std::size_t>(gens), std::vector<char>(static_cast<std::size_t>(t.index), 0));
  std::vector<char> seen(static_cast<std::size_t>(t.index), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int g = 0; g < gens; ++g) {
      for (int e : {1, -1}) {
        const Letter l{g, e};
        const int n = t.apply(c, l);
        if (seen[static_cast<std::size_t>(n)]) continue;
        seen[static_cast<std::size_t>(n)] = 1;
        s.transversal[static_cast<std::size_t>(n)] = s.transversal[static_cast<std::size_t>(c)];
        s.transversal[static_cast<std::size_t>(n)].push_back(l);
        const TreeEdge edge = e > 0 ? TreeEdge{c, g, n} : TreeEdge{n, g, c};
        s.tree_edges.push_back(edge);
        s.is_tree[static_cast<std::size_t>(g)][static_cast<std::size_t>(edge.from)] = 1;
        queue.push_back(n);
      }
    }
  }
  return s;
}

Presentation reidemeister_schreier(const Presentation& p, const CosetTable& t) {
  const SchreierData s = schreier_transversal(t);
  const int gens = p.generator_count();
  // generator id for each non-tree edge (coset, gen), coset-major
  std::vector<std::vector<int>> edge_gen(static_cast<std::size_t>(t.index),
                                         std::vector<int>(static_cast<std::size_t>(gens), -1));
  std::vector<std::string> names;
  for (int c = 0; c < t.index; ++c) {
    for (int g = 0; g < gens; ++g) {
      if (s.is_tree[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)]) continue;
      edge_gen[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)] = static_cast<int>(names.size());
      names.push_back(p.generators()[static_cast<std::size_t>(g)] + "_" + std::to_string(c));
    }
  }
  std::vector<Word> rels;
  for (const Word& r : p.relators()) {
    for (int c0 = 0; c0 < t.index; ++c0) {
      Word w;
      int c = c0;
      for (const Letter& l : r) {
        if (l.exp > 0) {
          const int id = edge_gen[static_cast<std::size_t>(c)][static_cast<std::size_t>(l.gen)];
          if (id >= 0) w.push_back({id, 1});
          c = t.apply(c, l);
        } else {
          c = t.apply(c, l);
          const int id = edge_gen[static_cast<std::size_t>(c)][static_cast<std::size_t>(l.gen)];
          if (id >= 0) w.push_back({id, -1});
        }
      }
      rels.push_back(free_reduce(w));
    }
  }
  return Presentation(std::move(names), std::move(rels));
}

}  // namespace grpvol
