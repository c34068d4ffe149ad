#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grpvol/presentation.hpp"

namespace grpvol {

/// Right action of the generators on the cosets of a finite-index
/// subgroup. Coset 0 is the subgroup itself.
struct CosetTable {
  std::shared_ptr<const Presentation> base;
  int index = 1;
  /// action[g][c] = c . g
  std::vector<std::vector<int>> action;

  /// Image of coset c under one letter.
  int apply(int coset, Letter l) const;
  int apply(int coset, const Word& w) const;

  /// Same action (the base presentation is not compared).
  bool same_action(const CosetTable& other) const { return index == other.index && action == other.action; }
};

struct TableViolation {
  enum class Kind { shape, not_bijective, unreachable_coset, relator_nontrivial };
  Kind kind;
  std::string message;
  int relator = -1;
  int coset = -1;
};

/// Checks shape, bijectivity, transitivity and that every relator acts
/// trivially on every coset. Returns the first violation found.
std::optional<TableViolation> validate_table(const CosetTable& t);

enum class SubgroupFilter {
  all,              // every subgroup of index <= N
  conjugacy_reps,   // one per conjugacy class
  normal,           // normal subgroups only
};

/// "all", "conjugacy" or "normal".
SubgroupFilter parse_subgroup_filter(const std::string& text);

struct EnumerationOptions {
  int max_index = 1;
  std::int64_t node_budget = 10'000'000;
  SubgroupFilter filter = SubgroupFilter::all;
};

/// Low-index subgroup enumeration by coset-table backtracking. Tables are
/// in standard form (cosets numbered in order of first appearance when
/// scanning rows, columns g0, g0^-1, g1, ...), sorted by (index, action).
/// Throws ResourceLimitError when the node budget runs out.
std::vector<CosetTable> enumerate_subgroups(const Presentation& p, const EnumerationOptions& options);

/// Renumbers the cosets of `t` so that `root` becomes coset 0, in standard
/// form. standardize(t, c) is the table of the conjugate subgroup.
CosetTable standardize(const CosetTable& t, int root);

bool is_normal(const CosetTable& t);
bool is_conjugacy_representative(const CosetTable& t);

struct TreeEdge {
  int from = 0;
  int gen = 0;
  int to = 0;  // from . gen == to
  bool operator==(const TreeEdge&) const = default;
};

struct SchreierData {
  std::vector<Word> transversal;
  std::vector<TreeEdge> tree_edges;
  /// is_tree[g][c]: edge c --g--> c.g belongs to the spanning tree.
  std::vector<std::vector<char>> is_tree;
};

/// Breadth-first spanning tree; lower generator first, g before g^-1.
SchreierData schreier_transversal(const CosetTable& t);

/// Presentation of the subgroup on the d*(g-1)+1 non-tree Schreier
/// generators, named "<gen>_<coset>", with every parent relator rewritten
/// at every coset (d*r relators, freely reduced, not cyclically permuted).
Presentation reidemeister_schreier(const Presentation& p, const CosetTable& t);

}  // namespace grpvol
