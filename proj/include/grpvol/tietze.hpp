#pragma once

#include "grpvol/presentation.hpp"

namespace grpvol {

struct TietzeResult {
  Presentation presentation;
  /// max over every presentation visited of (#gens - #rels).
  int best_deficiency = 0;
  int moves_used = 0;
};

/// Deterministic Tietze simplification with a fixed sound move set:
///   1. drop a relator equal (up to cyclic permutation and inversion)
///      to an earlier one;
///   2. eliminate a generator occurring exactly once in a cyclically
///      reduced relator, substituting its solution everywhere.
/// Candidates are tried shortest relator first, then lowest generator id.
/// Each move costs one unit of `budget`. Output relators are cyclically
/// reduced. Eliminations that would push the total relator length past
/// 4x the input length (plus 64) are skipped.
TietzeResult tietze_trace(const Presentation& p, int budget);

Presentation tietze_simplify(const Presentation& p, int budget);

}  // namespace grpvol
