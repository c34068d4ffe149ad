#pragma once

// Finitely presented groups: free-group words, presentations, and the
// canonical text grammar
//
//   file := "gens:" name+ ";" "rels:" (word ("," word)*)? ";"
//   word := term+        term := name ("^" integer)?
//
// with '#' comments and insignificant whitespace.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grpvol {

/// One letter g^{±1} of a free-group word.
struct Letter {
  int gen = 0;
  int exp = 1;  // +1 or -1

  Letter inverse() const { return {gen, -exp}; }
  /// Column of this letter in a coset table: 2*gen for g, 2*gen+1 for g^-1.
  int column() const { return 2 * gen + (exp < 0 ? 1 : 0); }
  static Letter from_column(int col) { return {col / 2, (col % 2) ? -1 : 1}; }

  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Free reduction to the normal form in the free group.
Word free_reduce(std::span<const Letter> letters);

/// Free reduction followed by stripping x ... x^-1 wrap-arounds.
Word cyclic_reduce(std::span<const Letter> letters);

Word inverse(std::span<const Letter> w);

/// Concatenation followed by free reduction.
Word multiply(std::span<const Letter> a, std::span<const Letter> b);

/// Exponent sum of each generator in w.
std::vector<std::int64_t> exponent_sums(std::span<const Letter> w, int generator_count);

/// Generators plus freely reduced, non-empty relators.
class Presentation {
 public:
  Presentation() = default;

  /// Free-reduces relators and drops the ones that become empty.
  /// Throws InvalidInput on duplicate names, bad identifiers, or
  /// generator ids out of range.
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  int generator_count() const noexcept { return static_cast<int>(generators_.size()); }
  int relator_count() const noexcept { return static_cast<int>(relators_.size()); }

  std::optional<int> find_generator(std::string_view name) const;

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

Presentation parse_presentation(std::string_view text);

/// Parses a single word ("a^2 b^-1") over the generators of `p`.
/// An empty string is the identity.
Word parse_word(std::string_view text, const Presentation& p);

/// Canonical print form; parse_presentation(to_string(p)) == p.
std::string to_string(const Presentation& p);
std::string format_word(std::span<const Letter> w, const std::vector<std::string>& names);

/// #generators - #relators of this particular presentation.
int presentation_deficiency(const Presentation& p);

bool is_identifier(std::string_view name);

}  // namespace grpvol
