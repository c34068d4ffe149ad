#include "grpvol/presentation.hpp"

#include <cctype>
#include <charconv>
#include <set>

#include "grpvol/errors.hpp"

namespace grpvol {

Word free_reduce(std::span<const Letter> letters) {
  Word out;
  out.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word cyclic_reduce(std::span<const Letter> letters) {
  Word w = free_reduce(letters);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + static_cast<std::ptrdiff_t>(lo),
              w.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word multiply(std::span<const Letter> a, std::span<const Letter> b) {
  Word cat(a.begin(), a.end());
  cat.insert(cat.end(), b.begin(), b.end());
  return free_reduce(cat);
}

std::vector<std::int64_t> exponent_sums(std::span<const Letter> w, int generator_count) {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(generator_count), 0);
  for (const Letter& l : w) sums[static_cast<std::size_t>(l.gen)] += l.exp;
  return sums;
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

Presentation::Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
    : generators_(std::move(generator_names)) {
  std::set<std::string, std::less<>> seen;
  for (const auto& name : generators_) {
    if (!is_identifier(name)) throw InvalidInput("invalid generator name '" + name + "'");
    if (!seen.insert(name).second) throw InvalidInput("duplicate generator name '" + name + "'");
  }
  for (auto& r : relators) {
    for (const Letter& l : r) {
      if (l.gen < 0 || l.gen >= generator_count() || (l.exp != 1 && l.exp != -1)) {
        throw InvalidInput("relator refers to an invalid letter");
      }
    }
    Word reduced = free_reduce(r);
    if (!reduced.empty()) relators_.push_back(std::move(reduced));
  }
}

std::optional<int> Presentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

int presentation_deficiency(const Presentation& p) {
  return p.generator_count() - p.relator_count();
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool peek_identifier() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  }

  std::string identifier() {
    skip_space();
    if (!peek_identifier()) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  void keyword(std::string_view kw) {
    int l = line_;
    int c = col_;
    std::string id = at_end() ? std::string() : (peek_identifier() ? identifier() : std::string());
    if (id != kw) throw ParseError("expected '" + std::string(kw) + ":'", l, c);
    expect(':');
  }

  long long integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance();
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    if (pos_ == digits) fail("expected integer exponent");
    std::string_view tok = text_.substr(start, pos_ - start);
    if (tok.front() == '+') tok.remove_prefix(1);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || v > 1'000'000 || v < -1'000'000) fail("exponent out of range");
    return v;
  }

  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    throw ParseError("syntax error: " + message, line_, col_);
  }

  int line() {
    skip_space();
    return line_;
  }
  int column() {
    skip_space();
    return col_;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// word := term+ ; stops at ',' or ';' (or end, for standalone words)
Word parse_terms(Lexer& lex, const std::vector<std::string>& names) {
  Word w;
  while (lex.peek_identifier()) {
    int l = lex.line();
    int c = lex.column();
    std::string name = lex.identifier();
    int gen = -1;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) gen = static_cast<int>(i);
    }
    if (gen < 0) throw ParseError("unknown generator '" + name + "' in relator", l, c);
    long long e = 1;
    if (lex.peek() == '^') {
      lex.expect('^');
      e = lex.integer();
    }
    const int sign = e < 0 ? -1 : 1;
    for (long long k = 0; k < (e < 0 ? -e : e); ++k) w.push_back({gen, sign});
  }
  return w;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Lexer lex(text);
  lex.keyword("gens");
  std::vector<std::string> names;
  while (lex.peek_identifier()) {
    int l = lex.line();
    int c = lex.column();
    std::string name = lex.identifier();
    for (const auto& n : names) {
      if (n == name) throw ParseError("duplicate generator name '" + name + "'", l, c);
    }
    names.push_back(std::move(name));
  }
  if (names.empty()) lex.fail("expected at least one generator");
  lex.expect(';');
  lex.keyword("rels");
  std::vector<Word> rels;
  if (lex.peek() != ';') {
    for (;;) {
      if (!lex.peek_identifier()) lex.fail("expected relator");
      rels.push_back(parse_terms(lex, names));
      if (lex.peek() == ',') {
        lex.expect(',');
        continue;
      }
      break;
    }
  }
  lex.expect(';');
  if (!lex.at_end()) lex.fail("trailing input");
  return Presentation(std::move(names), std::move(rels));
}

Word parse_word(std::string_view text, const Presentation& p) {
  Lexer lex(text);
  Word w = parse_terms(lex, p.generators());
  if (!lex.at_end()) lex.fail("unexpected character in word");
  return free_reduce(w);
}

std::string format_word(std::span<const Letter> w, const std::vector<std::string>& names) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const long long e = static_cast<long long>(j - i) * w[i].exp;
    if (!out.empty()) out += ' ';
    out += names[static_cast<std::size_t>(w[i].gen)];
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

std::string to_string(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& n : p.generators()) out += " " + n;
  out += "; rels:";
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    out += (i == 0 ? " " : ", ");
    out += format_word(p.relators()[i], p.generators());
  }
  out += ";";
  return out;
}

}  // namespace grpvol
