// Words over the four Gaussian matrix ensembles: representation, parsing,
// and the string combinatorics (star, coperiod, cyclic canonical form) that
// the limit laws depend on.
#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tracewick {

enum class Ensemble : unsigned char { GinibreComplex, GinibreReal, GUE, GOE };

char ensemble_symbol(Ensemble e);
const char* ensemble_name(Ensemble e);

// One letter of a word: an ensemble, a matrix index (the r of G_r), and the
// transpose/conjugate flags. The conjugate transpose "*" is stored as both
// flags set. Letters are kept normalized:
//   GUE:  H^t == conj(H) since H is Hermitian, so transposed is folded into
//         conjugated and cleared;
//   GOE:  S is real symmetric, both flags cleared;
//   real Ginibre: entries are real, conjugated cleared (transposed kept).
struct Letter {
  Ensemble ensemble = Ensemble::GinibreComplex;
  int index = 1;
  bool transposed = false;
  bool conjugated = false;

  auto operator<=>(const Letter&) const = default;
};

// Applies the per-ensemble flag rewrites above.
Letter normalized(Letter l);

struct Word {
  std::vector<Letter> letters;

  bool operator==(const Word&) const = default;
  std::size_t size() const { return letters.size(); }
};

struct SyntaxError : std::runtime_error {
  std::size_t position;  // byte offset into the parsed text
  std::string expected;
  SyntaxError(std::size_t pos, std::string expected_token);
};

struct EmptyWordError : std::runtime_error {
  EmptyWordError();
};

// Grammar (whitespace ignored between tokens):
//   word := term+ ; term := atom ("^" integer)? ; atom := letter | "(" word ")"
//   letter := ("G"|"R"|"H"|"S") integer modifier* ; modifier := "*" | "t" | "~"
// "~" is entrywise conjugation, "t" transpose, "*" conjugate transpose;
// modifiers compose left to right, then Letter normalization applies.
// Powers and parentheses are expanded. Throws SyntaxError on malformed input
// and EmptyWordError if the expansion has no letters (e.g. "(G1)^0").
Word parse_word(std::string_view text);

// Inverse printer: parse_word(render(w)) == w.
std::string render(const Word& w);
std::string render(const Letter& l);

// Reverse the word and conjugate-transpose every letter.
Word star(const Word& w);

// Largest k such that w = u^k for some word u.
int coperiod(const Word& w);

// Lexicographically least rotation; rotation-invariant and idempotent.
Word cyclic_canonical(const Word& w);

// True when w1 and w2 are not equal up to cyclic permutation, i.e. their
// traces are genuinely different functionals.
bool trace_distinct(const Word& w1, const Word& w2);

// Every letter is a plain complex Ginibre G_r (no flags).
bool is_star_free(const Word& w);

// For every complex-Ginibre index the conjugated and non-conjugated counts
// agree, and every real/GUE/GOE index occurs an even number of times: the
// necessary and sufficient condition for an admissible pairing to exist.
bool is_balanced(const Word& w);

// w equals star(w) up to cyclic permutation.
bool is_star_stable(const Word& w);

Word concat(const Word& a, const Word& b);
Word repeat(const Word& w, int k);

}  // namespace tracewick
