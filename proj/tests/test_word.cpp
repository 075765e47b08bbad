#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "tracewick/rng.hpp"
#include "tracewick/word.hpp"

using namespace tracewick;

namespace {

Word w(const char* text) { return parse_word(text); }

// Uniform random word over the grammar's letter space, for property tests.
Word random_word(RngStream& rng, int length, int max_index, bool star_free) {
  Word out;
  for (int i = 0; i < length; ++i) {
    Letter l;
    l.index = static_cast<int>(rng.next_u32() % max_index) + 1;
    if (!star_free) {
      switch (rng.next_u32() % 4) {
        case 0: l.ensemble = Ensemble::GinibreComplex; break;
        case 1: l.ensemble = Ensemble::GinibreReal; break;
        case 2: l.ensemble = Ensemble::GUE; break;
        default: l.ensemble = Ensemble::GOE; break;
      }
      l.transposed = rng.next_u32() % 2 != 0;
      l.conjugated = rng.next_u32() % 2 != 0;
    }
    out.letters.push_back(normalized(l));
  }
  return out;
}

}  // namespace

TEST_CASE("parsing basics") {
  Word g = w("G1 G2");
  REQUIRE(g.size() == 2);
  CHECK(g.letters[0] == Letter{Ensemble::GinibreComplex, 1, false, false});
  CHECK(g.letters[1] == Letter{Ensemble::GinibreComplex, 2, false, false});

  CHECK(w("G3*").letters[0] == Letter{Ensemble::GinibreComplex, 3, true, true});
  CHECK(w("G3t").letters[0] == Letter{Ensemble::GinibreComplex, 3, true, false});
  CHECK(w("G3~").letters[0] == Letter{Ensemble::GinibreComplex, 3, false, true});
  CHECK(w("G3t~") == w("G3*"));
  CHECK(w("G3~t") == w("G3*"));
  CHECK(w("G3**") == w("G3"));  // adjoint twice cancels

  // Whitespace is free between tokens.
  CHECK(w("  G1G2  ") == w("G1 G2"));
  CHECK(w("G12") == Word{{Letter{Ensemble::GinibreComplex, 12, false, false}}});
}

TEST_CASE("letter normalization per ensemble") {
  // GUE: transpose equals entrywise conjugation (Hermitian).
  CHECK(w("H1t") == w("H1~"));
  CHECK(w("H1*") == w("H1"));
  // GOE: real symmetric, all modifiers vanish.
  CHECK(w("S1t") == w("S1"));
  CHECK(w("S1*") == w("S1"));
  CHECK(w("S1~") == w("S1"));
  // Real Ginibre: conjugation vanishes, transpose survives.
  CHECK(w("R1~") == w("R1"));
  CHECK(w("R1*") == w("R1t"));
  CHECK(w("R1t") != w("R1"));
}

TEST_CASE("powers and parentheses") {
  CHECK(w("G1^3") == w("G1 G1 G1"));
  CHECK(w("(G1 G2)^2") == w("G1 G2 G1 G2"));
  CHECK(w("(G1 (G2)^2)^2") == w("G1 G2 G2 G1 G2 G2"));
  // Modifiers bind letters only, never groups.
  CHECK_THROWS_AS((void)parse_word("(G1 G2)*"), SyntaxError);
  CHECK_THROWS_AS((void)parse_word("G1 t"), SyntaxError);
  CHECK_THROWS_AS((void)parse_word("(G1)^0"), EmptyWordError);
  // Nothing to parse at all is a syntax error (a letter was expected), not an
  // empty expansion.
  CHECK_THROWS_AS((void)parse_word(""), SyntaxError);
  CHECK_THROWS_AS((void)parse_word("   "), SyntaxError);
}

TEST_CASE("syntax errors carry byte positions") {
  try {
    (void)parse_word("G1 ?");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 3);
    CHECK(e.expected == "letter (G, R, H or S)");
  }
  try {
    (void)parse_word("G");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 1);
  }
  CHECK_THROWS_AS((void)parse_word("G0"), SyntaxError);   // index must be >= 1
  CHECK_THROWS_AS((void)parse_word("(G1"), SyntaxError);  // unclosed paren
  CHECK_THROWS_AS((void)parse_word("G1^"), SyntaxError);
}

TEST_CASE("render round-trips") {
  const char* cases[] = {"G1",         "G1 G2 G1* G2~", "R1t R1",
                         "H3 H3",      "S1 S1 S2 S2",   "G1^4",
                         "(G1 G2)^3",  "G2* G1t G1~"};
  for (const char* text : cases) {
    Word parsed = w(text);
    CHECK(parse_word(render(parsed)) == parsed);
  }
  RngStream rng(2024, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    Word word = random_word(rng, 1 + static_cast<int>(rng.next_u32() % 8), 3,
                            false);
    CHECK(parse_word(render(word)) == word);
  }
}

TEST_CASE("star is an involution and reverses") {
  CHECK(star(w("G1 G2")) == w("G2* G1*"));
  CHECK(star(w("G1*")) == w("G1"));
  CHECK(star(w("R1")) == w("R1t"));
  CHECK(star(w("H1 S1")) == w("S1 H1"));
  RngStream rng(7, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Word word = random_word(rng, 1 + static_cast<int>(rng.next_u32() % 9), 4,
                            false);
    CHECK(star(star(word)) == word);
  }
}

TEST_CASE("coperiod") {
  CHECK(coperiod(w("G1")) == 1);
  CHECK(coperiod(w("G1 G2")) == 1);
  CHECK(coperiod(w("G1 G1")) == 2);
  CHECK(coperiod(w("G1 G2 G1")) == 1);
  CHECK(coperiod(w("(G1 G2)^3")) == 3);
  CHECK(coperiod(w("G1 G1* G1 G1*")) == 2);
  // coperiod(w^k) = k * coperiod(w).
  RngStream rng(11, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Word word = random_word(rng, 1 + static_cast<int>(rng.next_u32() % 5), 2,
                            false);
    int base = coperiod(word);
    for (int k = 1; k <= 4; ++k) {
      CHECK(coperiod(repeat(word, k)) == k * base);
    }
  }
}

TEST_CASE("cyclic canonical form") {
  Word word = w("G2 G1 G3");
  Word canon = cyclic_canonical(word);
  // Invariant under every rotation, and idempotent.
  for (std::size_t r = 0; r < word.size(); ++r) {
    Word rotated;
    for (std::size_t i = 0; i < word.size(); ++i) {
      rotated.letters.push_back(word.letters[(i + r) % word.size()]);
    }
    CHECK(cyclic_canonical(rotated) == canon);
  }
  CHECK(cyclic_canonical(canon) == canon);
}

TEST_CASE("trace distinctness") {
  CHECK_FALSE(trace_distinct(w("G1 G2"), w("G2 G1")));
  CHECK_FALSE(trace_distinct(w("G1"), w("G1")));
  CHECK(trace_distinct(w("G1"), w("G2")));
  CHECK(trace_distinct(w("G1 G2"), w("G1 G2 G1")));
  CHECK(trace_distinct(w("G1 G2"), w("G1 G2*")));
  CHECK_FALSE(trace_distinct(w("G1 G2 G3"), w("G3 G1 G2")));
}

TEST_CASE("star-free, balanced, star-stable predicates") {
  CHECK(is_star_free(w("G1 G2 G1")));
  CHECK_FALSE(is_star_free(w("G1*")));
  CHECK_FALSE(is_star_free(w("G1t")));
  CHECK_FALSE(is_star_free(w("G1~")));
  CHECK_FALSE(is_star_free(w("H1")));
  CHECK_FALSE(is_star_free(w("R1")));

  CHECK(is_balanced(w("G1 G1*")));
  CHECK(is_balanced(w("G1 G2 G1~ G2~")));
  CHECK_FALSE(is_balanced(w("G1")));
  CHECK_FALSE(is_balanced(w("G1 G1")));
  CHECK(is_balanced(w("H1 H1")));
  CHECK_FALSE(is_balanced(w("H1")));
  CHECK(is_balanced(w("S1 S1 S2 S2")));
  CHECK(is_balanced(w("R1 R1t")));
  CHECK(is_balanced(w("R1 R1")));
  CHECK_FALSE(is_balanced(w("R1 R2")));
  // Conjugation parity is what balances a complex index; the transpose flag
  // is free (G2~ pairs with a plain G2 just as G2* does).
  CHECK(is_balanced(w("G1 G1* G2 G2~")));
  CHECK_FALSE(is_balanced(w("G1 G1* G2~ G2*")));
  CHECK(is_balanced(w("G2 G2* G2 G2~")));

  CHECK(is_star_stable(w("G1 G1*")));
  CHECK(is_star_stable(w("G1 G2 G2* G1*")));
  CHECK_FALSE(is_star_stable(w("G1 G2")));
  CHECK(is_star_stable(w("H1")));
  CHECK(is_star_stable(w("G1 G1* G2")) == false);
  // Star-stability is a cyclic-class property.
  CHECK(is_star_stable(w("G1* G1")));
}

TEST_CASE("concat and repeat") {
  CHECK(concat(w("G1"), w("G2 G3")) == w("G1 G2 G3"));
  CHECK(repeat(w("G1 G2"), 3) == w("(G1 G2)^3"));
  CHECK(repeat(w("G1"), 1) == w("G1"));
}

TEST_CASE("ensemble symbols") {
  CHECK(ensemble_symbol(Ensemble::GinibreComplex) == 'G');
  CHECK(ensemble_symbol(Ensemble::GinibreReal) == 'R');
  CHECK(ensemble_symbol(Ensemble::GUE) == 'H');
  CHECK(ensemble_symbol(Ensemble::GOE) == 'S');
  CHECK(std::string(ensemble_name(Ensemble::GUE)) != "");
}
