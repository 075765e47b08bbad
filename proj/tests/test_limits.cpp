#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <vector>

#include "tracewick/limits.hpp"
#include "tracewick/rng.hpp"
#include "tracewick/topology.hpp"
#include "tracewick/word.hpp"

using namespace tracewick;

namespace {

Word w(const char* text) { return parse_word(text); }

}  // namespace

TEST_CASE("Fuss-Catalan numbers") {
  // s = 2 gives the Catalan numbers.
  int catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (int n = 0; n <= 6; ++n) CHECK(fuss_catalan(2, n) == catalan[n]);

  // The family is defined for s >= 2 (s = |w| + 1 with |w| >= 1).
  CHECK_THROWS_AS((void)fuss_catalan(1, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)fuss_catalan(0, 0), std::invalid_argument);

  CHECK(fuss_catalan(4, 1) == 1);
  CHECK(fuss_catalan(4, 2) == 4);
  CHECK(fuss_catalan(4, 3) == 22);
  CHECK(fuss_catalan(3, 3) == 12);
  CHECK(fuss_catalan(5, 2) == 5);
  CHECK(fuss_catalan(7, 0) == 1);
}

TEST_CASE("Fuss-Catalan convolution recurrence") {
  // The generating function F = 1 + x F^s gives
  // FC_s(n+1) = sum over s-compositions of n of prod FC_s(parts).
  for (int s = 2; s <= 5; ++s) {
    for (int n = 0; n <= 5; ++n) {
      BigInt expected = 0;
      std::vector<int> parts(static_cast<std::size_t>(s), 0);
      // Enumerate compositions of n into s nonnegative parts.
      std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == s - 1) {
          parts[static_cast<std::size_t>(pos)] = remaining;
          BigInt product = 1;
          for (int part : parts) product *= fuss_catalan(s, part);
          expected += product;
          return;
        }
        for (int v = 0; v <= remaining; ++v) {
          parts[static_cast<std::size_t>(pos)] = v;
          rec(pos + 1, remaining - v);
        }
      };
      rec(0, n);
      CHECK(fuss_catalan(s, n + 1) == expected);
    }
  }
}

TEST_CASE("FC moments of words") {
  // (1/N) E Tr((w w*)^k) -> FC_{|w|+1}(k), including repeated letters.
  CHECK(fc_moment_of_word(w("G1"), 1) == 1);
  CHECK(fc_moment_of_word(w("G1"), 3) == fuss_catalan(2, 3));
  CHECK(fc_moment_of_word(w("G1 G2"), 2) == 3);
  CHECK(fc_moment_of_word(w("G1 G2"), 3) == 12);
  CHECK(fc_moment_of_word(w("G1 G1"), 2) == fuss_catalan(3, 2));
  CHECK(fc_moment_of_word(w("G1 G2 G1"), 2) == fuss_catalan(4, 2));
  CHECK(fc_moment_of_word(w("G1 G2 G3"), 1) == 1);
  CHECK(fc_moment_of_word(w("G1 G2 G3"), 2) == 4);

  CHECK_THROWS_AS((void)fc_moment_of_word(w("G1*"), 1), NotStarFreeError);
  CHECK_THROWS_AS((void)fc_moment_of_word(w("H1"), 1), NotStarFreeError);
  CHECK_THROWS_AS((void)fc_moment_of_word(w("G1"), 13), TooLargeError);
}

TEST_CASE("CLT parameters: frozen cases") {
  CltParams gg = clt_params(w("G1 G2"));
  CHECK(gg.shift == 0);
  CHECK(gg.b == 1);
  CHECK(gg.c == 0);
  CHECK(gg.var_re() == BigRational(1, 2));
  CHECK(gg.var_im() == BigRational(1, 2));

  CltParams sq = clt_params(w("G1 G1"));
  CHECK(sq.shift == 0);
  CHECK(sq.b == 2);
  CHECK(sq.c == 0);
  CHECK(sq.var_re() == BigRational(1));
  CHECK(sq.var_im() == BigRational(1));

  // Tr(G G*) - N is asymptotically real Gaussian with variance 1.
  CltParams gram = clt_params(w("G1 G1*"));
  CHECK(gram.shift == 1);
  CHECK(gram.b == 1);
  CHECK(gram.c == 1);
  CHECK(gram.var_re() == BigRational(1));
  CHECK(gram.var_im() == BigRational(0));

  // Tr(H) is real: b = c = 1.
  CltParams gue = clt_params(w("H1"));
  CHECK(gue.shift == 0);
  CHECK(gue.b == 1);
  CHECK(gue.c == 1);
  CHECK(gue.var_im() == BigRational(0));
}

TEST_CASE("star-free coperiod law") {
  RngStream rng(71, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Word word;
    int len = 1 + static_cast<int>(rng.next_u32() % 5);
    for (int i = 0; i < len; ++i) {
      word.letters.push_back(
          Letter{Ensemble::GinibreComplex,
                 static_cast<int>(rng.next_u32() % 3) + 1, false, false});
    }
    CltParams params = clt_params(word);
    CHECK(params.shift == 0);
    CHECK(params.b == coperiod(word));
    CHECK(params.c == 0);
  }
}

TEST_CASE("star-stable words have vanishing imaginary variance") {
  // u u* is star-stable for every u, so b = c and var_im = 0.
  const char* stems[] = {"G1", "G1 G2", "G1 G1", "G1 G2 G3", "G1 H1"};
  for (const char* stem : stems) {
    Word word = concat(w(stem), star(w(stem)));
    REQUIRE(is_star_stable(word));
    CltParams params = clt_params(word);
    CHECK(params.b == params.c);
    CHECK(params.var_im() == BigRational(0));
  }
}

TEST_CASE("gram-word and product-word variance families") {
  // b(G^a G*^a) = a(a+1)(2a+1)/6.
  for (int a = 1; a <= 3; ++a) {
    Word word = concat(repeat(w("G1"), a), star(repeat(w("G1"), a)));
    CHECK(clt_params(word).b == a * (a + 1) * (2 * a + 1) / 6);
  }
  // b((G1..Ga)(G1..Ga)*) = a(a+1)/2.
  for (int a = 1; a <= 3; ++a) {
    Word stem;
    for (int r = 1; r <= a; ++r)
      stem.letters.push_back(Letter{Ensemble::GinibreComplex, r, false, false});
    Word word = concat(stem, star(stem));
    CHECK(clt_params(word).b == a * (a + 1) / 2);
  }
  // Unequal powers G^a G*^b, a <= b: the count follows
  //   b_w = a(a+1)(2a+1)/6 + (b - a)(a+1)^2,
  // which extends the equal-power formula (the b = a case) and DOES grow
  // with b. It coincides with the sum-of-squares value S2(a+1) exactly at
  // b = a + 1 and exceeds it by (b-a-1)(a+1)^2 beyond that; the value for
  // (a,b) = (1,3) is confirmed against the summation oracle and (2,4)
  // against Monte Carlo elsewhere, so this is a genuine property of the
  // ensemble, not an enumeration artifact.
  for (int a = 1; a <= 3; ++a) {
    for (int b = a; b <= 5; ++b) {
      Word word = concat(repeat(w("G1"), a), star(repeat(w("G1"), b)));
      BigInt expected = a * (a + 1) * (2 * a + 1) / 6 +
                        (b - a) * (a + 1) * (a + 1);
      CHECK(clt_params(word).b == expected);
    }
  }
}

TEST_CASE("mixed moment limits") {
  CHECK(mixed_moment_limit(MixedIndex{{1, 1}}) == 1);
  CHECK(mixed_moment_limit(MixedIndex{{2, 2}}) == 1);
  CHECK(mixed_moment_limit(MixedIndex{{1, 1, 1, 1}}) == 2);
  CHECK(mixed_moment_limit(MixedIndex{{2, 1}}) == 0);  // unbalanced
  CHECK(mixed_moment_limit(MixedIndex{{2, 1, 1, 2}}) ==
        mixed_moment_limit(MixedIndex{{1, 2, 2, 1}}));  // cyclic symmetry
}

TEST_CASE("word-substituted mixed moments match the scaled index") {
  struct Case {
    const char* word;
    std::vector<int> idx;
  };
  Case cases[] = {
      {"G1", {1, 1, 1, 1}},
      {"G1 G2", {1, 1}},
      {"G1 G2", {1, 2, 1, 1}},  // total letters 2*5 = 10
      {"G1 G1", {1, 1}},
      {"G1 G2 G3", {1, 1}},
  };
  for (const Case& c : cases) {
    MixedIndex idx{c.idx};
    Word word = w(c.word);
    MixedIndex scaled;
    for (int part : c.idx)
      scaled.parts.push_back(part * static_cast<int>(word.size()));
    CHECK(word_mixed_moment_limit(word, idx) == mixed_moment_limit(scaled));
  }
  CHECK_THROWS_AS((void)word_mixed_moment_limit(w("G1*"), MixedIndex{{1, 1}}),
                  NotStarFreeError);
}

TEST_CASE("joint trace covariances") {
  std::vector<BigInt> gg = joint_trace_covariance(w("G1 G2"), 3);
  CHECK(gg == std::vector<BigInt>{1, 2, 3});
  std::vector<BigInt> sq = joint_trace_covariance(w("G1 G1"), 3);
  CHECK(sq == std::vector<BigInt>{2, 4, 6});
  CHECK(joint_trace_covariance(w("G1"), 1) == std::vector<BigInt>{1});
  CHECK_THROWS_AS((void)joint_trace_covariance(w("G1 G1*"), 2),
                  NotStarFreeError);
}

TEST_CASE("linear statistic variances") {
  CHECK(linear_statistic_variance(w("G1"), {0.0, 1.0}) == doctest::Approx(2.0));
  CHECK(linear_statistic_variance(w("G1"), {1.0}) == doctest::Approx(1.0));
  CHECK(linear_statistic_variance(w("G1 G2"), {1.0, 1.0}) ==
        doctest::Approx(3.0));
  CHECK(linear_statistic_variance(w("G1 G1"), {1.0, 0.5}) ==
        doctest::Approx(2.0 * (1.0 + 2.0 * 0.25)));
  CHECK_THROWS_AS((void)linear_statistic_variance(w("G1*"), {1.0}),
                  NotStarFreeError);
}

TEST_CASE("independent-word factorization of the atom-free constant") {
  struct Pair {
    const char* w1;
    const char* w2;
  };
  Pair pairs[] = {
      {"G1", "G2"},
      {"G1 G2", "G1 G1"},
      {"G1 G2", "G3"},
      {"G1 G1", "G2 G2 G2"},
  };
  for (const Pair& p : pairs) {
    Word w1 = w(p.w1);
    Word w2 = w(p.w2);
    REQUIRE(trace_distinct(w1, w2));
    std::vector<Word> config = {w1, star(w1), w2, star(w2)};
    BigInt expected = clt_params(w1).b * clt_params(w2).b;
    CHECK(atom_free_expansion(config).coefficient(0) == expected);
  }
}
