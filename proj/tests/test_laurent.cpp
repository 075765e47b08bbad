#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tracewick/laurent.hpp"

using namespace tracewick;

TEST_CASE("construction and coefficient access") {
  LaurentPolynomial p;
  CHECK(p.is_zero());
  CHECK(p.coefficient(0) == 0);
  CHECK(p.coefficient(5) == 0);

  p.add_term(1, 2);
  p.add_term(-1, 3);
  CHECK_FALSE(p.is_zero());
  CHECK(p.coefficient(1) == 2);
  CHECK(p.coefficient(-1) == 3);
  CHECK(p.coefficient(0) == 0);

  CHECK(LaurentPolynomial::term(2, 7).coefficient(2) == 7);
  CHECK(LaurentPolynomial::constant(4).coefficient(0) == 4);
  CHECK(LaurentPolynomial::constant(0).is_zero());
}

TEST_CASE("zero coefficients are erased") {
  LaurentPolynomial p;
  p.add_term(3, 5);
  p.add_term(3, -5);
  CHECK(p.is_zero());
  CHECK(p.coefficients().empty());
  CHECK(p == LaurentPolynomial());
}

TEST_CASE("arithmetic") {
  LaurentPolynomial a = LaurentPolynomial::term(1, 2);   // 2N
  LaurentPolynomial b = LaurentPolynomial::term(-1, 1);  // N^-1
  LaurentPolynomial sum = a + b;
  CHECK(sum.coefficient(1) == 2);
  CHECK(sum.coefficient(-1) == 1);

  LaurentPolynomial prod = sum * sum;  // 4N^2 + 4 + N^-2
  CHECK(prod.coefficient(2) == 4);
  CHECK(prod.coefficient(0) == 4);
  CHECK(prod.coefficient(-2) == 1);

  CHECK((sum - sum).is_zero());
  CHECK((a * LaurentPolynomial()).is_zero());

  LaurentPolynomial acc;
  acc += a;
  acc -= b;
  CHECK(acc.coefficient(1) == 2);
  CHECK(acc.coefficient(-1) == -1);
}

TEST_CASE("evaluation is exact, including negative exponents") {
  LaurentPolynomial p;  // 2N + 5 + 5N^-1
  p.add_term(1, 2);
  p.add_term(0, 5);
  p.add_term(-1, 5);
  CHECK(p.evaluate(1) == BigRational(12));
  CHECK(p.evaluate(2) == BigRational(23, 2));
  CHECK(p.evaluate(10) == BigRational(51, 2));

  // Large values stay exact through the big-integer path.
  LaurentPolynomial big = LaurentPolynomial::term(12, 1);
  CHECK(big.evaluate(10) == BigRational(BigInt("1000000000000")));

  CHECK(LaurentPolynomial().evaluate(7) == BigRational(0));
}

TEST_CASE("pretty printing") {
  CHECK(LaurentPolynomial().pretty() == "0");
  CHECK(LaurentPolynomial::constant(3).pretty() == "3");
  CHECK(LaurentPolynomial::term(1, 1).pretty() == "N");

  LaurentPolynomial p;
  p.add_term(1, 2);
  p.add_term(-1, 3);
  CHECK(p.pretty() == "2N + 3N^-1");

  LaurentPolynomial q;
  q.add_term(2, 1);
  q.add_term(0, -4);
  CHECK(q.pretty() == "N^2 - 4");
}

TEST_CASE("equality is structural") {
  LaurentPolynomial p = LaurentPolynomial::term(1, 2);
  LaurentPolynomial q;
  q.add_term(1, 1);
  q.add_term(1, 1);
  CHECK(p == q);
  q.add_term(0, 1);
  CHECK(p != q);
}
