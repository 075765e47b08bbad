// Exact Laurent polynomials in the matrix dimension N: arbitrary-precision
// integer coefficients, integer exponents of either sign.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>

namespace tracewick {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  static LaurentPolynomial term(int exponent, BigInt coefficient);
  static LaurentPolynomial constant(BigInt value);

  void add_term(int exponent, const BigInt& coefficient);

  const BigInt& coefficient(int exponent) const;  // 0 if absent
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, BigInt>& coefficients() const { return coeffs_; }

  // Exact value at a positive integer N (negative exponents give rationals).
  BigRational evaluate(long N) const;

  // "2N + 3N^-1" style; "0" for the zero polynomial.
  std::string pretty() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator-=(const LaurentPolynomial& rhs);
  friend LaurentPolynomial operator+(LaurentPolynomial a,
                                     const LaurentPolynomial& b);
  friend LaurentPolynomial operator-(LaurentPolynomial a,
                                     const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(const LaurentPolynomial& a,
                                     const LaurentPolynomial& b);
  bool operator==(const LaurentPolynomial&) const = default;

 private:
  std::map<int, BigInt> coeffs_;  // exponent -> coefficient, zeros erased
};

}  // namespace tracewick
