#include "tracewick/laurent.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace tracewick {

LaurentPolynomial LaurentPolynomial::term(int exponent, BigInt coefficient) {
  LaurentPolynomial p;
  p.add_term(exponent, coefficient);
  return p;
}

LaurentPolynomial LaurentPolynomial::constant(BigInt value) {
  return term(0, std::move(value));
}

void LaurentPolynomial::add_term(int exponent, const BigInt& coefficient) {
  if (coefficient == 0) return;
  auto it = coeffs_.find(exponent);
  if (it == coeffs_.end()) {
    coeffs_.emplace(exponent, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second == 0) coeffs_.erase(it);
}

const BigInt& LaurentPolynomial::coefficient(int exponent) const {
  static const BigInt zero = 0;
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? zero : it->second;
}

BigRational LaurentPolynomial::evaluate(long N) const {
  BigRational result = 0;
  for (const auto& [exp, coeff] : coeffs_) {
    BigInt power = boost::multiprecision::pow(
        BigInt(N), static_cast<unsigned>(exp < 0 ? -exp : exp));
    if (exp >= 0)
      result += BigRational(coeff * power);
    else
      result += BigRational(coeff, power);
  }
  return result;
}

std::string LaurentPolynomial::pretty() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  // Highest exponent first.
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [exp, coeff] = *it;
    const bool negative = coeff < 0;
    BigInt mag = negative ? BigInt(-coeff) : coeff;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1 || exp == 0) out += mag.str();
    if (exp != 0) {
      out += 'N';
      if (exp != 1) out += '^' + std::to_string(exp);
    }
  }
  return out;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& rhs) {
  for (const auto& [exp, coeff] : rhs.coeffs_) add_term(exp, coeff);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& rhs) {
  for (const auto& [exp, coeff] : rhs.coeffs_) add_term(exp, -coeff);
  return *this;
}

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
  a += b;
  return a;
}

LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
  a -= b;
  return a;
}

LaurentPolynomial operator*(const LaurentPolynomial& a,
                            const LaurentPolynomial& b) {
  LaurentPolynomial out;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) out.add_term(ea + eb, ca * cb);
  return out;
}

}  // namespace tracewick
