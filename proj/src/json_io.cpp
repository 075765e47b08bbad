#include "tracewick/json_io.hpp"

namespace tracewick {

std::string decimal_string(const BigInt& v) { return v.str(); }

std::string rational_string(const BigRational& v) {
  if (boost::multiprecision::denominator(v) == 1)
    return boost::multiprecision::numerator(v).str();
  return v.str();
}

Json rational_json(const BigRational& v) {
  Json j;
  j["exact"] = rational_string(v);
  j["approx"] = v.convert_to<double>();
  return j;
}

Json polynomial_json(const LaurentPolynomial& p) {
  Json coeffs = Json::object();
  for (const auto& [exponent, coefficient] : p.coefficients())
    coeffs[std::to_string(exponent)] = decimal_string(coefficient);
  Json j;
  j["pretty"] = p.pretty();
  j["coefficients"] = coeffs;
  return j;
}

Json pairing_json(const DecoratedPairing& phi) {
  Json pairs = Json::array();
  for (const auto& [first, second] : phi.pairs)
    pairs.push_back(Json::array(
        {Json::array({first.face, first.position}),
         Json::array({second.face, second.position})}));
  Json twists = Json::array();
  for (std::size_t i = 0; i < phi.twist.size(); ++i)
    twists.push_back(static_cast<bool>(phi.twist[i]));
  Json j;
  j["pairs"] = pairs;
  j["twists"] = twists;
  return j;
}

Json make_report(const std::string& command) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  return j;
}

}  // namespace tracewick
