#pragma once

#include <string>

#include <json.hpp>

#include "tracewick/laurent.hpp"
#include "tracewick/topology.hpp"

namespace tracewick {

// Reports keep insertion order so the emitted documents are stable.
using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

std::string decimal_string(const BigInt& v);

// "7/2" (or plain "7" when the denominator is 1).
std::string rational_string(const BigRational& v);

// {"exact": "13/2", "approx": 6.5}: the exact form is authoritative, the
// double is a convenience for plotting.
Json rational_json(const BigRational& v);

// {"pretty": "2N + 3N^-1", "coefficients": {"1": "2", "-1": "3"}}.
Json polynomial_json(const LaurentPolynomial& p);

// {"pairs": [[[face, pos], [face, pos]], ...], "twists": [...]}; faces are
// 0-based word-list indices, positions 1-based within the face.
Json pairing_json(const DecoratedPairing& phi);

// Report envelope: schema_version + command echo.
Json make_report(const std::string& command);

}  // namespace tracewick
