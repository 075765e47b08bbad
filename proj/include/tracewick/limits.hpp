// Closed-form limit laws: Fuss-Catalan moments, CLT parameters, mixed-moment
// limits, joint trace covariances, and linear-statistics variances.
#pragma once

#include <stdexcept>
#include <vector>

#include "tracewick/laurent.hpp"
#include "tracewick/topology.hpp"
#include "tracewick/word.hpp"

namespace tracewick {

struct NotStarFreeError : std::runtime_error {
  NotStarFreeError() : std::runtime_error("word is not star-free") {}
};

// Limit-law parameters of the centered trace: Tr - shift*N has limiting
// covariance diag((b+c)/2, (b-c)/2) in (Re, Im).
struct CltParams {
  BigInt shift;  // a + p: the N-coefficient and constant of the atom series
  BigInt b;      // spherical count over (w, star(w))
  BigInt c;      // spherical count over (w, w)

  BigRational var_re() const { return BigRational(b + c, 2); }
  BigRational var_im() const { return BigRational(b - c, 2); }
};

// Exponent tuple (a1, b1, ..., ak, bk) of a one-matrix mixed moment
// Tr(G^{a1} G*^{b1} ... G^{ak} G*^{bk}).
struct MixedIndex {
  std::vector<int> parts;
};

// FC_s(n) = binom(s n + 1, n) / (s n + 1), exactly.
BigInt fuss_catalan(int s, int n);

// Limit of (1/N) E Tr((w w*)^k) for star-free w, computed as the spherical
// count of the single face (w star(w))^k and asserted equal to
// fuss_catalan(|w| + 1, k).
BigInt fc_moment_of_word(const Word& w, int k,
                         const EnumerationLimits& limits = {});

CltParams clt_params(const Word& w, const EnumerationLimits& limits = {});

// Spherical count of the face G^{a1} G*^{b1} ...; zero when unbalanced.
BigInt mixed_moment_limit(const MixedIndex& idx,
                          const EnumerationLimits& limits = {});

// Same limit for the w-substituted face w^{a1} (w*)^{b1} ...; asserted equal
// to mixed_moment_limit of the |w|-scaled index.
BigInt word_mixed_moment_limit(const Word& w, const MixedIndex& idx,
                               const EnumerationLimits& limits = {});

// [j * cop(w) for j = 1..kmax], each asserted equal to clt_params(w^j).b.
std::vector<BigInt> joint_trace_covariance(const Word& w, int kmax,
                                           const EnumerationLimits& limits = {});

// Limiting variance of the linear statistic sum_k a_k Tr(G_w^k):
// cop(w) * sum_k k * a_k^2. coeffs[i] is a_{i+1}.
double linear_statistic_variance(const Word& w,
                                 const std::vector<double>& coeffs);

}  // namespace tracewick
