// Direct evaluation of trace-product expectations at a concrete matrix
// dimension: sum over every indexation of the traces and apply Wick's
// theorem to the resulting Gaussian entry monomial using the entrywise
// covariances of each ensemble. Shares no machinery with the gluing route,
// which makes it an independent check of the exact expansions.
#pragma once

#include <vector>

#include "tracewick/laurent.hpp"
#include "tracewick/word.hpp"

namespace tracewick {

struct OracleLimits {
  int max_N = 6;
  int max_total_length = 10;
};

// E[prod Tr w_i] at dimension N as an exact rational. Cost is N^m times a
// matching sum; the caps guard against runaway inputs.
BigRational brute_force_wick_oracle(const std::vector<Word>& words, int N,
                                    const OracleLimits& limits = {});

// The same sum for the band-restricted complex Ginibre ensemble: entries
// G(x, y) vanish unless the cyclic distance d_N(x, y) <= b, and live entries
// have variance 1/l with l = min(2b + 1, N). Words must be all
// complex-Ginibre.
BigRational brute_force_band_oracle(const std::vector<Word>& words, int N,
                                    int b, const OracleLimits& limits = {});

}  // namespace tracewick
