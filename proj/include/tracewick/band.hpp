// Band-matrix layer: exact constrained-indexation counts over the pairing
// constraint graph, alpha volume coefficients, the band genus expansion, and
// band CLT parameters.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tracewick/laurent.hpp"
#include "tracewick/topology.hpp"
#include "tracewick/word.hpp"

namespace tracewick {

// Periodic band of half-width b inside dimension N; the live window has
// l = min(2b + 1, N) entries per row.
struct BandConfig {
  int N = 1;
  int b = 1;

  int l() const { return 2 * b + 1 < N ? 2 * b + 1 : N; }
};

// Vertices are the merged index classes of a glued pairing; an edge demands
// its endpoints lie within cyclic distance b. Multi-edges are collapsed
// (a repeated constraint is one constraint) and loops dropped (a loop
// imposes nothing).
struct ConstraintGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // first < second, deduplicated
};

struct BandLimits {
  int max_component_vertices = 8;
  long long max_component_offsets = 100000000;  // l^(V-1) cap per component
};

ConstraintGraph constraint_graph(const std::vector<Word>& words,
                                 const DecoratedPairing& phi);

// Exact number of labelings of the graph's vertices by {1..N} with every
// edge's endpoints within cyclic distance <= b. Counted per component as
// N times a spanning-tree offset enumeration over the l in-window residues,
// checking non-tree edges; translation invariance makes this exact.
BigInt band_index_count(const ConstraintGraph& g, const BandConfig& cfg,
                        const BandLimits& limits = {});

struct AlphaEstimate {
  double value = 0;
  double error = 0;
};

// The volume coefficient lim |I_N| / (N^c l^(V-c)) at band scaling
// b = round(lambda * N) (lambda = 0 uses the intermediate scale
// b = round(N^(2/3))), by exact counts along an increasing ladder of window
// sizes and Richardson extrapolation in 1/l. lambda >= 1/2 is the full-band
// case l = N, where the ratio is exactly 1.
AlphaEstimate alpha(const ConstraintGraph& g, double lambda,
                    const BandLimits& limits = {});

// (1/pi) * integral of sinc^m over the line, by Simpson quadrature on a
// truncated domain with analytic tail corrections; absolute error < 1e-6.
double alpha_cycle(int m);

// Sum over admissible pairings of band_index_count(Gamma_phi) * l^(-m/2),
// exact. Complex-Ginibre words only.
BigRational band_genus_expansion(const std::vector<Word>& words,
                                 const BandConfig& cfg,
                                 const EnumerationLimits& enum_limits = {},
                                 const BandLimits& band_limits = {});

struct BandCltParams {
  BigInt a;               // atom count a_w (exact)
  double b_prime = 0;     // sum of alpha over spherical pairings of (w, w*)
  double c_prime = 0;     // same over (w, w)
  double b_error = 0;     // accumulated extrapolation error estimates
  double c_error = 0;
  bool gamma_cycle_verified = true;  // star-free w: every (w, w*) spherical
                                     // pairing's graph is one cycle of size m
  std::string counterexample;        // description when verification fails
};

BandCltParams band_clt_params(const Word& w, double lambda,
                              const EnumerationLimits& enum_limits = {},
                              const BandLimits& band_limits = {});

}  // namespace tracewick
