#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "tracewick/cmatrix.hpp"
#include "tracewick/rng.hpp"
#include "tracewick/word.hpp"

namespace tracewick {

enum class EnsembleKind {
  GinibreComplex,
  GinibreReal,
  GUE,
  GOE,
  SparseComplex,
  BandComplex,
};

// Law of a single normalized complex entry.  FourthMatched has the same
// second and fourth absolute moments as the standard complex Gaussian and
// full phase invariance, but is not Gaussian.
enum class EntryDist { ComplexGaussian, FourthMatched };

// Which law the complex-Ginibre letters of a word are drawn from.  `kind`,
// `p`, `b`, and `dist` all describe that law; real-Ginibre, GUE, and GOE
// letters appearing in a word are always drawn from their own ensemble at the
// same dimension (with `dist` applied to any underlying complex draws).
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GinibreComplex;
  int N = 1;
  double p = 1.0;  // sparse occupation probability; requires p * N >= 1
  int b = 1;       // band half-width; requires b >= 1
  EntryDist dist = EntryDist::ComplexGaussian;
};

struct InvalidEnsembleError : std::invalid_argument {
  explicit InvalidEnsembleError(const std::string& what)
      : std::invalid_argument(what) {}
};

struct MissingLetterError : std::runtime_error {
  explicit MissingLetterError(const std::string& what)
      : std::runtime_error(what) {}
};

struct MCConfig {
  std::uint64_t samples = 1000;  // >= 2
  std::uint64_t seed = 0;
  int workers = 1;
};

struct MomentEstimate {
  std::complex<double> mean;
  double std_error = 0.0;  // sqrt((var_re + var_im) / samples)
  std::uint64_t samples = 0;
};

// Empirical 2x2 covariance of (Re T, Im T) for the centered trace
// T = Tr(G_w) - shift * N, with delete-one jackknife standard errors.
struct CovarianceEstimate {
  std::array<std::array<double, 2>, 2> cov{};
  std::array<std::array<double, 2>, 2> se{};
  std::complex<double> mean;
  std::uint64_t samples = 0;
};

struct CrossMoment {
  int i = 0;
  int j = 0;
  MomentEstimate estimate;
};

struct JointTraceEstimates {
  std::vector<MomentEstimate> abs_squared;  // E|Tr(G_w^j)|^2, j = 1..kmax
  std::vector<CrossMoment> cross;           // E[Tr(G_w^i) conj(Tr(G_w^j))], i < j
};

// Optional per-sample observer, invoked serially in sample-index order after
// all workers finish (so its output is deterministic).
using SampleSink = std::function<void(std::uint64_t, std::complex<double>)>;

using LetterKey = std::pair<Ensemble, int>;
using LetterSamples = std::map<LetterKey, CMatrix>;

// One draw of the ensemble.  Entry normalization gives every matrix entry
// second absolute moment 1/N (band matrices: 1/l on the band, l = min(2b+1,N)).
// The stream is consumed in a fixed documented order (row-major entries; the
// sparse sampler always burns one Bernoulli word plus one entry draw per
// entry, so the consumption pattern is data-independent).
CMatrix sample_matrix(const EnsembleSpec& spec, RngStream& rng);

// Ordered product of the letter samples with transpose/conjugate flags
// applied; the same underlying sample is reused every time a letter index
// repeats.  Throws MissingLetterError if a letter has no sample.
CMatrix evaluate_word(const Word& w, const LetterSamples& samples);

// Monte Carlo estimate of E[prod_i Tr(G_{w_i})] over fresh letter samples per
// draw.  Substream layout: letters are deduplicated to (ensemble, index),
// sorted, and the rank of a letter in that list is its RNG stream id; sample
// s of letter r draws from RngStream(seed, r, s).  Workers own contiguous
// sample ranges (chunk = ceil(samples / workers)) and write per-sample values
// into a shared array by absolute index; the reduction is a single serial
// pass, so results are bit-identical for a fixed seed regardless of worker
// count.
MomentEstimate trace_moment_estimate(const std::vector<Word>& words,
                                     const EnsembleSpec& spec,
                                     const MCConfig& cfg,
                                     const SampleSink& sink = {});

// Covariance of the centered trace; the centering constant shift * N uses the
// exact shift from the pairing enumeration.  Requires samples >= 3.
CovarianceEstimate centered_trace_covariance(const Word& w,
                                             const EnsembleSpec& spec,
                                             const MCConfig& cfg,
                                             const SampleSink& sink = {});

// Estimates of (1/N) Tr((W W*)^k) for k = 1..kmax over shared samples, W the
// evaluated word; moments come from trace powers, no singular values are
// computed.  The sink receives the k = kmax per-sample values.
std::vector<MomentEstimate> squared_singular_moments(const Word& w, int kmax,
                                                     const EnsembleSpec& spec,
                                                     const MCConfig& cfg,
                                                     const SampleSink& sink = {});

MomentEstimate squared_singular_moment(const Word& w, int k,
                                       const EnsembleSpec& spec,
                                       const MCConfig& cfg);

// E|Tr(G_w^j)|^2 for j = 1..kmax plus the cross moments
// E[Tr(G_w^i) conj(Tr(G_w^j))] for i < j, over shared samples.
JointTraceEstimates joint_trace_samples(const Word& w, int kmax,
                                        const EnsembleSpec& spec,
                                        const MCConfig& cfg);

}  // namespace tracewick
