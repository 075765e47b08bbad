#include "tracewick/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "tracewick/limits.hpp"

namespace tracewick {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

void validate_spec(const EnsembleSpec& spec) {
  if (spec.N < 1) throw InvalidEnsembleError("matrix dimension must be positive");
  if (spec.kind == EnsembleKind::SparseComplex) {
    if (!(spec.p > 0.0) || spec.p > 1.0)
      throw InvalidEnsembleError("sparse probability must lie in (0, 1]");
    if (spec.p * spec.N < 1.0)
      throw InvalidEnsembleError("sparse probability requires p * N >= 1");
  }
  if (spec.kind == EnsembleKind::BandComplex && spec.b < 1)
    throw InvalidEnsembleError("band half-width must be at least 1");
}

void validate_config(const MCConfig& cfg) {
  if (cfg.samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (cfg.workers < 1) throw std::invalid_argument("need at least 1 worker");
  if (cfg.samples > 0xFFFFFFFFull)
    throw std::invalid_argument("sample index must fit in 32 bits");
}

std::complex<double> draw_entry(RngStream& rng, EntryDist dist) {
  return dist == EntryDist::ComplexGaussian ? rng.next_complex_gaussian()
                                            : rng.next_fourth_matched();
}

void fill_complex(CMatrix& m, RngStream& rng, EntryDist dist, double scale) {
  const std::size_t total = static_cast<std::size_t>(m.n) * m.n;
  for (std::size_t e = 0; e < total; ++e) {
    const std::complex<double> z = draw_entry(rng, dist);
    m.re[e] = scale * z.real();
    m.im[e] = scale * z.imag();
  }
}

void fill_real(CMatrix& m, RngStream& rng, double scale) {
  const std::size_t total = static_cast<std::size_t>(m.n) * m.n;
  for (std::size_t e = 0; e < total; ++e)
    m.re[e] = scale * rng.next_real_gaussian();
}

int cyclic_distance(int i, int j, int n) {
  const int d = std::abs(i - j);
  return std::min(d, n - d);
}

// The law each letter of a word is drawn from: `base` applies to the
// complex-Ginibre letters; the other ensembles keep their own kind.
EnsembleSpec spec_for_letter(const EnsembleSpec& base, Ensemble ens) {
  switch (ens) {
    case Ensemble::GinibreComplex:
      return base;
    case Ensemble::GinibreReal:
      return {EnsembleKind::GinibreReal, base.N, 1.0, 1, base.dist};
    case Ensemble::GUE:
      return {EnsembleKind::GUE, base.N, 1.0, 1, base.dist};
    case Ensemble::GOE:
      return {EnsembleKind::GOE, base.N, 1.0, 1, base.dist};
  }
  throw std::logic_error("unknown ensemble");
}

// Distinct (ensemble, index) pairs over all words, sorted; the position of a
// letter in this list is its RNG stream id.
std::vector<Letter> distinct_letters(const std::vector<Word>& words) {
  std::set<Letter> seen;
  for (const Word& w : words)
    for (const Letter& l : w.letters)
      seen.insert(Letter{l.ensemble, l.index, false, false});
  return {seen.begin(), seen.end()};
}

LetterSamples draw_letter_samples(const std::vector<Letter>& letters,
                                  const EnsembleSpec& spec, std::uint64_t seed,
                                  std::uint32_t sample_index) {
  LetterSamples samples;
  for (std::size_t r = 0; r < letters.size(); ++r) {
    RngStream rng(seed, static_cast<std::uint32_t>(r), sample_index);
    samples.emplace(LetterKey{letters[r].ensemble, letters[r].index},
                    sample_matrix(spec_for_letter(spec, letters[r].ensemble), rng));
  }
  return samples;
}

CMatrix letter_matrix(const Letter& l, const LetterSamples& samples) {
  const auto it = samples.find(LetterKey{l.ensemble, l.index});
  if (it == samples.end())
    throw MissingLetterError("no sample for letter " + render(l));
  if (l.transposed && l.conjugated) return adjoint_of(it->second);
  if (l.transposed) return transpose_of(it->second);
  if (l.conjugated) return conjugate_of(it->second);
  return it->second;
}

// Tr of the word product without materializing the full product: fold from
// the right so banded letter matrices stay on the left of each multiply, and
// close with a trace_dot.
std::complex<double> trace_of_word(const Word& w, const LetterSamples& samples) {
  const std::size_t m = w.size();
  if (m == 1) return trace(letter_matrix(w.letters[0], samples));
  CMatrix acc = letter_matrix(w.letters[m - 1], samples);
  for (std::size_t i = m - 2; i >= 1; --i)
    acc = multiply(letter_matrix(w.letters[i], samples), acc);
  return trace_dot(letter_matrix(w.letters[0], samples), acc);
}

// Runs fn(s) for every sample index, partitioned into contiguous per-worker
// ranges of size ceil(samples / workers).
template <class Fn>
void run_samples(std::uint64_t samples, int workers, const Fn& fn) {
  const int used =
      static_cast<int>(std::min<std::uint64_t>(workers, samples));
  if (used <= 1) {
    for (std::uint64_t s = 0; s < samples; ++s) fn(s);
    return;
  }
  const std::uint64_t chunk = (samples + used - 1) / used;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(used));
  for (int t = 0; t < used; ++t) {
    const std::uint64_t begin = chunk * t;
    const std::uint64_t end = std::min(samples, begin + chunk);
    threads.emplace_back([&, t, begin, end] {
      try {
        for (std::uint64_t s = begin; s < end; ++s) fn(s);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : threads) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

// Mean and sqrt((var_re + var_im) / n) over stored per-sample values, in a
// deterministic two-pass serial reduction.
MomentEstimate reduce_moment(const std::vector<std::complex<double>>& values) {
  const std::uint64_t n = values.size();
  std::complex<double> sum = 0.0;
  for (const auto& v : values) sum += v;
  const std::complex<double> mean = sum / static_cast<double>(n);
  double ssq = 0.0;
  for (const auto& v : values) {
    const double dr = v.real() - mean.real();
    const double di = v.imag() - mean.imag();
    ssq += dr * dr + di * di;
  }
  const double var = n > 1 ? ssq / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n)),
          static_cast<std::uint64_t>(n)};
}

void emit(const SampleSink& sink, const std::vector<std::complex<double>>& values) {
  if (!sink) return;
  for (std::uint64_t s = 0; s < values.size(); ++s) sink(s, values[s]);
}

}  // namespace

CMatrix sample_matrix(const EnsembleSpec& spec, RngStream& rng) {
  validate_spec(spec);
  const int n = spec.N;
  CMatrix m(n);
  switch (spec.kind) {
    case EnsembleKind::GinibreComplex:
      fill_complex(m, rng, spec.dist, 1.0 / std::sqrt(static_cast<double>(n)));
      return m;
    case EnsembleKind::GinibreReal:
      fill_real(m, rng, 1.0 / std::sqrt(static_cast<double>(n)));
      return m;
    case EnsembleKind::GUE: {
      CMatrix a(n);
      fill_complex(a, rng, spec.dist, 1.0 / std::sqrt(static_cast<double>(n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const std::size_t ij = a.index(i, j);
          const std::size_t ji = a.index(j, i);
          m.re[ij] = kInvSqrt2 * (a.re[ij] + a.re[ji]);
          m.im[ij] = kInvSqrt2 * (a.im[ij] - a.im[ji]);
        }
      return m;
    }
    case EnsembleKind::GOE: {
      CMatrix b(n);
      fill_real(b, rng, 1.0 / std::sqrt(static_cast<double>(n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m.re[m.index(i, j)] = kInvSqrt2 * (b.re[b.index(i, j)] + b.re[b.index(j, i)]);
      return m;
    }
    case EnsembleKind::SparseComplex: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(n) * spec.p);
      const double threshold = spec.p * 4294967296.0;
      const std::size_t total = static_cast<std::size_t>(n) * n;
      for (std::size_t e = 0; e < total; ++e) {
        const bool keep = static_cast<double>(rng.next_u32()) < threshold;
        const std::complex<double> z = draw_entry(rng, spec.dist);
        if (keep) {
          m.re[e] = scale * z.real();
          m.im[e] = scale * z.imag();
        }
      }
      return m;
    }
    case EnsembleKind::BandComplex: {
      const int l = std::min(2 * spec.b + 1, n);
      const double scale = 1.0 / std::sqrt(static_cast<double>(l));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (cyclic_distance(i, j, n) > spec.b) continue;
          const std::complex<double> z = draw_entry(rng, spec.dist);
          const std::size_t ij = m.index(i, j);
          m.re[ij] = scale * z.real();
          m.im[ij] = scale * z.imag();
        }
      if (2 * spec.b + 1 < n) m.band = spec.b;
      return m;
    }
  }
  throw std::logic_error("unknown ensemble kind");
}

CMatrix evaluate_word(const Word& w, const LetterSamples& samples) {
  if (w.letters.empty()) throw EmptyWordError();
  CMatrix acc = letter_matrix(w.letters[0], samples);
  for (std::size_t i = 1; i < w.size(); ++i)
    acc = multiply(acc, letter_matrix(w.letters[i], samples));
  return acc;
}

MomentEstimate trace_moment_estimate(const std::vector<Word>& words,
                                     const EnsembleSpec& spec,
                                     const MCConfig& cfg,
                                     const SampleSink& sink) {
  validate_spec(spec);
  validate_config(cfg);
  for (const Word& w : words)
    if (w.letters.empty()) throw EmptyWordError();
  const std::vector<Letter> letters = distinct_letters(words);
  std::vector<std::complex<double>> values(cfg.samples);
  run_samples(cfg.samples, cfg.workers, [&](std::uint64_t s) {
    const LetterSamples samples = draw_letter_samples(
        letters, spec, cfg.seed, static_cast<std::uint32_t>(s));
    std::complex<double> product = 1.0;
    for (const Word& w : words) product *= trace_of_word(w, samples);
    values[s] = product;
  });
  emit(sink, values);
  return reduce_moment(values);
}

CovarianceEstimate centered_trace_covariance(const Word& w,
                                             const EnsembleSpec& spec,
                                             const MCConfig& cfg,
                                             const SampleSink& sink) {
  validate_spec(spec);
  validate_config(cfg);
  if (cfg.samples < 3)
    throw std::invalid_argument("jackknife needs at least 3 samples");
  const CltParams params = clt_params(w);
  const double center =
      params.shift.convert_to<double>() * static_cast<double>(spec.N);
  const std::vector<Letter> letters = distinct_letters({w});
  std::vector<std::complex<double>> values(cfg.samples);
  run_samples(cfg.samples, cfg.workers, [&](std::uint64_t s) {
    const LetterSamples samples = draw_letter_samples(
        letters, spec, cfg.seed, static_cast<std::uint32_t>(s));
    values[s] = trace_of_word(w, samples) - std::complex<double>(center, 0.0);
  });
  emit(sink, values);

  const std::uint64_t n = cfg.samples;
  const double dn = static_cast<double>(n);
  double sx = 0.0, sy = 0.0;
  for (const auto& v : values) {
    sx += v.real();
    sy += v.imag();
  }
  const double mx = sx / dn;
  const double my = sy / dn;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& v : values) {
    const double dx = v.real() - mx;
    const double dy = v.imag() - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  CovarianceEstimate out;
  out.samples = n;
  out.mean = {mx, my};
  out.cov[0][0] = sxx / (dn - 1.0);
  out.cov[1][1] = syy / (dn - 1.0);
  out.cov[0][1] = out.cov[1][0] = sxy / (dn - 1.0);

  // Delete-one jackknife on the three covariance entries.  The leave-one-out
  // statistic is reconstructed from the centered sums in O(1) per sample.
  std::vector<double> jxx(n), jyy(n), jxy(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double dx = values[i].real() - mx;
    const double dy = values[i].imag() - my;
    // Centered sums of the reduced sample: removing x_i shifts the mean by
    // dx / (n - 1), so sum of squared deviations drops by dx^2 * n / (n - 1).
    const double f = dn / (dn - 1.0);
    jxx[i] = (sxx - dx * dx * f) / (dn - 2.0);
    jyy[i] = (syy - dy * dy * f) / (dn - 2.0);
    jxy[i] = (sxy - dx * dy * f) / (dn - 2.0);
  }
  const auto jackknife_se = [&](const std::vector<double>& theta) {
    double mean = 0.0;
    for (double t : theta) mean += t;
    mean /= dn;
    double ssq = 0.0;
    for (double t : theta) ssq += (t - mean) * (t - mean);
    return std::sqrt((dn - 1.0) / dn * ssq);
  };
  out.se[0][0] = jackknife_se(jxx);
  out.se[1][1] = jackknife_se(jyy);
  out.se[0][1] = out.se[1][0] = jackknife_se(jxy);
  return out;
}

std::vector<MomentEstimate> squared_singular_moments(const Word& w, int kmax,
                                                     const EnsembleSpec& spec,
                                                     const MCConfig& cfg,
                                                     const SampleSink& sink) {
  validate_spec(spec);
  validate_config(cfg);
  if (!is_star_free(w)) throw NotStarFreeError();
  if (kmax < 1) throw std::invalid_argument("need kmax >= 1");
  const std::vector<Letter> letters = distinct_letters({w});
  const double inv_n = 1.0 / static_cast<double>(spec.N);
  std::vector<std::vector<std::complex<double>>> values(
      static_cast<std::size_t>(kmax),
      std::vector<std::complex<double>>(cfg.samples));
  run_samples(cfg.samples, cfg.workers, [&](std::uint64_t s) {
    const LetterSamples samples = draw_letter_samples(
        letters, spec, cfg.seed, static_cast<std::uint32_t>(s));
    const CMatrix word_matrix = evaluate_word(w, samples);
    const CMatrix word_adjoint = adjoint_of(word_matrix);
    if (kmax == 1) {
      values[0][s] = inv_n * trace_dot(word_matrix, word_adjoint);
      return;
    }
    const CMatrix gram = multiply(word_matrix, word_adjoint);
    values[0][s] = inv_n * trace(gram);
    CMatrix power = gram;
    for (int k = 2; k <= kmax; ++k) {
      if (k == kmax) {
        values[static_cast<std::size_t>(k - 1)][s] =
            inv_n * trace_dot(power, gram);
      } else {
        power = multiply(power, gram);
        values[static_cast<std::size_t>(k - 1)][s] = inv_n * trace(power);
      }
    }
  });
  emit(sink, values.back());
  std::vector<MomentEstimate> out;
  out.reserve(static_cast<std::size_t>(kmax));
  for (const auto& per_k : values) out.push_back(reduce_moment(per_k));
  return out;
}

MomentEstimate squared_singular_moment(const Word& w, int k,
                                       const EnsembleSpec& spec,
                                       const MCConfig& cfg) {
  return squared_singular_moments(w, k, spec, cfg).back();
}

JointTraceEstimates joint_trace_samples(const Word& w, int kmax,
                                        const EnsembleSpec& spec,
                                        const MCConfig& cfg) {
  validate_spec(spec);
  validate_config(cfg);
  if (!is_star_free(w)) throw NotStarFreeError();
  if (kmax < 1) throw std::invalid_argument("need kmax >= 1");
  const std::vector<Letter> letters = distinct_letters({w});
  std::vector<std::vector<std::complex<double>>> traces(
      static_cast<std::size_t>(kmax),
      std::vector<std::complex<double>>(cfg.samples));
  run_samples(cfg.samples, cfg.workers, [&](std::uint64_t s) {
    const LetterSamples samples = draw_letter_samples(
        letters, spec, cfg.seed, static_cast<std::uint32_t>(s));
    const CMatrix word_matrix = evaluate_word(w, samples);
    traces[0][s] = trace(word_matrix);
    CMatrix power = word_matrix;
    for (int j = 2; j <= kmax; ++j) {
      if (j == kmax) {
        traces[static_cast<std::size_t>(j - 1)][s] =
            trace_dot(power, word_matrix);
      } else {
        power = multiply(power, word_matrix);
        traces[static_cast<std::size_t>(j - 1)][s] = trace(power);
      }
    }
  });
  JointTraceEstimates out;
  for (int j = 1; j <= kmax; ++j) {
    std::vector<std::complex<double>> sq(cfg.samples);
    for (std::uint64_t s = 0; s < cfg.samples; ++s)
      sq[s] = std::norm(traces[static_cast<std::size_t>(j - 1)][s]);
    out.abs_squared.push_back(reduce_moment(sq));
  }
  for (int i = 1; i <= kmax; ++i)
    for (int j = i + 1; j <= kmax; ++j) {
      std::vector<std::complex<double>> cross(cfg.samples);
      for (std::uint64_t s = 0; s < cfg.samples; ++s)
        cross[s] = traces[static_cast<std::size_t>(i - 1)][s] *
                   std::conj(traces[static_cast<std::size_t>(j - 1)][s]);
      out.cross.push_back({i, j, reduce_moment(cross)});
    }
  return out;
}

}  // namespace tracewick
