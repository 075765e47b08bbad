#include "tracewick/limits.hpp"

#include <string>

namespace tracewick {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

void require_star_free(const Word& w) {
  if (!is_star_free(w)) throw NotStarFreeError();
}

void validate_index(const MixedIndex& idx) {
  if (idx.parts.empty() || idx.parts.size() % 2 != 0) {
    throw std::invalid_argument(
        "mixed index needs an even, positive number of entries");
  }
  for (int v : idx.parts) {
    if (v < 1) throw std::invalid_argument("mixed index entries must be >= 1");
  }
}

// The face G^{a1} G*^{b1} ... with every letter the same complex Ginibre
// matrix; `unit` supplies the building block (a single letter, or a whole
// word for the substituted version).
Word mixed_face(const Word& unit, const MixedIndex& idx) {
  const Word unit_star = star(unit);
  Word face;
  for (std::size_t i = 0; i < idx.parts.size(); i += 2) {
    for (int r = 0; r < idx.parts[i]; ++r) face = concat(face, unit);
    for (int r = 0; r < idx.parts[i + 1]; ++r) face = concat(face, unit_star);
  }
  return face;
}

}  // namespace

BigInt fuss_catalan(int s, int n) {
  if (s < 2) throw std::invalid_argument("Fuss-Catalan parameter must be >= 2");
  if (n < 0) throw std::invalid_argument("Fuss-Catalan order must be >= 0");
  return binomial(s * n + 1, n) / (s * n + 1);
}

BigInt fc_moment_of_word(const Word& w, int k, const EnumerationLimits& limits) {
  require_star_free(w);
  if (k < 1) throw std::invalid_argument("moment order must be >= 1");
  const Word block = concat(w, star(w));
  const BigInt count =
      count_closed_pairings({repeat(block, k)}, ClosedSurfaceKind::Sphere, limits);
  const BigInt fc = fuss_catalan(static_cast<int>(w.size()) + 1, k);
  if (count != fc) {
    throw std::logic_error("spherical count of (w w*)^" + std::to_string(k) +
                           " does not match the Fuss-Catalan moment");
  }
  return count;
}

CltParams clt_params(const Word& w, const EnumerationLimits& limits) {
  const SphericalCounts sc = spherical_counts(w, limits);
  CltParams out;
  out.shift = sc.a + sc.p;
  out.b = sc.b;
  out.c = sc.c;
  return out;
}

BigInt mixed_moment_limit(const MixedIndex& idx, const EnumerationLimits& limits) {
  validate_index(idx);
  BigInt up = 0;
  BigInt down = 0;
  for (std::size_t i = 0; i < idx.parts.size(); i += 2) {
    up += idx.parts[i];
    down += idx.parts[i + 1];
  }
  if (up != down) return 0;
  Word g;
  g.letters.push_back(Letter{Ensemble::GinibreComplex, 1, false, false});
  return count_closed_pairings({mixed_face(g, idx)}, ClosedSurfaceKind::Sphere,
                               limits);
}

BigInt word_mixed_moment_limit(const Word& w, const MixedIndex& idx,
                               const EnumerationLimits& limits) {
  require_star_free(w);
  validate_index(idx);
  const BigInt direct = count_closed_pairings(
      {mixed_face(w, idx)}, ClosedSurfaceKind::Sphere, limits);
  MixedIndex scaled;
  scaled.parts.reserve(idx.parts.size());
  for (int v : idx.parts) scaled.parts.push_back(v * static_cast<int>(w.size()));
  if (direct != mixed_moment_limit(scaled, limits)) {
    throw std::logic_error(
        "substituted mixed moment does not match the length-scaled limit");
  }
  return direct;
}

std::vector<BigInt> joint_trace_covariance(const Word& w, int kmax,
                                           const EnumerationLimits& limits) {
  require_star_free(w);
  if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
  const BigInt cop = coperiod(w);
  std::vector<BigInt> out;
  out.reserve(kmax);
  for (int j = 1; j <= kmax; ++j) {
    const BigInt expected = j * cop;
    if (clt_params(repeat(w, j), limits).b != expected) {
      throw std::logic_error("variance of Tr(G_w^" + std::to_string(j) +
                             ") does not match j * cop(w)");
    }
    out.push_back(expected);
  }
  return out;
}

double linear_statistic_variance(const Word& w,
                                 const std::vector<double>& coeffs) {
  require_star_free(w);
  const double cop = static_cast<double>(coperiod(w));
  double s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    s += k * coeffs[i] * coeffs[i];
  }
  return cop * s;
}

}  // namespace tracewick
