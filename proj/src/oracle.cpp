// Brute-force Wick evaluation over all trace indexations.
#include "tracewick/oracle.hpp"

#include <stdexcept>
#include <string>

#include "tracewick/topology.hpp"

namespace tracewick {

namespace {

struct Factor {
  Ensemble ens{};
  int index = 0;
  bool conj = false;
  int slot_r = 0;  // slot whose value is the entry's row
  int slot_c = 0;
  int row = 0;
  int col = 0;
};

// N times the covariance of two concrete entries; always 0, 1, or 2.
int pair_weight(const Factor& a, const Factor& b) {
  if (a.ens != b.ens || a.index != b.index) return 0;
  switch (a.ens) {
    case Ensemble::GinibreComplex:
      if (a.conj == b.conj) return 0;
      return a.row == b.row && a.col == b.col ? 1 : 0;
    case Ensemble::GinibreReal:
      return a.row == b.row && a.col == b.col ? 1 : 0;
    case Ensemble::GUE:
      if (a.conj == b.conj) return a.row == b.col && a.col == b.row ? 1 : 0;
      return a.row == b.row && a.col == b.col ? 1 : 0;
    case Ensemble::GOE:
      return (a.row == b.row && a.col == b.col ? 1 : 0) +
             (a.row == b.col && a.col == b.row ? 1 : 0);
  }
  return 0;
}

// Sum over perfect matchings of the factor list of the product of pairwise
// weights, by backtracking on the first unmatched factor.
BigInt matching_sum(std::vector<Factor>& fs, std::vector<bool>& used,
                    std::size_t from) {
  while (from < fs.size() && used[from]) ++from;
  if (from == fs.size()) return 1;
  used[from] = true;
  BigInt total = 0;
  for (std::size_t j = from + 1; j < fs.size(); ++j) {
    if (used[j]) continue;
    const int w = pair_weight(fs[from], fs[j]);
    if (w == 0) continue;
    used[j] = true;
    total += w * matching_sum(fs, used, from + 1);
    used[j] = false;
  }
  used[from] = false;
  return total;
}

struct OracleProblem {
  int m = 0;
  std::vector<Factor> factors;
};

OracleProblem build(const std::vector<Word>& words, int N,
                    const OracleLimits& limits) {
  if (N < 1) throw std::invalid_argument("dimension must be positive");
  if (N > limits.max_N) {
    throw TooLargeError("oracle dimension " + std::to_string(N) +
                        " exceeds cap " + std::to_string(limits.max_N));
  }
  OracleProblem pb;
  int off = 0;
  for (const Word& w : words) {
    if (w.letters.empty()) throw EmptyWordError();
    const int len = static_cast<int>(w.size());
    for (int p = 0; p < len; ++p) {
      const Letter L = normalized(w.letters[p]);
      Factor f;
      f.ens = L.ensemble;
      f.index = L.index;
      f.conj = L.conjugated;
      const int s0 = off + p;
      const int s1 = off + (p + 1) % len;
      f.slot_r = L.transposed ? s1 : s0;
      f.slot_c = L.transposed ? s0 : s1;
      pb.factors.push_back(f);
    }
    off += len;
  }
  pb.m = off;
  if (pb.m > limits.max_total_length) {
    throw TooLargeError("oracle total length " + std::to_string(pb.m) +
                        " exceeds cap " + std::to_string(limits.max_total_length));
  }
  return pb;
}

// Iterates all N^m slot indexations; `alive` may reject a concrete factor
// (a structurally zero entry), `denom` is the per-pair variance denominator.
template <class Alive>
BigRational oracle_sum(OracleProblem& pb, int N, long long denom, Alive alive) {
  if (pb.m % 2 != 0) return BigRational(0);
  std::vector<int> idx(pb.m, 0);
  std::vector<bool> used(pb.factors.size(), false);
  BigInt total = 0;
  for (;;) {
    bool all_alive = true;
    for (Factor& f : pb.factors) {
      f.row = idx[f.slot_r];
      f.col = idx[f.slot_c];
      if (!alive(f)) {
        all_alive = false;
        break;
      }
    }
    if (all_alive) total += matching_sum(pb.factors, used, 0);
    int p = 0;
    while (p < pb.m && ++idx[p] == N) {
      idx[p] = 0;
      ++p;
    }
    if (p == pb.m) break;
  }
  BigInt d = 1;
  for (int i = 0; i < pb.m / 2; ++i) d *= denom;
  return BigRational(total, d);
}

}  // namespace

BigRational brute_force_wick_oracle(const std::vector<Word>& words, int N,
                                    const OracleLimits& limits) {
  OracleProblem pb = build(words, N, limits);
  return oracle_sum(pb, N, N, [](const Factor&) { return true; });
}

BigRational brute_force_band_oracle(const std::vector<Word>& words, int N,
                                    int b, const OracleLimits& limits) {
  for (const Word& w : words) {
    for (const Letter& l : w.letters) {
      if (l.ensemble != Ensemble::GinibreComplex) {
        throw UnsupportedConfigurationError(
            "band oracle handles complex-Ginibre words only");
      }
    }
  }
  if (b < 0) throw std::invalid_argument("bandwidth must be non-negative");
  OracleProblem pb = build(words, N, limits);
  const int l = std::min(2 * b + 1, N);
  auto in_band = [N, b](const Factor& f) {
    const int d = f.row > f.col ? f.row - f.col : f.col - f.row;
    return std::min(d, N - d) <= b;
  };
  return oracle_sum(pb, N, l, in_band);
}

}  // namespace tracewick
