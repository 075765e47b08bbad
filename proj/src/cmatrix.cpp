#include "tracewick/cmatrix.hpp"

#include <algorithm>

namespace tracewick {

namespace {

constexpr int kBlock = 64;

inline bool effectively_dense(const CMatrix& a) {
  return a.band < 0 || 2 * a.band + 1 >= a.n;
}

// C_row_i += a * B_row_k (complex axpy over contiguous rows).
inline void row_axpy(double ar, double ai, const double* bre, const double* bim,
                     double* cre, double* cim, int n) {
  for (int j = 0; j < n; ++j) {
    cre[j] += ar * bre[j] - ai * bim[j];
    cim[j] += ar * bim[j] + ai * bre[j];
  }
}

}  // namespace

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
  const int n = a.n;
  CMatrix c(n);
  if (!effectively_dense(a)) {
    const int bw = a.band;
    for (int i = 0; i < n; ++i) {
      double* cre = &c.re[c.index(i, 0)];
      double* cim = &c.im[c.index(i, 0)];
      for (int d = -bw; d <= bw; ++d) {
        const int k = ((i + d) % n + n) % n;
        const std::size_t ik = a.index(i, k);
        row_axpy(a.re[ik], a.im[ik], &b.re[b.index(k, 0)], &b.im[b.index(k, 0)],
                 cre, cim, n);
      }
    }
    if (b.band >= 0 && 2 * (a.band + b.band) + 1 < n) c.band = a.band + b.band;
    return c;
  }
  for (int k0 = 0; k0 < n; k0 += kBlock) {
    const int k1 = std::min(n, k0 + kBlock);
    for (int i = 0; i < n; ++i) {
      double* cre = &c.re[c.index(i, 0)];
      double* cim = &c.im[c.index(i, 0)];
      for (int k = k0; k < k1; ++k) {
        const std::size_t ik = a.index(i, k);
        const double ar = a.re[ik];
        const double ai = a.im[ik];
        if (ar == 0.0 && ai == 0.0) continue;
        row_axpy(ar, ai, &b.re[b.index(k, 0)], &b.im[b.index(k, 0)], cre, cim, n);
      }
    }
  }
  return c;
}

CMatrix transpose_of(const CMatrix& a) {
  CMatrix t(a.n);
  t.band = a.band;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      t.re[t.index(j, i)] = a.re[a.index(i, j)];
      t.im[t.index(j, i)] = a.im[a.index(i, j)];
    }
  return t;
}

CMatrix conjugate_of(const CMatrix& a) {
  CMatrix c = a;
  for (double& v : c.im) v = -v;
  return c;
}

CMatrix adjoint_of(const CMatrix& a) {
  CMatrix t = transpose_of(a);
  for (double& v : t.im) v = -v;
  return t;
}

std::complex<double> trace(const CMatrix& a) {
  double tr = 0.0, ti = 0.0;
  for (int i = 0; i < a.n; ++i) {
    tr += a.re[a.index(i, i)];
    ti += a.im[a.index(i, i)];
  }
  return {tr, ti};
}

std::complex<double> trace_dot(const CMatrix& a, const CMatrix& b) {
  const int n = a.n;
  double tr = 0.0, ti = 0.0;
  const bool banded = !(a.band < 0 || 2 * a.band + 1 >= n);
  for (int i = 0; i < n; ++i) {
    const int lo = banded ? -a.band : 0;
    const int hi = banded ? a.band : n - 1;
    for (int d = lo; d <= hi; ++d) {
      const int k = banded ? ((i + d) % n + n) % n : d;
      const std::size_t ik = a.index(i, k);
      const std::size_t ki = b.index(k, i);
      tr += a.re[ik] * b.re[ki] - a.im[ik] * b.im[ki];
      ti += a.re[ik] * b.im[ki] + a.im[ik] * b.re[ki];
    }
  }
  return {tr, ti};
}

}  // namespace tracewick
