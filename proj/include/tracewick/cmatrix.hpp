#pragma once

#include <complex>
#include <vector>

namespace tracewick {

// Dense N x N complex matrix stored as separate row-major real and imaginary
// planes (better vectorization than interleaved std::complex).  `band` is an
// optional structural hint: when >= 0, entries vanish outside cyclic distance
// `band` of the diagonal, and multiplication restricts the inner loop to that
// window; -1 means no structure is assumed.
struct CMatrix {
  int n = 0;
  int band = -1;
  std::vector<double> re;
  std::vector<double> im;

  CMatrix() = default;
  explicit CMatrix(int size)
      : n(size), re(static_cast<std::size_t>(size) * size, 0.0),
        im(static_cast<std::size_t>(size) * size, 0.0) {}

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n + j;
  }
  std::complex<double> at(int i, int j) const {
    return {re[index(i, j)], im[index(i, j)]};
  }
};

// C = A * B.  Uses the cyclic band window of A when A carries one (cost
// N^2 * l instead of N^3); otherwise a k-blocked dense triple loop.
CMatrix multiply(const CMatrix& a, const CMatrix& b);

CMatrix transpose_of(const CMatrix& a);
CMatrix conjugate_of(const CMatrix& a);
CMatrix adjoint_of(const CMatrix& a);

std::complex<double> trace(const CMatrix& a);

// Tr(A * B) without forming the product: sum_{i,k} A(i,k) * B(k,i).
std::complex<double> trace_dot(const CMatrix& a, const CMatrix& b);

}  // namespace tracewick
