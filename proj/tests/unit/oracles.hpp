#pragma once

// Independent reference computations used by the unit tests. They avoid the
// library's own code paths (root finding, SVD, Ridders tables) on purpose.

#include <cmath>
#include <complex>

#include "pentageom/complexalg.hpp"
#include "pentageom/domains.hpp"

namespace oracle {

using pentageom::cplx;
using lcplx = std::complex<long double>;

inline cplx moebius(cplx eta, cplx alpha, cplx lam) {
  const lcplx e(eta), a(alpha), l(lam);
  return cplx((e * (l - a) / (1.0L - std::conj(a) * l)));
}

// Eigenvalues of a Hermitian 2x2 matrix [[p, q], [conj q, r]] in long double.
inline void hermitian_eigs(long double p, lcplx q, long double r, long double& hi, long double& lo) {
  const long double m = 0.5L * (p + r);
  const long double d = std::sqrt(0.25L * (p - r) * (p - r) + std::norm(q));
  hi = m + d;
  lo = m - d;
}

// Operator norm by power iteration on z* z.
inline double power_norm(const pentageom::Matrix2& z, int iters = 200) {
  const pentageom::Matrix2 h = z.adjoint() * z;
  lcplx v0 = 0.6L, v1 = lcplx(0.3L, 0.7L);
  long double lam = 0.0L;
  for (int i = 0; i < iters; ++i) {
    const lcplx w0 = lcplx(h.z11) * v0 + lcplx(h.z12) * v1;
    const lcplx w1 = lcplx(h.z21) * v0 + lcplx(h.z22) * v1;
    const long double n = std::sqrt(std::norm(w0) + std::norm(w1));
    if (n == 0.0L) return 0.0;
    lam = n;
    v0 = w0 / n;
    v1 = w1 / n;
  }
  return static_cast<double>(std::sqrt(lam));
}

// Quarter Laplacian of a real function of one complex variable (5-point stencil).
template <class F>
double quarter_laplacian(F f, cplx t0, double h) {
  const double c = f(t0);
  return 0.25 * (f(t0 + h) + f(t0 - h) + f(t0 + cplx(0, h)) + f(t0 - cplx(0, h)) - 4.0 * c) / (h * h);
}

// Image of (s, p) under the Moebius map nu, written as a rational function of
// (s, p) instead of going through the roots.
inline void moebius_on_g2(cplx eta, cplx alpha, cplx s, cplx p, cplx& s_out, cplx& p_out) {
  const cplx ab = std::conj(alpha);
  const cplx den = 1.0 - ab * s + ab * ab * p;
  s_out = eta * (s * (1.0 + std::norm(alpha)) - 2.0 * alpha - 2.0 * ab * p) / den;
  p_out = eta * eta * (p - alpha * s + alpha * alpha) / den;
}

}  // namespace oracle
