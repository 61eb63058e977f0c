#pragma once

// Scalar and 2x2 complex arithmetic shared by every other module: disc
// automorphisms, finite Blaschke products, quadratic roots, the closed-form
// 2x2 SVD and finite-difference Wirtinger derivatives.

#include <complex>
#include <functional>
#include <vector>

namespace pentageom {

using cplx = std::complex<double>;

/// |denominator| below this is treated as a pole.
inline constexpr double kPoleThreshold = 1e-14;
/// Default finite-difference step for Wirtinger jets.
inline constexpr double kDefaultStep = 1e-4;

/// Disc automorphism lambda -> eta (lambda - alpha) / (1 - conj(alpha) lambda).
struct MoebiusParams {
  cplx eta{1.0, 0.0};
  cplx alpha{0.0, 0.0};

  /// Validates |eta| = 1 (to 1e-9, then renormalised) and |alpha| < 1.
  static MoebiusParams make(cplx eta, cplx alpha);
  static MoebiusParams identity() { return {}; }
};

cplx moebius_apply(const MoebiusParams& nu, cplx lam);

/// Parameters of the inverse map: (conj(eta), -eta * alpha).
MoebiusParams moebius_inverse(const MoebiusParams& nu);

/// Parameters of outer o inner (inner is applied first).
MoebiusParams moebius_compose(const MoebiusParams& outer, const MoebiusParams& inner);

/// Finite Blaschke product: prefactor * prod_k nu_k(lambda).
struct BlaschkeProduct {
  cplx prefactor{1.0, 0.0};
  std::vector<MoebiusParams> factors;

  int degree() const { return static_cast<int>(factors.size()); }
};

cplx blaschke_apply(const BlaschkeProduct& b, cplx lam);

/// Roots of lambda^2 - s lambda + p, larger modulus first (ties by argument
/// in [0, 2pi)).
struct EigenPair {
  cplx lambda1;
  cplx lambda2;
};

EigenPair solve_quadratic(cplx s, cplx p);

struct Matrix2 {
  cplx z11, z12, z21, z22;

  static Matrix2 zero() { return {}; }
  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Matrix2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }

  cplx trace() const { return z11 + z22; }
  cplx det() const { return z11 * z22 - z12 * z21; }
  double frobenius_sq() const {
    return std::norm(z11) + std::norm(z12) + std::norm(z21) + std::norm(z22);
  }
  Matrix2 adjoint() const {
    return {std::conj(z11), std::conj(z21), std::conj(z12), std::conj(z22)};
  }
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);
Matrix2 operator*(cplx c, const Matrix2& x);
Matrix2 operator+(const Matrix2& x, const Matrix2& y);
Matrix2 operator-(const Matrix2& x, const Matrix2& y);
/// Largest entry modulus of x - y.
double max_abs_diff(const Matrix2& x, const Matrix2& y);

/// z = u * diag(sigma1, sigma2) * v with u, v unitary, sigma1 >= sigma2 >= 0.
struct Svd2 {
  Matrix2 u;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  Matrix2 v;
};

Svd2 svd2(const Matrix2& z);
double operator_norm(const Matrix2& z);

/// Value and first/second Wirtinger derivatives of a real field at a point.
struct WirtingerJet {
  double value = 0.0;
  cplx d_z;
  cplx d_zbar;
  cplx d_zz;
  cplx d_zzbar;
};

using ComplexField = std::function<double(cplx)>;

/// Central differences on the 9-point real stencil of width h around z0.
WirtingerJet wirtinger_jet(const ComplexField& field, cplx z0, double h = kDefaultStep);

/// Richardson-extrapolated jet over a shrinking sequence of steps starting at h
/// (Ridders). `delta` is the largest per-derivative error estimate.
struct RefinedJet {
  WirtingerJet jet;
  double delta = 0.0;
};

RefinedJet wirtinger_jet_refined(const ComplexField& field, cplx z0, double h = kDefaultStep);

}  // namespace pentageom
