#include "pentageom/complexalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pentageom/errors.hpp"

namespace pentageom {

namespace {

double arg_positive(cplx z) {
  double a = std::arg(z);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

cplx unit_or_throw(cplx z, const char* what) {
  const double m = std::abs(z);
  if (!(std::abs(m - 1.0) <= 1e-9)) {
    std::ostringstream os;
    os << what << " must be unimodular, got |" << what << "| = " << m;
    throw InvalidArgument(os.str());
  }
  return z / m;
}

}  // namespace

MoebiusParams MoebiusParams::make(cplx eta, cplx alpha) {
  if (!(std::abs(alpha) < 1.0)) {
    std::ostringstream os;
    os << "Moebius zero must lie in the open unit disc, got |alpha| = " << std::abs(alpha);
    throw InvalidArgument(os.str());
  }
  return {unit_or_throw(eta, "eta"), alpha};
}

cplx moebius_apply(const MoebiusParams& nu, cplx lam) {
  const cplx den = 1.0 - std::conj(nu.alpha) * lam;
  if (std::abs(den) < kPoleThreshold) throw PoleError("moebius_apply: 1 - conj(alpha) lambda vanishes");
  return nu.eta * (lam - nu.alpha) / den;
}

MoebiusParams moebius_inverse(const MoebiusParams& nu) {
  return {std::conj(nu.eta), -nu.eta * nu.alpha};
}

MoebiusParams moebius_compose(const MoebiusParams& outer, const MoebiusParams& inner) {
  // Each map acts as the matrix [[eta, -eta alpha], [-conj(alpha), 1]]; the
  // product is renormalised so its (2,2) entry is 1 again.
  auto as_matrix = [](const MoebiusParams& m) {
    return Matrix2{m.eta, -m.eta * m.alpha, -std::conj(m.alpha), 1.0};
  };
  const Matrix2 prod = as_matrix(outer) * as_matrix(inner);
  const cplx d = prod.z22;
  MoebiusParams out;
  out.eta = prod.z11 / d;
  out.alpha = -std::conj(prod.z21 / d);
  out.eta /= std::abs(out.eta);
  return out;
}

cplx blaschke_apply(const BlaschkeProduct& b, cplx lam) {
  cplx out = b.prefactor;
  for (const auto& f : b.factors) out *= moebius_apply(f, lam);
  return out;
}

EigenPair solve_quadratic(cplx s, cplx p) {
  const cplx root = std::sqrt(s * s - 4.0 * p);
  // Pick the sign that avoids cancellation in s +- root.
  const cplx big = (std::real(std::conj(s) * root) >= 0.0) ? 0.5 * (s + root) : 0.5 * (s - root);
  const cplx small = (big == 0.0) ? cplx{0.0, 0.0} : p / big;

  EigenPair out{big, small};
  const double m1 = std::abs(out.lambda1);
  const double m2 = std::abs(out.lambda2);
  const double scale = std::max(m1, m2);
  const bool tie = std::abs(m1 - m2) <= 1e-14 * scale;
  if ((!tie && m2 > m1) || (tie && arg_positive(out.lambda2) < arg_positive(out.lambda1))) {
    std::swap(out.lambda1, out.lambda2);
  }
  return out;
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return {x.z11 * y.z11 + x.z12 * y.z21, x.z11 * y.z12 + x.z12 * y.z22,
          x.z21 * y.z11 + x.z22 * y.z21, x.z21 * y.z12 + x.z22 * y.z22};
}

Matrix2 operator*(cplx c, const Matrix2& x) { return {c * x.z11, c * x.z12, c * x.z21, c * x.z22}; }

Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
  return {x.z11 + y.z11, x.z12 + y.z12, x.z21 + y.z21, x.z22 + y.z22};
}

Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
  return {x.z11 - y.z11, x.z12 - y.z12, x.z21 - y.z21, x.z22 - y.z22};
}

double max_abs_diff(const Matrix2& x, const Matrix2& y) {
  const Matrix2 d = x - y;
  return std::max({std::abs(d.z11), std::abs(d.z12), std::abs(d.z21), std::abs(d.z22)});
}

Svd2 svd2(const Matrix2& z) {
  Svd2 out;
  // sigma1 +- sigma2 = sqrt(|z|_F^2 +- 2 |det z|).
  const double fro = z.frobenius_sq();
  const double adet = std::abs(z.det());
  const double plus = std::sqrt(fro + 2.0 * adet);
  const double minus = std::sqrt(std::max(0.0, fro - 2.0 * adet));
  out.sigma1 = 0.5 * (plus + minus);
  out.sigma2 = out.sigma1 > 0.0 ? std::min(out.sigma1, adet / out.sigma1) : 0.0;

  // Top eigenvector of the Hermitian matrix z* z.
  const double h11 = std::norm(z.z11) + std::norm(z.z21);
  const double h22 = std::norm(z.z12) + std::norm(z.z22);
  const cplx h12 = std::conj(z.z11) * z.z12 + std::conj(z.z21) * z.z22;
  const double d = 0.5 * (h11 - h22);
  const double r = std::hypot(d, std::abs(h12));

  std::array<cplx, 2> v1{1.0, 0.0};
  if (r > 0.0) {
    if (d <= 0.0) {
      v1 = {h12, r - d};
    } else {
      v1 = {r + d, std::conj(h12)};
    }
    const double n = std::hypot(std::abs(v1[0]), std::abs(v1[1]));
    v1 = {v1[0] / n, v1[1] / n};
  }
  const std::array<cplx, 2> v2{-std::conj(v1[1]), std::conj(v1[0])};

  std::array<cplx, 2> u1{z.z11 * v1[0] + z.z12 * v1[1], z.z21 * v1[0] + z.z22 * v1[1]};
  const double n1 = std::hypot(std::abs(u1[0]), std::abs(u1[1]));
  if (n1 > 0.0) {
    u1 = {u1[0] / n1, u1[1] / n1};
  } else {
    u1 = {1.0, 0.0};
  }
  std::array<cplx, 2> u2{-std::conj(u1[1]), std::conj(u1[0])};
  const std::array<cplx, 2> w2{z.z11 * v2[0] + z.z12 * v2[1], z.z21 * v2[0] + z.z22 * v2[1]};
  const cplx c = std::conj(u2[0]) * w2[0] + std::conj(u2[1]) * w2[1];
  if (std::abs(c) > 0.0) {
    const cplx phase = c / std::abs(c);
    u2 = {u2[0] * phase, u2[1] * phase};
  }

  out.u = {u1[0], u2[0], u1[1], u2[1]};
  out.v = {std::conj(v1[0]), std::conj(v1[1]), std::conj(v2[0]), std::conj(v2[1])};
  return out;
}

double operator_norm(const Matrix2& z) { return svd2(z).sigma1; }

namespace {

double checked_eval(const ComplexField& field, cplx z) {
  double v = 0.0;
  try {
    v = field(z);
  } catch (const std::exception& e) {
    std::ostringstream os;
    os << "field evaluation failed at " << z << ": " << e.what();
    throw EvaluationFailure(os.str());
  }
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "field is not finite at " << z;
    throw EvaluationFailure(os.str());
  }
  return v;
}

// ux, uy, uxx, uyy, uxy from the 9-point stencil.
using Partials = std::array<double, 5>;

Partials stencil_partials(const ComplexField& field, cplx z0, double h, double centre) {
  const cplx ex{h, 0.0};
  const cplx ey{0.0, h};
  const double xp = checked_eval(field, z0 + ex);
  const double xm = checked_eval(field, z0 - ex);
  const double yp = checked_eval(field, z0 + ey);
  const double ym = checked_eval(field, z0 - ey);
  const double pp = checked_eval(field, z0 + ex + ey);
  const double pm = checked_eval(field, z0 + ex - ey);
  const double mp = checked_eval(field, z0 - ex + ey);
  const double mm = checked_eval(field, z0 - ex - ey);
  return {(xp - xm) / (2.0 * h), (yp - ym) / (2.0 * h), (xp - 2.0 * centre + xm) / (h * h),
          (yp - 2.0 * centre + ym) / (h * h), (pp - pm - mp + mm) / (4.0 * h * h)};
}

WirtingerJet jet_from_partials(double value, const Partials& q) {
  const cplx i{0.0, 1.0};
  WirtingerJet j;
  j.value = value;
  j.d_z = 0.5 * (q[0] - i * q[1]);
  j.d_zbar = 0.5 * (q[0] + i * q[1]);
  j.d_zz = 0.25 * (q[2] - q[3] - 2.0 * i * q[4]);
  j.d_zzbar = 0.25 * (q[2] + q[3]);
  return j;
}

}  // namespace

WirtingerJet wirtinger_jet(const ComplexField& field, cplx z0, double h) {
  if (!(h > 0.0)) throw InvalidArgument("wirtinger_jet: step must be positive");
  const double centre = checked_eval(field, z0);
  return jet_from_partials(centre, stencil_partials(field, z0, h, centre));
}

RefinedJet wirtinger_jet_refined(const ComplexField& field, cplx z0, double h) {
  if (!(h > 0.0)) throw InvalidArgument("wirtinger_jet_refined: step must be positive");
  // Neville tableau in h^2 over a geometric sequence of steps, keeping for each
  // partial the entry with the smallest local error estimate (Ridders).
  constexpr int kLevels = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;

  const double centre = checked_eval(field, z0);
  std::array<std::array<Partials, kLevels>, kLevels> table{};
  Partials best{};
  Partials err;
  err.fill(std::numeric_limits<double>::max());
  std::array<bool, 5> done{};

  double step = h;
  for (int i = 0; i < kLevels; ++i) {
    table[0][i] = stencil_partials(field, z0, step, centre);
    if (i == 0) best = table[0][0];
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      for (int k = 0; k < 5; ++k) {
        table[j][i][k] = (table[j - 1][i][k] * fac - table[j - 1][i - 1][k]) / (fac - 1.0);
        if (done[k]) continue;
        const double e = std::max(std::abs(table[j][i][k] - table[j - 1][i][k]),
                                  std::abs(table[j][i][k] - table[j - 1][i - 1][k]));
        if (e <= err[k]) {
          err[k] = e;
          best[k] = table[j][i][k];
        }
      }
      fac *= kShrink2;
    }
    if (i > 0) {
      for (int k = 0; k < 5; ++k) {
        if (!done[k] && std::abs(table[i][i][k] - table[i - 1][i - 1][k]) >= kSafe * err[k]) done[k] = true;
      }
    }
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) break;
    step /= kShrink;
  }

  RefinedJet out;
  out.jet = jet_from_partials(centre, best);
  out.delta = 0.0;
  for (double e : err) {
    if (e != std::numeric_limits<double>::max()) out.delta = std::max(out.delta, e);
  }
  return out;
}

}  // namespace pentageom
