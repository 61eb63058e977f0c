#include "pentageom/automorphisms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pentageom/errors.hpp"

namespace pentageom {

PentaAutomorphism PentaAutomorphism::make(cplx omega, cplx eta, cplx alpha) {
  if (!(std::abs(std::abs(omega) - 1.0) <= 1e-9)) throw InvalidArgument("omega must be unimodular");
  return {omega / std::abs(omega), MoebiusParams::make(eta, alpha)};
}

double parameter_distance(const PentaAutomorphism& f, const PentaAutomorphism& g) {
  return std::max({std::abs(f.omega - g.omega), std::abs(f.nu.eta - g.nu.eta), std::abs(f.nu.alpha - g.nu.alpha)});
}

PentaPoint auto_apply(const PentaAutomorphism& f, const PentaPoint& x) {
  const cplx ca = std::conj(f.nu.alpha);
  const cplx den = 1.0 - ca * x.s + ca * ca * x.p;
  if (std::abs(den) < kPoleThreshold) throw PoleError("auto_apply: 1 - conj(alpha) s + conj(alpha)^2 p vanishes");
  const EigenPair roots = solve_quadratic(x.s, x.p);
  const cplx m1 = moebius_apply(f.nu, roots.lambda1);
  const cplx m2 = moebius_apply(f.nu, roots.lambda2);
  const cplx a = f.omega * f.nu.eta * (1.0 - std::norm(f.nu.alpha)) * x.a / den;
  return {a, m1 + m2, m1 * m2};
}

PentaAutomorphism auto_inverse(const PentaAutomorphism& f) {
  // The a-multipliers of nu and nu^{-1} along corresponding points multiply to 1.
  return {std::conj(f.omega), moebius_inverse(f.nu)};
}

PentaAutomorphism auto_compose(const PentaAutomorphism& f, const PentaAutomorphism& g) {
  cplx omega = f.omega * g.omega;
  omega /= std::abs(omega);
  return {omega, moebius_compose(f.nu, g.nu)};
}

PentaPoint orbit_of_origin(const PentaAutomorphism& f) {
  const PentaPoint y = auto_apply(f, {0.0, 0.0, 0.0});
  const double royal_residual = std::abs(y.s * y.s - 4.0 * y.p);
  if (y.a != 0.0 || royal_residual > 1e-12) {
    std::ostringstream os;
    os << "orbit_of_origin: image (" << y.a << ", " << y.s << ", " << y.p
       << ") is not in {0} x royal variety (residual " << royal_residual << ")";
    throw InvariantViolation(os.str());
  }
  return y;
}

SymmetrisedPoint symmetrize_blaschke(const BlaschkeProduct& b, const SymmetrisedPoint& q) {
  const EigenPair roots = solve_quadratic(q.s, q.p);
  const cplx b1 = blaschke_apply(b, roots.lambda1);
  const cplx b2 = blaschke_apply(b, roots.lambda2);
  return {b1 + b2, b1 * b2};
}

}  // namespace pentageom
