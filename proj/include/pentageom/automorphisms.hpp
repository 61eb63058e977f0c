#pragma once

// The automorphism family f_{omega, nu} of the pentablock:
//
//   f(a, l1 + l2, l1 l2) = (omega eta (1 - |alpha|^2) a / (1 - conj(alpha) s + conj(alpha)^2 p),
//                           nu(l1) + nu(l2), nu(l1) nu(l2))
//
// with omega unimodular and nu(l) = eta (l - alpha) / (1 - conj(alpha) l).
//
// Composition convention: auto_compose(f, g) is f o g, i.e. g is applied first.
// In parameters the law is (omega_f omega_g, nu_f o nu_g); the a-multiplier is
// the divided difference of nu, which obeys the chain rule.

#include "pentageom/complexalg.hpp"
#include "pentageom/domains.hpp"

namespace pentageom {

struct PentaAutomorphism {
  cplx omega{1.0, 0.0};
  MoebiusParams nu;

  /// Validates and normalises: |omega| = |eta| = 1, |alpha| < 1.
  static PentaAutomorphism make(cplx omega, cplx eta, cplx alpha);
  static PentaAutomorphism identity() { return {}; }
};

/// Largest coordinate difference between two parameter triples.
double parameter_distance(const PentaAutomorphism& f, const PentaAutomorphism& g);

PentaPoint auto_apply(const PentaAutomorphism& f, const PentaPoint& x);
PentaAutomorphism auto_inverse(const PentaAutomorphism& f);
PentaAutomorphism auto_compose(const PentaAutomorphism& f, const PentaAutomorphism& g);

/// f(0, 0, 0) = (0, 2 mu, mu^2) with mu = nu(0); throws InvariantViolation if
/// the image leaves {0} x royal variety.
PentaPoint orbit_of_origin(const PentaAutomorphism& f);

/// (l1 + l2, l1 l2) -> (b(l1) + b(l2), b(l1) b(l2)).
SymmetrisedPoint symmetrize_blaschke(const BlaschkeProduct& b, const SymmetrisedPoint& q);

}  // namespace pentageom
