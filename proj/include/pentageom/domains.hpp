#pragma once

// Membership oracles and geometric primitives for the symmetrised bidisc G2,
// the pentablock P = pi(R_I) and the 2x2 operator ball R_I.
//
// The pentablock is the Hartogs domain
//   P = {(a, s, p) in C x G2 : |a|^2 < exp(-phi(s, p))}
// and is described by several independent criteria; each is available
// separately so they can be checked against one another.

#include <complex>
#include <functional>
#include <string>

#include "pentageom/complexalg.hpp"

namespace pentageom {

/// Default half-width of the band treated as "on the boundary".
inline constexpr double kDefaultBand = 1e-9;

struct PentaPoint {
  cplx a, s, p;
};

struct SymmetrisedPoint {
  cplx s, p;
};

enum class Verdict { Inside, BoundaryBand, Outside };

enum class Criterion { C2, C3, C4, All };

enum class BoundaryClass { Interior, Part1, Part2, Part3, Exterior };

const char* to_string(Verdict v);
const char* to_string(Criterion c);
const char* to_string(BoundaryClass c);

/// Tri-state comparison of `value` against `bound` (inside means value < bound - tol).
Verdict compare_with_band(double value, double bound, double tol);

/// |s - conj(s) p| + |p|^2, which is < 1 exactly on G2.
double g2_defining_value(cplx s, cplx p);
Verdict g2_contains(const SymmetrisedPoint& q, double tol = kDefaultBand);

/// Both roots unimodular to within tol.
bool in_shilov_boundary(const SymmetrisedPoint& q, double tol = kDefaultBand);

/// (s - conj(s) p) / (1 - |p|^2); throws DegenerateDenominator when |p| ~ 1.
cplx compute_beta(cplx s, cplx p);

/// |1 - (s conj(beta) / 2) / (1 + sqrt(1 - |beta|^2))|, the radius of the a-fibre over (s, p).
double criterion2_bound(cplx s, cplx p);

/// (|1 - conj(l2) l1| + sqrt((1 - |l1|^2)(1 - |l2|^2))) / 2 for roots in the closed disc.
double criterion3_bound(const EigenPair& roots);

/// phi(s, p) = -2 log criterion2_bound(s, p); throws DomainError off the closure of G2.
double phi(cplx s, cplx p);

/// a (1 - |z|^2) / (1 - s z + p z^2).
cplx psi(cplx z, const PentaPoint& x);

/// A real scalar field on C^2 together with its domain of definition.
struct ScalarField2C {
  std::function<double(cplx, cplx)> eval;
  std::function<bool(cplx, cplx)> domain;
  std::string name;

  double operator()(cplx s, cplx p) const { return eval(s, p); }
  bool contains(cplx s, cplx p) const { return !domain || domain(s, p); }
};

/// phi as a field on G2.
ScalarField2C phi_field();

/// phi^z(s, p) = -2 log |(1 - s z + p z^2) / (1 - |z|^2)|, so that
/// |Psi_z(a, s, p)|^2 = |a|^2 exp(phi^z(s, p)).
ScalarField2C phi_z_field(cplx z);

struct OptimizerConfig {
  int radii = 64;
  int angles = 128;
  double tolerance = 1e-10;
  /// Number of best grid cells refined by local search.
  int refine_starts = 4;
};

struct SupPsiResult {
  double sup = 0.0;
  cplx argmax{0.0, 0.0};
};

/// sup over the closed disc of |Psi_z(x)|: polar grid, then local refinement.
SupPsiResult sup_psi(const PentaPoint& x, const OptimizerConfig& opt = {});

struct MembershipReport {
  PentaPoint point{};
  Criterion criterion = Criterion::All;
  double tolerance = kDefaultBand;
  double g2_value = 0.0;
  Verdict g2 = Verdict::Inside;
  /// Quantities that are undefined for the point are NaN.
  cplx beta{std::nan(""), std::nan("")};
  double bound2 = std::nan("");
  double bound3 = std::nan("");
  double sup_psi = std::nan("");
  cplx argmax_z{std::nan(""), std::nan("")};
  bool has_c2 = false, has_c3 = false, has_c4 = false;
  Verdict c2 = Verdict::Outside;
  Verdict c3 = Verdict::Outside;
  Verdict c4 = Verdict::Outside;
  Verdict verdict = Verdict::Outside;
  /// Signed distance to the active bound, positive inside.
  double margin = 0.0;
};

/// Evaluates the requested membership criteria. With Criterion::All the
/// verdicts must agree outside the band, otherwise InconsistencyError.
MembershipReport penta_contains(const PentaPoint& x, Criterion criterion = Criterion::All,
                                double tol = kDefaultBand, const OptimizerConfig& opt = {});

/// pi(z) = (z12, tr z, det z).
PentaPoint pi_map(const Matrix2& z);

/// A strict contraction z with pi(z) = x; throws LiftFailure if none is found.
Matrix2 lift_to_ball(const PentaPoint& x, double tol = kDefaultBand);

/// Minimum operator norm over the fibre pi^{-1}(x), with the minimiser.
struct FibreMinimum {
  Matrix2 z;
  double norm = 0.0;
};
FibreMinimum minimize_fibre_norm(const PentaPoint& x);

struct WeightVector {
  unsigned m1 = 0, m2 = 1, m3 = 2;
};

/// (lam^m1 a, lam^m2 s, lam^m3 p), with lam^0 = 1.
PentaPoint quasi_action(const WeightVector& m, cplx lam, const PentaPoint& x);

/// (2 lam, lam^2).
SymmetrisedPoint royal_point(cplx lam);

BoundaryClass boundary_classify(const PentaPoint& x, double tol = kDefaultBand);

}  // namespace pentageom
