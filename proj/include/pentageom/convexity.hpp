#pragma once

// Numerical certificates for the convexity-type properties of the pentablock:
// C-convexity of phi and phi^z along complex lines, Levi forms of the two
// smooth boundary parts, analytic discs in the boundary, and hyperplanes
// that witness linear convexity at boundary and exterior points.

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "pentageom/complexalg.hpp"
#include "pentageom/domains.hpp"

namespace pentageom {

using Vec2C = std::array<cplx, 2>;
using Vec3C = std::array<cplx, 3>;

/// Initial step of the refined line jets; halved until the stencil fits the domain.
inline constexpr double kLineStep = 1e-2;

/// Second-order data of t -> u(base + t direction) at t0.
struct ConvexityReport {
  Vec2C base{};
  Vec2C direction{};
  cplx t0{};
  double h = kLineStep;
  double lhs = 0.0;          // u_{t tbar}
  double rhs_paper = 0.0;    // |u_tt - u_t^2|^2
  double rhs_standard = 0.0; // |u_tt - u_t^2|
  double margin_paper = 0.0;
  double margin_standard = 0.0;
  double error_estimate = 0.0;
  /// Set by the sup-family check when the maximising member changes on the stencil.
  bool active_switch = false;
};

/// Checks u_{t tbar} >= |u_tt - u_t^2|^2 (and the unsquared variant) on a line.
ConvexityReport cconvexity_check(const ScalarField2C& u, const Vec2C& base, const Vec2C& direction,
                                 cplx t0 = 0.0, double h = kLineStep);

/// Pointwise maximum of a finite family; the domain is the common domain.
ScalarField2C sup_field(std::vector<ScalarField2C> family);

/// Index of the family member attaining the maximum at (s, p).
int active_member(const std::vector<ScalarField2C>& family, cplx s, cplx p);

/// cconvexity_check for the maximum of the family, flagging stencils on which
/// the maximiser is not constant.
ConvexityReport sup_family_check(const std::vector<ScalarField2C>& family, const Vec2C& base,
                                 const Vec2C& direction, cplx t0 = 0.0, double h = kLineStep);

/// phi^z for z on a polar grid (radii r_i = rmax (i+1)/radii, angles uniform).
std::vector<ScalarField2C> phi_z_family(int radii, int angles, double rmax);

/// max |u_{t tbar}| over random points of G2 (roots in the 0.9-disc) and unit directions.
double pluriharmonic_defect(const ScalarField2C& u, int samples, std::uint64_t seed);

/// Holomorphic gradient (dr/da, dr/ds, dr/dp) of the local defining function
/// at a boundary point (log|a|^2 + phi on part 1, log|l|^2 on part 2).
Vec3C defining_gradient(const PentaPoint& x);

/// Orthonormal basis of the complex tangent space at a part-1 point.
std::array<Vec3C, 2> complex_tangent_basis(const PentaPoint& x);

struct LeviResult {
  PentaPoint point{};
  Vec3C tangent{};
  BoundaryClass part = BoundaryClass::Part1;
  double value = 0.0;
  double error_estimate = 0.0;
  /// |<grad r, v>|; zero for complex tangent vectors.
  double tangency_residual = 0.0;
};

/// Levi form r_{t tbar} of the local defining function along x + t v.
/// Supported on parts 1 and 2; throws EvaluationFailure elsewhere.
LeviResult levi_form(const PentaPoint& x, const Vec3C& v, double h = kLineStep);

struct DiscTerm {
  std::array<int, 2> powers{};
  Vec3C coeff{};
};

struct AnalyticDisc {
  enum class Tag { Part1Foliation, Part2Foliation, RoyalEmbedding };
  Tag tag = Tag::RoyalEmbedding;
  /// Polynomial map (t1, t2) -> sum coeff t1^k1 t2^k2.
  std::vector<DiscTerm> terms;
  /// Parameter values at which the disc passes through the base point.
  std::array<cplx, 2> center{};
  int parameters = 1;

  Vec3C evaluate(cplx t1, cplx t2 = 0.0) const;
  PentaPoint point(cplx t1, cplx t2 = 0.0) const;
};

const char* to_string(AnalyticDisc::Tag t);

/// lam -> (0, 2 lam, lam^2).
AnalyticDisc royal_disc();

/// t -> pi(U diag(1, t) V) through a part-1 point, from an SVD of a minimal-norm lift.
AnalyticDisc foliation_disc_part1(const PentaPoint& x, double tol = kDefaultBand);

/// (a, l) -> (a, l1 + l, l1 l) through a part-2 point with unimodular root l1.
AnalyticDisc foliation_disc_part2(const PentaPoint& x, double tol = 1e-8);

/// C x {point + t direction}; clearance = min over the line of the G2 defining value minus 1.
struct ProductLine {
  Vec2C point{};
  Vec2C direction{};
  double clearance = 0.0;
};

/// {Psi_z = omega}.
struct PsiLevelSet {
  cplx z{};
  cplx omega{};
};

using HyperplaneWitness = std::variant<ProductLine, PsiLevelSet>;

/// A complex hyperplane through x that misses the pentablock. Throws
/// InvalidArgument for interior points and WitnessNotFound if the search fails.
HyperplaneWitness linconvex_witness(const PentaPoint& x, double tol = kDefaultBand,
                                    const OptimizerConfig& opt = {});

/// Distance-like residual of y from the witness hyperplane (0 on it).
double witness_residual(const HyperplaneWitness& w, const PentaPoint& y);

struct WitnessVerification {
  int samples = 0;
  double min_residual = 0.0;
  int projected_checks = 0;
};

/// Samples the pentablock and projects each sample onto the hyperplane along
/// a coordinate fibre. Throws WitnessViolation if a sample lies on the
/// hyperplane or a projection lands strictly inside.
WitnessVerification witness_verify(const HyperplaneWitness& w, int n, std::uint64_t seed);

}  // namespace pentageom
