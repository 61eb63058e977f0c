#include "pentageom/domains.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "nelder_mead.hpp"
#include "pentageom/errors.hpp"

namespace pentageom {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::BoundaryBand: return "boundary-band";
    case Verdict::Outside: return "outside";
  }
  return "?";
}

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::C2: return "c2";
    case Criterion::C3: return "c3";
    case Criterion::C4: return "c4";
    case Criterion::All: return "all";
  }
  return "?";
}

const char* to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::Interior: return "interior";
    case BoundaryClass::Part1: return "part1";
    case BoundaryClass::Part2: return "part2";
    case BoundaryClass::Part3: return "part3";
    case BoundaryClass::Exterior: return "exterior";
  }
  return "?";
}

Verdict compare_with_band(double value, double bound, double tol) {
  if (value < bound - tol) return Verdict::Inside;
  if (value <= bound + tol) return Verdict::BoundaryBand;
  return Verdict::Outside;
}

double g2_defining_value(cplx s, cplx p) { return std::abs(s - std::conj(s) * p) + std::norm(p); }

Verdict g2_contains(const SymmetrisedPoint& q, double tol) {
  const Verdict v = compare_with_band(g2_defining_value(q.s, q.p), 1.0, tol);
  // The defining value is also 1 on {|p| = 1, s = conj(s) p, |s| > 2}, which
  // lies outside the closure.
  if (v == Verdict::BoundaryBand && std::abs(q.s) > 2.0 + tol) return Verdict::Outside;
  return v;
}

bool in_shilov_boundary(const SymmetrisedPoint& q, double tol) {
  const EigenPair r = solve_quadratic(q.s, q.p);
  return std::abs(std::abs(r.lambda1) - 1.0) <= tol && std::abs(std::abs(r.lambda2) - 1.0) <= tol;
}

cplx compute_beta(cplx s, cplx p) {
  const double den = 1.0 - std::norm(p);
  if (std::abs(den) < kPoleThreshold) throw DegenerateDenominator("compute_beta: |p| = 1");
  return (s - std::conj(s) * p) / den;
}

double criterion2_bound(cplx s, cplx p) {
  const cplx beta = compute_beta(s, p);
  const double root = std::sqrt(std::max(0.0, 1.0 - std::norm(beta)));
  return std::abs(1.0 - 0.5 * s * std::conj(beta) / (1.0 + root));
}

double criterion3_bound(const EigenPair& roots) {
  const double d1 = std::max(0.0, 1.0 - std::norm(roots.lambda1));
  const double d2 = std::max(0.0, 1.0 - std::norm(roots.lambda2));
  return 0.5 * std::abs(1.0 - std::conj(roots.lambda2) * roots.lambda1) + 0.5 * std::sqrt(d1 * d2);
}

double phi(cplx s, cplx p) {
  const double g = g2_defining_value(s, p);
  if (!(g <= 1.0 + kDefaultBand)) {
    std::ostringstream os;
    os << "phi: (" << s << ", " << p << ") is outside the closed symmetrised bidisc";
    throw DomainError(os.str());
  }
  double bound = 0.0;
  try {
    bound = criterion2_bound(s, p);
  } catch (const DegenerateDenominator&) {
    throw DomainError("phi: undefined on the Shilov boundary (|p| = 1)");
  }
  if (!(bound > 0.0)) throw DomainError("phi: fibre radius vanishes");
  return -2.0 * std::log(bound);
}

cplx psi(cplx z, const PentaPoint& x) {
  const cplx num = x.a * (1.0 - std::norm(z));
  if (num == 0.0) return 0.0;
  const cplx den = 1.0 - x.s * z + x.p * z * z;
  if (std::abs(den) < kPoleThreshold) throw PoleError("psi: 1 - s z + p z^2 vanishes");
  return num / den;
}

ScalarField2C phi_field() {
  return {[](cplx s, cplx p) { return phi(s, p); },
          [](cplx s, cplx p) { return g2_defining_value(s, p) < 1.0; }, "phi"};
}

ScalarField2C phi_z_field(cplx z) {
  if (!(std::abs(z) < 1.0)) throw InvalidArgument("phi_z_field: z must lie in the open unit disc");
  const double scale = 1.0 - std::norm(z);
  std::ostringstream name;
  name << "phi^z(z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return {[z, scale](cplx s, cplx p) {
            const cplx den = 1.0 - s * z + p * z * z;
            if (std::abs(den) < kPoleThreshold) throw PoleError("phi^z: 1 - s z + p z^2 vanishes");
            return -2.0 * std::log(std::abs(den) / scale);
          },
          [](cplx s, cplx p) { return g2_defining_value(s, p) < 1.0; }, name.str()};
}

namespace {

// |Psi_z(x)| on the closed disc; +inf at a pole (only possible off G2).
double psi_modulus(cplx z, const PentaPoint& x) {
  const double w = 1.0 - std::norm(z);
  if (w <= 0.0) return 0.0;
  const double den = std::abs(1.0 - x.s * z + x.p * z * z);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(x.a) * w / den;
}

struct Candidate {
  cplx z;
  double value;
  double step;
};

}  // namespace

SupPsiResult sup_psi(const PentaPoint& x, const OptimizerConfig& opt) {
  SupPsiResult best{std::abs(x.a), 0.0};
  if (x.a == 0.0) return {0.0, 0.0};

  const int nr = std::max(opt.radii, 2);
  const int na = std::max(opt.angles, 4);
  // Radii cluster towards the circle, where |Psi_z| peaks sharply when a root
  // of 1 - s z + p z^2 sits just outside the disc.
  std::vector<double> radii(nr);
  for (int i = 0; i < nr; ++i) {
    const double t = 1.0 - static_cast<double>(i) / nr;
    radii[i] = 1.0 - t * t;
  }
  std::vector<double> grid(static_cast<size_t>(nr) * na);
  auto at = [&](int i, int k) -> double& { return grid[static_cast<size_t>(i) * na + k]; };
  std::vector<cplx> dirs(na);
  for (int k = 0; k < na; ++k) dirs[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / na);
  for (int i = 0; i < nr; ++i) {
    for (int k = 0; k < na; ++k) at(i, k) = i == 0 ? std::abs(x.a) : psi_modulus(radii[i] * dirs[k], x);
  }

  std::vector<Candidate> candidates;
  candidates.push_back({0.0, std::abs(x.a), 0.25 * radii[1]});
  for (int i = 1; i < nr; ++i) {
    for (int k = 0; k < na; ++k) {
      const double v = at(i, k);
      const double up = i + 1 < nr ? at(i + 1, k) : 0.0;
      const double down = at(i - 1, k);
      const double left = at(i, (k + na - 1) % na);
      const double right = at(i, (k + 1) % na);
      if (v >= up && v >= down && v >= left && v >= right) {
        const double dr = (i + 1 < nr ? radii[i + 1] : 1.0) - radii[i];
        const double da = radii[i] * 2.0 * std::numbers::pi / na;
        candidates.push_back({radii[i] * dirs[k], v, 0.5 * std::min(dr, da)});
      }
    }
  }

  // Radial probes towards each root of 1 - s z + p z^2 (z = 1/lambda).
  const EigenPair roots = solve_quadratic(x.s, x.p);
  for (cplx lam : {roots.lambda1, roots.lambda2}) {
    if (std::abs(lam) == 0.0) continue;
    const cplx dir = std::conj(lam) / std::abs(lam);
    Candidate c{0.0, -1.0, 0.0};
    for (int j = 1; j <= 40; ++j) {
      const double r = 1.0 - std::ldexp(1.0, -j);
      const double v = psi_modulus(r * dir, x);
      if (v > c.value) c = {r * dir, v, 0.25 * (1.0 - r)};
    }
    if (c.value >= 0.0) candidates.push_back(c);
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& l, const Candidate& r) { return l.value > r.value; });
  const size_t grid_starts = static_cast<size_t>(std::max(opt.refine_starts, 1));

  auto objective = [&](const detail::Point2& q) {
    const cplx z{q[0], q[1]};
    const double m = std::abs(z);
    if (m >= 1.0) return m - 1.0;
    return -psi_modulus(z, x);
  };

  size_t refined = 0;
  for (const Candidate& c : candidates) {
    if (c.value > best.sup) best = {c.value, c.z};
    if (refined >= grid_starts) continue;
    ++refined;
    detail::NelderMeadOptions nm;
    nm.initial_step = std::max(c.step, 1e-12);
    nm.xtol = std::min(1e-3 * opt.tolerance, 1e-3 * nm.initial_step);
    nm.ftol = 1e-16;
    const auto r = detail::nelder_mead(objective, {c.z.real(), c.z.imag()}, nm);
    if (-r.f > best.sup) best = {-r.f, {r.x[0], r.x[1]}};
  }
  // The root probes are always refined, they catch peaks narrower than the grid.
  for (const Candidate& c : candidates) {
    if (c.step == 0.0 || std::abs(c.z) < radii[nr - 1]) continue;
    detail::NelderMeadOptions nm;
    nm.initial_step = std::max(c.step, 1e-14);
    nm.xtol = std::min(1e-3 * opt.tolerance, 1e-3 * nm.initial_step);
    nm.ftol = 1e-16;
    const auto r = detail::nelder_mead(objective, {c.z.real(), c.z.imag()}, nm);
    if (-r.f > best.sup) best = {-r.f, {r.x[0], r.x[1]}};
  }
  return best;
}

MembershipReport penta_contains(const PentaPoint& x, Criterion criterion, double tol,
                                const OptimizerConfig& opt) {
  MembershipReport rep;
  rep.point = x;
  rep.criterion = criterion;
  rep.tolerance = tol;
  rep.g2_value = g2_defining_value(x.s, x.p);
  rep.g2 = g2_contains({x.s, x.p}, tol);

  const bool want2 = criterion == Criterion::C2 || criterion == Criterion::All;
  const bool want3 = criterion == Criterion::C3 || criterion == Criterion::All;
  const bool want4 = criterion == Criterion::C4 || criterion == Criterion::All;
  const double abs_a = std::abs(x.a);

  auto set_all = [&](Verdict v) {
    rep.has_c2 = want2;
    rep.has_c3 = want3;
    rep.has_c4 = want4;
    rep.c2 = rep.c3 = rep.c4 = v;
    rep.verdict = v;
  };

  if (rep.g2 == Verdict::Outside) {
    set_all(Verdict::Outside);
    rep.margin = 1.0 - rep.g2_value;
    return rep;
  }

  const EigenPair roots = solve_quadratic(x.s, x.p);
  rep.bound3 = criterion3_bound(roots);

  if (rep.g2 == Verdict::BoundaryBand) {
    // (s, p) is on the boundary of G2, so x is at best in the closure of P.
    try {
      rep.beta = compute_beta(x.s, x.p);
      rep.bound2 = criterion2_bound(x.s, x.p);
    } catch (const DegenerateDenominator&) {
    }
    set_all(abs_a <= rep.bound3 + tol ? Verdict::BoundaryBand : Verdict::Outside);
    rep.margin = std::min(1.0 - rep.g2_value, rep.bound3 - abs_a);
    return rep;
  }

  rep.beta = compute_beta(x.s, x.p);
  rep.bound2 = criterion2_bound(x.s, x.p);
  if (want2) {
    rep.has_c2 = true;
    rep.c2 = compare_with_band(abs_a, rep.bound2, tol);
  }
  if (want3) {
    rep.has_c3 = true;
    rep.c3 = compare_with_band(abs_a, rep.bound3, tol);
  }
  if (want4) {
    const SupPsiResult sup = sup_psi(x, opt);
    rep.sup_psi = sup.sup;
    rep.argmax_z = sup.argmax;
    rep.has_c4 = true;
    rep.c4 = compare_with_band(sup.sup, 1.0, tol);
  }

  switch (criterion) {
    case Criterion::C2:
      rep.verdict = rep.c2;
      rep.margin = rep.bound2 - abs_a;
      break;
    case Criterion::C3:
      rep.verdict = rep.c3;
      rep.margin = rep.bound3 - abs_a;
      break;
    case Criterion::C4:
      rep.verdict = rep.c4;
      rep.margin = 1.0 - rep.sup_psi;
      break;
    case Criterion::All: {
      const std::array<Verdict, 3> vs{rep.c2, rep.c3, rep.c4};
      const bool any_in = std::find(vs.begin(), vs.end(), Verdict::Inside) != vs.end();
      const bool any_out = std::find(vs.begin(), vs.end(), Verdict::Outside) != vs.end();
      if (any_in && any_out) {
        std::ostringstream os;
        os.precision(17);
        os << "membership criteria disagree at (" << x.a << ", " << x.s << ", " << x.p << "): c2 "
           << to_string(rep.c2) << " (bound " << rep.bound2 << "), c3 " << to_string(rep.c3) << " (bound "
           << rep.bound3 << "), c4 " << to_string(rep.c4) << " (sup " << rep.sup_psi << "), |a| = " << abs_a;
        throw InconsistencyError(os.str());
      }
      rep.verdict = any_out ? Verdict::Outside : (any_in && rep.c2 == rep.c3 && rep.c3 == rep.c4)
                                                     ? Verdict::Inside
                                                     : Verdict::BoundaryBand;
      rep.margin = rep.bound2 - abs_a;
      break;
    }
  }
  rep.margin = std::min(rep.margin, 1.0 - rep.g2_value);
  return rep;
}

PentaPoint pi_map(const Matrix2& z) { return {z.z12, z.trace(), z.det()}; }

namespace {

Matrix2 fibre_matrix(const PentaPoint& x, cplx t) {
  return {t, x.a, (t * (x.s - t) - x.p) / x.a, x.s - t};
}

}  // namespace

FibreMinimum minimize_fibre_norm(const PentaPoint& x) {
  const EigenPair roots = solve_quadratic(x.s, x.p);
  if (x.a == 0.0) {
    const Matrix2 z = Matrix2::diag(roots.lambda1, roots.lambda2);
    return {z, std::max(std::abs(roots.lambda1), std::abs(roots.lambda2))};
  }
  auto objective = [&](const detail::Point2& q) { return operator_norm(fibre_matrix(x, {q[0], q[1]})); };
  detail::NelderMeadOptions nm;
  nm.initial_step = 0.25 * std::clamp(std::abs(x.a), 1e-6, 1.0);
  nm.xtol = 1e-14;
  nm.ftol = 1e-16;
  nm.max_evaluations = 6000;

  FibreMinimum best{{}, std::numeric_limits<double>::infinity()};
  for (cplx start : {0.5 * x.s, roots.lambda1, roots.lambda2}) {
    const auto r = detail::nelder_mead(objective, {start.real(), start.imag()}, nm);
    if (r.f < best.norm) best = {fibre_matrix(x, {r.x[0], r.x[1]}), r.f};
  }
  return best;
}

Matrix2 lift_to_ball(const PentaPoint& x, double tol) {
  const FibreMinimum m = minimize_fibre_norm(x);
  if (!(m.norm < 1.0 - 0.5 * tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "lift_to_ball: smallest norm found over the fibre is " << m.norm
       << "; the point is outside the pentablock or within the tolerance of its boundary";
    throw LiftFailure(os.str());
  }
  return m.z;
}

namespace {

cplx ipow(cplx lam, unsigned k) {
  cplx out{1.0, 0.0};
  for (unsigned i = 0; i < k; ++i) out *= lam;
  return out;
}

}  // namespace

PentaPoint quasi_action(const WeightVector& m, cplx lam, const PentaPoint& x) {
  return {ipow(lam, m.m1) * x.a, ipow(lam, m.m2) * x.s, ipow(lam, m.m3) * x.p};
}

SymmetrisedPoint royal_point(cplx lam) { return {2.0 * lam, lam * lam}; }

BoundaryClass boundary_classify(const PentaPoint& x, double tol) {
  const Verdict gv = g2_contains({x.s, x.p}, tol);
  if (gv == Verdict::Outside) return BoundaryClass::Exterior;
  const double abs_a = std::abs(x.a);

  if (gv == Verdict::Inside) {
    const double b2 = criterion2_bound(x.s, x.p);
    const Verdict fibre = compare_with_band(abs_a, b2, tol);
    if (fibre == Verdict::Inside) return BoundaryClass::Interior;
    // |a|^2 = exp(-phi) = b2^2 on the smooth part of the boundary.
    if (fibre == Verdict::BoundaryBand || std::abs(abs_a * abs_a - b2 * b2) <= tol) return BoundaryClass::Part1;
    return BoundaryClass::Exterior;
  }

  const EigenPair roots = solve_quadratic(x.s, x.p);
  const bool u1 = std::abs(std::abs(roots.lambda1) - 1.0) <= tol;
  const bool u2 = std::abs(std::abs(roots.lambda2) - 1.0) <= tol;
  const double b3 = criterion3_bound(roots);
  if (u1 != u2 && abs_a < b3 - tol) return BoundaryClass::Part2;
  if (abs_a <= b3 + tol) return BoundaryClass::Part3;
  return BoundaryClass::Exterior;
}

}  // namespace pentageom
