#include "pentageom/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "nelder_mead.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/sampling.hpp"

namespace pentageom {

namespace {

constexpr int kMaxHalvings = 20;

std::array<cplx, 9> stencil_offsets(double h) {
  return {cplx{0, 0}, {h, 0}, {-h, 0}, {0, h}, {0, -h}, {h, h}, {h, -h}, {-h, h}, {-h, -h}};
}

// Largest step h / 2^k whose 9-point stencil around t0 lies in the domain.
template <class InDomain>
double fit_step(InDomain in_domain, cplx t0, double h, const char* what) {
  for (int k = 0; k <= kMaxHalvings; ++k, h *= 0.5) {
    bool ok = true;
    for (cplx d : stencil_offsets(h)) ok = ok && in_domain(t0 + d);
    if (ok) return h;
  }
  std::ostringstream os;
  os << what << ": no stencil around t0 = " << t0 << " fits inside the domain";
  throw EvaluationFailure(os.str());
}

Vec2C normalized(const Vec2C& v) {
  const double n = std::hypot(std::abs(v[0]), std::abs(v[1]));
  if (!(n > 0.0)) throw InvalidArgument("direction must be non-zero");
  return {v[0] / n, v[1] / n};
}

Vec3C normalized(const Vec3C& v) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  if (!(n > 0.0)) throw InvalidArgument("direction must be non-zero");
  return {v[0] / n, v[1] / n, v[2] / n};
}

cplx hdot(const Vec3C& u, const Vec3C& w) {
  return u[0] * std::conj(w[0]) + u[1] * std::conj(w[1]) + u[2] * std::conj(w[2]);
}

double norm3(const Vec3C& v) { return std::sqrt(std::real(hdot(v, v))); }

ConvexityReport line_report(const ScalarField2C& u, const Vec2C& base, const Vec2C& direction, cplx t0,
                            double h) {
  if (!(h > 0.0)) throw InvalidArgument("step must be positive");
  const Vec2C d = normalized(direction);
  auto at = [&](cplx t) { return Vec2C{base[0] + t * d[0], base[1] + t * d[1]}; };
  auto in_domain = [&](cplx t) {
    const Vec2C q = at(t);
    return u.contains(q[0], q[1]);
  };

  ConvexityReport rep;
  rep.base = base;
  rep.direction = d;
  rep.t0 = t0;
  rep.h = fit_step(in_domain, t0, h, u.name.c_str());

  const ComplexField g = [&](cplx t) {
    const Vec2C q = at(t);
    return u(q[0], q[1]);
  };
  const RefinedJet rj = wirtinger_jet_refined(g, t0, rep.h);
  const WirtingerJet& j = rj.jet;
  const double defect = std::abs(j.d_zz - j.d_z * j.d_z);
  rep.lhs = j.d_zzbar.real();
  rep.rhs_standard = defect;
  rep.rhs_paper = defect * defect;
  rep.margin_standard = rep.lhs - rep.rhs_standard;
  rep.margin_paper = rep.lhs - rep.rhs_paper;
  rep.error_estimate = rj.delta;
  return rep;
}

}  // namespace

ConvexityReport cconvexity_check(const ScalarField2C& u, const Vec2C& base, const Vec2C& direction, cplx t0,
                                 double h) {
  return line_report(u, base, direction, t0, h);
}

ScalarField2C sup_field(std::vector<ScalarField2C> family) {
  if (family.empty()) throw InvalidArgument("sup_field: empty family");
  auto shared = std::make_shared<std::vector<ScalarField2C>>(std::move(family));
  return {[shared](cplx s, cplx p) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& f : *shared) best = std::max(best, f(s, p));
            return best;
          },
          [shared](cplx s, cplx p) {
            return std::all_of(shared->begin(), shared->end(), [&](const auto& f) { return f.contains(s, p); });
          },
          "sup(" + std::to_string(shared->size()) + " fields)"};
}

int active_member(const std::vector<ScalarField2C>& family, cplx s, cplx p) {
  int best = -1;
  double value = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < family.size(); ++i) {
    const double v = family[i](s, p);
    if (v > value) {
      value = v;
      best = static_cast<int>(i);
    }
  }
  return best;
}

ConvexityReport sup_family_check(const std::vector<ScalarField2C>& family, const Vec2C& base,
                                 const Vec2C& direction, cplx t0, double h) {
  ConvexityReport rep = line_report(sup_field(family), base, direction, t0, h);
  const Vec2C& d = rep.direction;
  int centre = -1;
  for (cplx off : stencil_offsets(rep.h)) {
    const cplx t = t0 + off;
    const int k = active_member(family, base[0] + t * d[0], base[1] + t * d[1]);
    if (centre < 0) centre = k;
    if (k != centre) rep.active_switch = true;
  }
  return rep;
}

std::vector<ScalarField2C> phi_z_family(int radii, int angles, double rmax) {
  if (radii <= 0 || angles <= 0 || !(rmax > 0.0 && rmax < 1.0)) {
    throw InvalidArgument("phi_z_family: need positive counts and 0 < rmax < 1");
  }
  std::vector<ScalarField2C> out;
  for (int i = 0; i < radii; ++i) {
    const double r = rmax * (i + 1) / radii;
    for (int k = 0; k < angles; ++k) out.push_back(phi_z_field(std::polar(r, 2.0 * std::numbers::pi * k / angles)));
  }
  return out;
}

double pluriharmonic_defect(const ScalarField2C& u, int samples, std::uint64_t seed) {
  if (samples <= 0) throw InvalidArgument("pluriharmonic_defect: samples must be positive");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const SymmetrisedPoint q = random_g2_point(rng, 0.9);
    const Vec2C dir{random_in_disc(rng), random_in_disc(rng)};
    const ConvexityReport r = line_report(u, {q.s, q.p}, dir, 0.0, kLineStep);
    worst = std::max(worst, std::abs(r.lhs));
  }
  return worst;
}

namespace {

constexpr double kPartDetectTol = 1e-8;

// Local defining function of the boundary near x, with its domain.
struct LocalDefining {
  BoundaryClass part;
  std::function<double(const Vec3C&)> r;
  std::function<bool(const Vec3C&)> domain;
  cplx frozen_root;
};

LocalDefining local_defining(const PentaPoint& x) {
  const BoundaryClass part = boundary_classify(x, kPartDetectTol);
  if (part == BoundaryClass::Part1) {
    return {part, [](const Vec3C& y) { return std::log(std::norm(y[0])) + phi(y[1], y[2]); },
            [](const Vec3C& y) { return y[0] != 0.0 && g2_defining_value(y[1], y[2]) < 1.0; }, 0.0};
  }
  if (part == BoundaryClass::Part2) {
    const EigenPair roots = solve_quadratic(x.s, x.p);
    const bool first = std::abs(std::abs(roots.lambda1) - 1.0) <= std::abs(std::abs(roots.lambda2) - 1.0);
    const cplx frozen = first ? roots.lambda1 : roots.lambda2;
    // log |l(s, p)|^2 for the root l that continues the unimodular one.
    auto tracked = [frozen](const Vec3C& y) {
      const EigenPair r = solve_quadratic(y[1], y[2]);
      return std::abs(r.lambda1 - frozen) <= std::abs(r.lambda2 - frozen) ? r.lambda1 : r.lambda2;
    };
    return {part, [tracked](const Vec3C& y) { return std::log(std::norm(tracked(y))); },
            [](const Vec3C& y) { return std::abs(y[1] * y[1] - 4.0 * y[2]) > 1e-10; }, frozen};
  }
  std::ostringstream os;
  os << "no smooth local defining function: the point is classified as " << to_string(part);
  throw EvaluationFailure(os.str());
}

}  // namespace

Vec3C defining_gradient(const PentaPoint& x) {
  const LocalDefining ld = local_defining(x);
  if (ld.part == BoundaryClass::Part2) {
    // l^2 - s l + p = 0 gives dl = (l ds - dp) / (2 l - s).
    const cplx l = ld.frozen_root;
    const cplx den = 2.0 * l - x.s;
    if (std::abs(den) < kPoleThreshold) throw DegenerateGradient("defining_gradient: repeated root");
    return {0.0, 1.0 / den, -1.0 / (l * den)};
  }
  // d/da log|a|^2 = 1/a; the phi derivatives are taken numerically.
  const Vec3C base{x.a, x.s, x.p};
  Vec3C grad{1.0 / x.a, 0.0, 0.0};
  for (int k = 1; k <= 2; ++k) {
    auto in_domain = [&](cplx t) {
      Vec3C y = base;
      y[k] += t;
      return ld.domain(y);
    };
    const double h = fit_step(in_domain, 0.0, kLineStep, "defining_gradient");
    const ComplexField f = [&](cplx t) {
      Vec3C y = base;
      y[k] += t;
      return ld.r(y);
    };
    grad[k] = wirtinger_jet_refined(f, 0.0, h).jet.d_z;
  }
  return grad;
}

std::array<Vec3C, 2> complex_tangent_basis(const PentaPoint& x) {
  const Vec3C g = defining_gradient(x);
  const double gn = norm3(g);
  if (!(gn > 1e-12)) throw DegenerateGradient("complex_tangent_basis: gradient vanishes");
  // Tangent vectors v satisfy sum g_j v_j = 0, i.e. are orthogonal to conj(g).
  const Vec3C n{std::conj(g[0]) / gn, std::conj(g[1]) / gn, std::conj(g[2]) / gn};

  auto project = [](Vec3C v, const Vec3C& e) {
    const cplx c = hdot(v, e);
    for (int i = 0; i < 3; ++i) v[i] -= c * e[i];
    return v;
  };
  auto unit = [](int k) {
    Vec3C e{};
    e[k] = 1.0;
    return e;
  };
  // Gram-Schmidt on the coordinate vectors, taking the largest residual each time.
  std::array<Vec3C, 2> basis{};
  std::array<bool, 3> used{};
  for (int b = 0; b < 2; ++b) {
    int pick = -1;
    double best = -1.0;
    Vec3C best_v{};
    for (int k = 0; k < 3; ++k) {
      if (used[k]) continue;
      Vec3C v = project(unit(k), n);
      for (int c = 0; c < b; ++c) v = project(v, basis[c]);
      const double m = norm3(v);
      if (m > best + 1e-12) {
        best = m;
        pick = k;
        best_v = v;
      }
    }
    used[pick] = true;
    basis[b] = {best_v[0] / best, best_v[1] / best, best_v[2] / best};
  }
  return basis;
}

LeviResult levi_form(const PentaPoint& x, const Vec3C& v, double h) {
  if (!(h > 0.0)) throw InvalidArgument("levi_form: step must be positive");
  const LocalDefining ld = local_defining(x);
  const Vec3C d = normalized(v);
  const Vec3C base{x.a, x.s, x.p};
  auto at = [&](cplx t) { return Vec3C{base[0] + t * d[0], base[1] + t * d[1], base[2] + t * d[2]}; };

  LeviResult out;
  out.point = x;
  out.tangent = d;
  out.part = ld.part;
  const double step = fit_step([&](cplx t) { return ld.domain(at(t)); }, 0.0, h, "levi_form");
  const RefinedJet rj = wirtinger_jet_refined([&](cplx t) { return ld.r(at(t)); }, 0.0, step);
  out.value = rj.jet.d_zzbar.real();
  out.error_estimate = rj.delta;

  const Vec3C g = defining_gradient(x);
  out.tangency_residual = std::abs(g[0] * d[0] + g[1] * d[1] + g[2] * d[2]);
  return out;
}

Vec3C AnalyticDisc::evaluate(cplx t1, cplx t2) const {
  Vec3C out{};
  for (const auto& term : terms) {
    cplx m{1.0, 0.0};
    for (int k = 0; k < term.powers[0]; ++k) m *= t1;
    for (int k = 0; k < term.powers[1]; ++k) m *= t2;
    for (int i = 0; i < 3; ++i) out[i] += term.coeff[i] * m;
  }
  return out;
}

PentaPoint AnalyticDisc::point(cplx t1, cplx t2) const {
  const Vec3C v = evaluate(t1, t2);
  return {v[0], v[1], v[2]};
}

const char* to_string(AnalyticDisc::Tag t) {
  switch (t) {
    case AnalyticDisc::Tag::Part1Foliation: return "part1-foliation";
    case AnalyticDisc::Tag::Part2Foliation: return "part2-foliation";
    case AnalyticDisc::Tag::RoyalEmbedding: return "royal-embedding";
  }
  return "?";
}

AnalyticDisc royal_disc() {
  AnalyticDisc d;
  d.tag = AnalyticDisc::Tag::RoyalEmbedding;
  d.terms = {{{1, 0}, {0.0, 2.0, 0.0}}, {{2, 0}, {0.0, 0.0, 1.0}}};
  return d;
}

AnalyticDisc foliation_disc_part1(const PentaPoint& x, double tol) {
  const BoundaryClass c = boundary_classify(x, tol);
  if (c != BoundaryClass::Part1) {
    throw ClassificationError(std::string("foliation_disc_part1: point is ") + to_string(c));
  }
  const FibreMinimum fm = minimize_fibre_norm(x);
  if (std::abs(fm.norm - 1.0) > 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "foliation_disc_part1: minimal lift has norm " << fm.norm << ", expected 1";
    throw LiftFailure(os.str());
  }
  const Svd2 sv = svd2(fm.z);
  // U diag(1, t) V = A + t B with A = u1 v1, B = u2 v2 (rank one each).
  const Matrix2 a{sv.u.z11 * sv.v.z11, sv.u.z11 * sv.v.z12, sv.u.z21 * sv.v.z11, sv.u.z21 * sv.v.z12};
  const Matrix2 b{sv.u.z12 * sv.v.z21, sv.u.z12 * sv.v.z22, sv.u.z22 * sv.v.z21, sv.u.z22 * sv.v.z22};
  AnalyticDisc d;
  d.tag = AnalyticDisc::Tag::Part1Foliation;
  d.terms = {{{0, 0}, {a.z12, a.trace(), 0.0}}, {{1, 0}, {b.z12, b.trace(), sv.u.det() * sv.v.det()}}};
  d.center = {sv.sigma2, 0.0};
  return d;
}

AnalyticDisc foliation_disc_part2(const PentaPoint& x, double tol) {
  const EigenPair roots = solve_quadratic(x.s, x.p);
  const bool u1 = std::abs(std::abs(roots.lambda1) - 1.0) <= tol;
  const bool u2 = std::abs(std::abs(roots.lambda2) - 1.0) <= tol;
  if (u1 == u2) {
    throw ClassificationError(u1 ? "foliation_disc_part2: both roots are unimodular"
                                 : "foliation_disc_part2: no unimodular root");
  }
  const cplx l1 = u1 ? roots.lambda1 / std::abs(roots.lambda1) : roots.lambda2 / std::abs(roots.lambda2);
  const cplx l2 = u1 ? roots.lambda2 : roots.lambda1;
  AnalyticDisc d;
  d.tag = AnalyticDisc::Tag::Part2Foliation;
  d.parameters = 2;
  d.terms = {{{0, 0}, {0.0, l1, 0.0}}, {{1, 0}, {1.0, 0.0, 0.0}}, {{0, 1}, {0.0, 1.0, l1}}};
  d.center = {x.a, l2};
  return d;
}

namespace {

// Minimum of (G2 defining value - 1) over the complex line q + t d.
double line_clearance(const Vec2C& q, const Vec2C& d, int grid, int starts, int evals) {
  const double reach = 3.5 + std::abs(q[0]) + std::abs(q[1]);
  auto f = [&](cplx t) { return g2_defining_value(q[0] + t * d[0], q[1] + t * d[1]) - 1.0; };

  struct Cell {
    double v;
    cplx t;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i) {
    for (int k = 0; k < grid; ++k) {
      const cplx t{-reach + 2.0 * reach * (i + 0.5) / grid, -reach + 2.0 * reach * (k + 0.5) / grid};
      cells.push_back({f(t), t});
    }
  }
  cells.push_back({f(0.0), 0.0});
  const size_t keep = std::min(cells.size(), static_cast<size_t>(starts));
  std::partial_sort(cells.begin(), cells.begin() + static_cast<long>(keep), cells.end(),
                    [](const Cell& x, const Cell& y) { return x.v < y.v; });

  detail::NelderMeadOptions nm;
  nm.initial_step = 2.0 * reach / grid;
  nm.max_evaluations = evals;
  nm.restarts = 1;
  double best = cells.front().v;
  for (size_t i = 0; i < keep; ++i) {
    const auto r = detail::nelder_mead([&](const detail::Point2& u) { return f({u[0], u[1]}); },
                                       {cells[i].t.real(), cells[i].t.imag()}, nm);
    best = std::min(best, r.f);
  }
  return best;
}

Vec2C direction_from_angles(double theta, double psi) {
  return {std::cos(theta), std::polar(std::sin(theta), psi)};
}

ProductLine search_product_line(const Vec2C& q) {
  struct Candidate {
    double clearance;
    double theta, psi;
  };
  std::vector<Candidate> coarse;
  constexpr int kTheta = 13;
  constexpr int kPsi = 24;
  for (int i = 0; i < kTheta; ++i) {
    const double theta = 0.5 * std::numbers::pi * i / (kTheta - 1);
    const int npsi = (i == 0) ? 1 : kPsi;
    for (int k = 0; k < npsi; ++k) {
      const double psi = 2.0 * std::numbers::pi * k / kPsi;
      coarse.push_back({line_clearance(q, direction_from_angles(theta, psi), 24, 2, 200), theta, psi});
    }
  }
  std::sort(coarse.begin(), coarse.end(),
            [](const Candidate& x, const Candidate& y) { return x.clearance > y.clearance; });

  detail::NelderMeadOptions nm;
  nm.initial_step = 0.1;
  nm.max_evaluations = 150;
  nm.restarts = 1;
  Candidate best = coarse.front();
  for (int i = 0; i < 3 && i < static_cast<int>(coarse.size()); ++i) {
    const auto r = detail::nelder_mead(
        [&](const detail::Point2& u) { return -line_clearance(q, direction_from_angles(u[0], u[1]), 40, 3, 300); },
        {coarse[i].theta, coarse[i].psi}, nm);
    if (-r.f > best.clearance) best = {-r.f, r.x[0], r.x[1]};
  }

  ProductLine out;
  out.point = q;
  out.direction = direction_from_angles(best.theta, best.psi);
  // Dense recomputation for the reported clearance.
  out.clearance = line_clearance(q, out.direction, 160, 8, 2000);
  return out;
}

}  // namespace

HyperplaneWitness linconvex_witness(const PentaPoint& x, double tol, const OptimizerConfig& opt) {
  const Verdict gv = g2_contains({x.s, x.p}, tol);
  if (gv == Verdict::Inside) {
    const MembershipReport m = penta_contains(x, Criterion::C2, tol, opt);
    if (m.verdict == Verdict::Inside) throw InvalidArgument("linconvex_witness: point is interior");
    const SupPsiResult sup = sup_psi(x, opt);
    cplx omega = psi(sup.argmax, x);
    if (!(std::abs(omega) >= 1.0 - 1e-6)) {
      std::ostringstream os;
      os << "linconvex_witness: sup |Psi_z| = " << sup.sup << " is below 1 at a non-interior point";
      throw WitnessNotFound(os.str());
    }
    if (std::abs(omega) < 1.0) omega /= std::abs(omega);
    return PsiLevelSet{sup.argmax, omega};
  }

  const ProductLine line = search_product_line({x.s, x.p});
  if (line.clearance >= -tol) return line;

  if (x.a != 0.0 && gv == Verdict::BoundaryBand) {
    const SupPsiResult sup = sup_psi(x, opt);
    if (std::isfinite(sup.sup) && sup.sup >= 1.0 - tol && std::norm(sup.argmax) < 1.0) {
      cplx omega = psi(sup.argmax, x);
      if (std::abs(omega) < 1.0) omega /= std::abs(omega);
      return PsiLevelSet{sup.argmax, omega};
    }
  }
  std::ostringstream os;
  os << "linconvex_witness: best complex line through (s, p) dips " << -line.clearance << " into G2";
  throw WitnessNotFound(os.str());
}

namespace {

// Hyperplane c . (a, s, p) = k for a Psi level set.
struct LinearForm {
  Vec3C c;
  cplx k;
};

LinearForm level_set_form(const PsiLevelSet& w) {
  // a (1 - |z|^2) - omega (1 - s z + p z^2) = 0
  return {{1.0 - std::norm(w.z), w.omega * w.z, -w.omega * w.z * w.z}, w.omega};
}

}  // namespace

double witness_residual(const HyperplaneWitness& w, const PentaPoint& y) {
  if (const auto* l = std::get_if<ProductLine>(&w)) {
    const Vec2C d = normalized(l->direction);
    const cplx ds = y.s - l->point[0];
    const cplx dp = y.p - l->point[1];
    return std::abs(ds * d[1] - dp * d[0]);
  }
  const LinearForm f = level_set_form(std::get<PsiLevelSet>(w));
  const cplx v = f.c[0] * y.a + f.c[1] * y.s + f.c[2] * y.p - f.k;
  return std::abs(v) / std::sqrt(std::norm(f.c[0]) + std::norm(f.c[1]) + std::norm(f.c[2]));
}

WitnessVerification witness_verify(const HyperplaneWitness& w, int n, std::uint64_t seed) {
  if (n <= 0) throw InvalidArgument("witness_verify: sample count must be positive");
  SamplerConfig cfg;
  cfg.count = n;
  cfg.seed = seed;
  const std::vector<PentaPoint> pts = sample_penta(cfg);

  WitnessVerification out;
  out.samples = n;
  out.min_residual = std::numeric_limits<double>::infinity();
  auto fail = [](const PentaPoint& y, const std::string& why) {
    std::ostringstream os;
    os.precision(17);
    os << "witness_verify: sample (" << y.a << ", " << y.s << ", " << y.p << ") " << why;
    throw WitnessViolation(os.str());
  };

  for (const PentaPoint& y : pts) {
    const double r = witness_residual(w, y);
    out.min_residual = std::min(out.min_residual, r);
    if (r < 1e-8) fail(y, "lies on the hyperplane");

    if (const auto* l = std::get_if<ProductLine>(&w)) {
      const Vec2C d = normalized(l->direction);
      const cplx t = (y.s - l->point[0]) * std::conj(d[0]) + (y.p - l->point[1]) * std::conj(d[1]);
      const SymmetrisedPoint q{l->point[0] + t * d[0], l->point[1] + t * d[1]};
      if (g2_contains(q) == Verdict::Inside) fail(y, "projects onto the line inside G2");
    } else {
      const PsiLevelSet& ls = std::get<PsiLevelSet>(w);
      const cplx a = ls.omega * (1.0 - y.s * ls.z + y.p * ls.z * ls.z) / (1.0 - std::norm(ls.z));
      if (penta_contains({a, y.s, y.p}, Criterion::C2).verdict == Verdict::Inside) {
        fail(y, "projects along the a-fibre onto the hyperplane inside the pentablock");
      }
    }
    ++out.projected_checks;
  }
  return out;
}

}  // namespace pentageom
