#include "pentageom/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "pentageom/automorphisms.hpp"
#include "pentageom/convexity.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/sampling.hpp"

namespace pentageom {

namespace {

constexpr size_t kKeptFailures = 5;

// Per-shard accumulator; shards are merged in index order.
struct Acc {
  long checks = 0;
  long failures = 0;
  std::map<std::string, double> hi;
  std::map<std::string, double> lo;
  std::map<std::string, long> counts;
  std::vector<double> values;
  std::vector<std::string> fails;

  void fail(const std::string& msg) {
    ++checks;
    ++failures;
    if (fails.size() < kKeptFailures) fails.push_back(msg);
  }
  template <class Msg>
  void check(bool ok, Msg&& msg) {
    if (ok) {
      ++checks;
    } else {
      fail(msg());
    }
  }
  void max(const std::string& k, double v) {
    auto [it, fresh] = hi.try_emplace(k, v);
    if (!fresh) it->second = std::max(it->second, v);
  }
  void min(const std::string& k, double v) {
    auto [it, fresh] = lo.try_emplace(k, v);
    if (!fresh) it->second = std::min(it->second, v);
  }
  void count(const std::string& k, long d = 1) { counts[k] += d; }

  void merge(const Acc& o) {
    checks += o.checks;
    failures += o.failures;
    for (const auto& [k, v] : o.hi) max(k, v);
    for (const auto& [k, v] : o.lo) min(k, v);
    for (const auto& [k, v] : o.counts) counts[k] += v;
    values.insert(values.end(), o.values.begin(), o.values.end());
    for (const auto& f : o.fails) {
      if (fails.size() < kKeptFailures) fails.push_back(f);
    }
  }
};

std::string fmt_point(const PentaPoint& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x.a << ", " << x.s << ", " << x.p << ")";
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

using Body = std::function<void(Acc&, Rng&, long)>;

// Splits [0, n) into kShards contiguous ranges, each with its own stream.
// Errors raised by the library on one sample are recorded as failures.
Acc run_sharded(long n, std::uint64_t seed, int threads, const Body& body) {
  std::vector<Acc> parts(kShards);
  std::vector<std::exception_ptr> errors(kShards);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int k = next++; k < kShards; k = next++) {
      try {
        Rng rng(shard_seed(seed, static_cast<std::uint64_t>(k)));
        const long begin = n * k / kShards;
        const long end = n * (k + 1) / kShards;
        for (long i = begin; i < end; ++i) {
          try {
            body(parts[k], rng, i);
          } catch (const Error& e) {
            parts[k].fail("sample " + std::to_string(i) + ": " + e.what());
          }
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  const int workers = std::max(1, std::min(threads, kShards));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

void finish(SuiteReport& rep, const Acc& acc) {
  rep.checks = acc.checks;
  rep.failures = acc.failures;
  for (const auto& [k, v] : acc.hi) rep.worst[k] = v;
  for (const auto& [k, v] : acc.lo) rep.worst[k] = v;
  for (const auto& [k, v] : acc.counts) rep.worst[k] = v;
  rep.first_failures = acc.fails;
  rep.pass = acc.checks > 0 && acc.failures == 0;
}

Vec2C random_direction(Rng& rng) {
  Vec2C d;
  double n = 0.0;
  do {
    d = {random_in_disc(rng), random_in_disc(rng)};
    n = std::hypot(std::abs(d[0]), std::abs(d[1]));
  } while (n < 1e-3);
  return {d[0] / n, d[1] / n};
}

PentaAutomorphism random_automorphism(Rng& rng) {
  return PentaAutomorphism::make(random_unimodular(rng), random_unimodular(rng), random_in_disc(rng, 0.95));
}

double point_distance(const PentaPoint& x, const PentaPoint& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.s - y.s), std::abs(x.p - y.p)});
}

// Point of G2 whose defining value is at most `cap`.
SymmetrisedPoint g2_point_below(Rng& rng, double cap) {
  for (;;) {
    const SymmetrisedPoint q = random_g2_point(rng, 1.0);
    if (g2_defining_value(q.s, q.p) <= cap) return q;
  }
}

PentaPoint part1_point(Rng& rng) {
  const SymmetrisedPoint q = random_g2_point(rng, 0.9);
  return {criterion2_bound(q.s, q.p) * random_unimodular(rng), q.s, q.p};
}

// ---------------------------------------------------------------------------

void criteria_equivalence(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr double kMargin = 1e-6;
  constexpr double kSupTol = 1e-8;
  rep.tolerances = {{"band", cfg.tol}, {"fibre_margin", kMargin}, {"sup_psi_vs_hartogs", kSupTol}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    PentaPoint x;
    double b2 = 0.0;
    for (;;) {
      const SymmetrisedPoint q = random_g2_point(rng, 1.0);
      if (g2_contains(q, cfg.tol) != Verdict::Inside) continue;
      b2 = criterion2_bound(q.s, q.p);
      x = {2.0 * b2 * uniform01(rng) * random_unimodular(rng), q.s, q.p};
      if (std::abs(std::abs(x.a) - b2) > kMargin) break;
    }
    const MembershipReport m = penta_contains(x, Criterion::All, cfg.tol);
    const bool agree = m.c2 == m.c3 && m.c3 == m.c4;
    acc.check(agree, [&] { return "criteria disagree at " + fmt_point(x); });
    acc.check(m.c2 == (std::abs(x.a) < b2 ? Verdict::Inside : Verdict::Outside),
              [&] { return "criterion (2) verdict off the expected side at " + fmt_point(x); });
    const double hartogs = std::abs(x.a) * std::exp(0.5 * phi(x.s, x.p));
    const double err = std::abs(m.sup_psi - hartogs);
    acc.check(err <= kSupTol, [&] { return "sup |Psi_z| differs from |a| exp(phi/2) by " + fmt(err) + " at " + fmt_point(x); });
    acc.max("max_sup_psi_error", err);
    acc.max("max_bound2_bound3_gap", std::abs(m.bound2 - m.bound3));
    acc.min("min_abs_margin", std::abs(std::abs(x.a) - b2));
    acc.count(m.verdict == Verdict::Inside ? "inside" : "outside");
  });
  finish(rep, acc);
}

void image_of_ball(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr double kStrict = 1e-3;
  rep.tolerances = {{"band", cfg.tol}, {"strict_interior_below_norm", 1.0 - kStrict}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const double r = uniform01(rng);
    const PentaPoint x = pi_map(random_contraction(rng, r));
    const MembershipReport m = penta_contains(x, Criterion::All, cfg.tol);
    if (r < 1.0 - kStrict) {
      acc.check(m.verdict == Verdict::Inside, [&] { return "pi(z) not interior for |z| = " + fmt(r) + ": " + fmt_point(x); });
      acc.min("min_margin_strict", m.margin);
    } else {
      acc.check(m.verdict != Verdict::Outside, [&] { return "pi(z) outside for |z| = " + fmt(r); });
      acc.count("near_boundary_samples");
    }
  });
  finish(rep, acc);
}

void balanced_actions(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr int kScalings = 10;
  rep.tolerances = {{"band", cfg.tol}, {"scalings_per_point", kScalings}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const PentaPoint x = random_penta_point(rng);
    for (unsigned k = 0; k <= 2; ++k) {
      for (int j = 0; j < kScalings; ++j) {
        const cplx lam = (static_cast<double>(j) / (kScalings - 1)) * random_unimodular(rng);
        const PentaPoint y = quasi_action({k, 1, 2}, lam, x);
        const MembershipReport m2 = penta_contains(y, Criterion::C2, cfg.tol);
        const MembershipReport m3 = penta_contains(y, Criterion::C3, cfg.tol);
        acc.check(m2.verdict != Verdict::Outside && m3.verdict != Verdict::Outside, [&] {
          return "m = (" + std::to_string(k) + ",1,2) action leaves the closure: " + fmt_point(y);
        });
        acc.min("min_margin", m2.margin);
      }
    }
  });
  finish(rep, acc);
}

void automorphism_group(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr double kRoundTrip = 1e-10;
  constexpr double kCompose = 1e-9;
  constexpr double kBoundaryBand = 1e-8;
  constexpr double kOrbit = 1e-12;
  rep.tolerances = {{"band", cfg.tol},           {"inverse_round_trip", kRoundTrip}, {"composition", kCompose},
                    {"boundary_band", kBoundaryBand}, {"orbit_royal", kOrbit},       {"alpha_radius", 0.95}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long i) {
    const PentaAutomorphism f = random_automorphism(rng);
    const PentaAutomorphism g = random_automorphism(rng);
    const PentaPoint x = random_penta_point(rng);

    const PentaPoint y = auto_apply(f, x);
    acc.check(penta_contains(y, Criterion::C2, cfg.tol).verdict != Verdict::Outside,
              [&] { return "image leaves the pentablock: " + fmt_point(x) + " -> " + fmt_point(y); });

    const double rt = point_distance(auto_apply(auto_inverse(f), y), x);
    acc.check(rt < kRoundTrip, [&] { return "inverse round trip error " + fmt(rt) + " at " + fmt_point(x); });
    acc.max("max_inverse_round_trip", rt);

    const double ce = point_distance(auto_apply(auto_compose(f, g), x), auto_apply(f, auto_apply(g, x)));
    acc.check(ce < kCompose, [&] { return "composition law error " + fmt(ce) + " at " + fmt_point(x); });
    acc.max("max_composition_error", ce);

    const PentaPoint o = orbit_of_origin(f);
    const double royal = std::abs(o.s * o.s - 4.0 * o.p);
    acc.check(o.a == 0.0 && royal < kOrbit, [&] { return "orbit of 0 leaves {0} x royal variety"; });
    acc.max("max_orbit_abs_a", std::abs(o.a));
    acc.max("max_orbit_royal_residual", royal);

    if (i % 10 == 0) {
      const PentaPoint xb = part1_point(rng);
      const PentaPoint yb = auto_apply(f, xb);
      const BoundaryClass c = boundary_classify(yb, kBoundaryBand);
      acc.check(c == BoundaryClass::Part1,
                [&] { return std::string("boundary point maps to class ") + to_string(c) + ": " + fmt_point(yb); });
      acc.max("max_boundary_image_defect",
              std::abs(std::norm(yb.a) - std::pow(criterion2_bound(yb.s, yb.p), 2)));
    }
  });
  finish(rep, acc);
}

void orbit_of_zero(SuiteReport& rep, const SuiteConfig&, int threads) {
  constexpr double kOrbit = 1e-12;
  rep.tolerances = {{"royal_residual", kOrbit}, {"abs_a", 0.0}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const PentaAutomorphism f = random_automorphism(rng);
    const PentaPoint o = auto_apply(f, {0.0, 0.0, 0.0});
    const cplx mu = moebius_apply(f.nu, 0.0);
    const double royal = std::abs(o.s * o.s - 4.0 * o.p);
    const double shape = std::max(std::abs(o.s - 2.0 * mu), std::abs(o.p - mu * mu));
    acc.check(o.a == 0.0, [&] { return "a-coordinate of the orbit point is " + fmt(std::abs(o.a)); });
    acc.check(royal < kOrbit, [&] { return "s^2 - 4p = " + fmt(royal); });
    acc.check(shape < kOrbit, [&] { return "orbit point differs from (0, 2 mu, mu^2) by " + fmt(shape); });
    acc.max("max_abs_a", std::abs(o.a));
    acc.max("max_royal_residual", royal);
    acc.max("max_mu_modulus", std::abs(mu));
  });
  finish(rep, acc);
}

void bidisc_slice(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr int kPhases = 4;
  const long side = rep.n;
  rep.tolerances = {{"band", cfg.tol}, {"grid_side", side}, {"phases", kPhases}, {"radius_max", 1.25}};
  const Acc acc = run_sharded(side * side * kPhases, rep.seed, threads, [&](Acc& acc, Rng&, long idx) {
    const long i = idx / (side * kPhases);
    const long k = (idx / kPhases) % side;
    const long ph = idx % kPhases;
    const double ra = 1.25 * (i + 0.5) / side;
    const double rp = 1.25 * (k + 0.5) / side;
    const PentaPoint x{std::polar(ra, 0.3 + 0.5 * std::numbers::pi * ph), 0.0,
                       std::polar(rp, 1.1 + 1.5 * std::numbers::pi * ph)};
    if (std::abs(ra - 1.0) <= cfg.tol || std::abs(rp - 1.0) <= cfg.tol) {
      acc.count("skipped_in_band");
      return;
    }
    const bool expected = ra < 1.0 && rp < 1.0;
    const Verdict v = penta_contains(x, Criterion::All, cfg.tol).verdict;
    acc.check(v == (expected ? Verdict::Inside : Verdict::Outside), [&] {
      return std::string("verdict ") + to_string(v) + " for |a| = " + fmt(ra) + ", |p| = " + fmt(rp);
    });
  });
  finish(rep, acc);
}

constexpr double kConvexTol = 1e-6;
constexpr double kBoundaryClearance = 1e-2;

void phi_cconvex(SuiteReport& rep, const SuiteConfig&, int threads) {
  rep.tolerances = {{"margin_paper_min", -kConvexTol}, {"g2_value_max", 1.0 - kBoundaryClearance},
                    {"initial_step", kLineStep}};
  const ScalarField2C u = phi_field();
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const SymmetrisedPoint q = g2_point_below(rng, 1.0 - kBoundaryClearance);
    const ConvexityReport r = cconvexity_check(u, {q.s, q.p}, random_direction(rng));
    acc.check(r.margin_paper >= -kConvexTol, [&] {
      return "squared-form margin " + fmt(r.margin_paper) + " (unsquared " + fmt(r.margin_standard) + ") at s = " +
             fmt(q.s.real()) + "+" + fmt(q.s.imag()) + "i, p = " + fmt(q.p.real()) + "+" + fmt(q.p.imag()) + "i";
    });
    acc.min("min_margin_paper", r.margin_paper);
    acc.min("min_margin_standard", r.margin_standard);
    acc.max("max_error_estimate", r.error_estimate);
    if (r.margin_standard < -kConvexTol) acc.count("standard_form_failures");
  });
  finish(rep, acc);
  rep.calibration["standard_form_min_margin"] = acc.lo.count("min_margin_standard") ? acc.lo.at("min_margin_standard") : 0.0;
  rep.calibration["standard_form_failures"] = acc.counts.count("standard_form_failures") ? acc.counts.at("standard_form_failures") : 0;
}

std::vector<cplx> fixed_z_values() {
  std::vector<cplx> out;
  for (int k = 0; k < 8; ++k) out.push_back(std::polar(0.1 * (k + 1), 2.0 * std::numbers::pi * k / 8.0));
  return out;
}

void phiz_cconvex(SuiteReport& rep, const SuiteConfig&, int threads) {
  const std::vector<cplx> zs = fixed_z_values();
  rep.tolerances = {{"margin_paper_min", -kConvexTol}, {"g2_value_max", 1.0 - kBoundaryClearance},
                    {"z_values", zs.size()}};
  std::vector<ScalarField2C> fields;
  for (cplx z : zs) fields.push_back(phi_z_field(z));
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const SymmetrisedPoint q = g2_point_below(rng, 1.0 - kBoundaryClearance);
    const Vec2C d = random_direction(rng);
    for (const auto& u : fields) {
      const ConvexityReport r = cconvexity_check(u, {q.s, q.p}, d);
      acc.check(r.margin_paper >= -kConvexTol && r.margin_standard >= -kConvexTol,
                [&] { return u.name + " margin " + fmt(r.margin_paper); });
      acc.min("min_margin_paper", r.margin_paper);
      acc.min("min_margin_standard", r.margin_standard);
    }
  });
  finish(rep, acc);
}

void sup_family(SuiteReport& rep, const SuiteConfig&, int threads) {
  constexpr double kValueTol = 0.05;
  constexpr double kMarginTol = 1e-4;
  constexpr double kValueG2Max = 0.5;
  rep.tolerances = {{"sup_vs_phi_32_point_grid", kValueTol},
                    {"margin_paper_min", -kMarginTol},
                    {"value_test_g2_max", kValueG2Max}};
  const std::vector<ScalarField2C> f32 = phi_z_family(4, 8, 0.6);
  const std::vector<ScalarField2C> f128 = phi_z_family(8, 16, 0.85);
  const std::vector<ScalarField2C> f512 = phi_z_family(16, 32, 0.92);
  const ScalarField2C s32 = sup_field(f32), s128 = sup_field(f128), s512 = sup_field(f512);

  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const SymmetrisedPoint q = g2_point_below(rng, kValueG2Max);
    const double exact = phi(q.s, q.p);
    const double e32 = exact - s32(q.s, q.p);
    acc.check(e32 >= -1e-12 && e32 <= kValueTol, [&] { return "32-point envelope misses phi by " + fmt(e32); });
    acc.max("max_gap_32", e32);
    acc.max("max_gap_128", exact - s128(q.s, q.p));
    acc.max("max_gap_512", exact - s512(q.s, q.p));

    const SymmetrisedPoint b = g2_point_below(rng, 1.0 - kBoundaryClearance);
    const ConvexityReport r = sup_family_check(f32, {b.s, b.p}, random_direction(rng));
    if (r.active_switch) {
      acc.count("active_switch_skipped");
      return;
    }
    acc.check(r.margin_paper >= -kMarginTol, [&] { return "sup-field margin " + fmt(r.margin_paper); });
    acc.min("min_margin_paper", r.margin_paper);
  });
  finish(rep, acc);
  const double g32 = acc.hi.at("max_gap_32"), g128 = acc.hi.at("max_gap_128"), g512 = acc.hi.at("max_gap_512");
  const bool tightening = g512 <= g128 && g128 <= g32;
  if (!tightening) {
    rep.pass = false;
    rep.failures += 1;
    rep.first_failures.push_back("envelope gap does not shrink as the z-grid is refined");
  }
  rep.checks += 1;
}

ScalarField2C log_modulus_control() {
  return {[](cplx s, cplx) { return -2.0 * std::log(std::abs(1.0 - s / 4.0)); }, nullptr, "-2 log|1 - s/4|"};
}

void not_pluriharmonic(SuiteReport& rep, const SuiteConfig&, int threads) {
  constexpr double kThreshold = 1e-3;
  constexpr double kControl = 1e-6;
  rep.tolerances = {{"phi_defect_min", kThreshold}, {"control_defect_max", kControl}};
  const ScalarField2C u = phi_field();
  const ScalarField2C control = log_modulus_control();
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const std::uint64_t s = rng();
    acc.max("max_phi_defect", pluriharmonic_defect(u, 1, s));
    const double c = pluriharmonic_defect(control, 1, s);
    acc.check(c < kControl, [&] { return "control field has defect " + fmt(c); });
    acc.max("max_control_defect", c);
  });
  finish(rep, acc);
  const double d = acc.hi.at("max_phi_defect");
  rep.checks += 1;
  if (!(d > kThreshold)) {
    rep.pass = false;
    rep.failures += 1;
    rep.first_failures.push_back("largest phi defect " + fmt(d) + " is below the threshold");
  }
}

void part1_foliation(SuiteReport& rep, const SuiteConfig&, int threads) {
  constexpr int kSamples = 64;
  constexpr double kDefect = 1e-8;
  rep.tolerances = {{"hartogs_defect", kDefect}, {"samples_per_disc", kSamples}, {"t_radius", 0.99}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const PentaPoint x = part1_point(rng);
    const AnalyticDisc d = foliation_disc_part1(x);
    const double through = point_distance(d.point(d.center[0]), x);
    acc.check(through < kDefect, [&] { return "disc misses its base point by " + fmt(through); });
    acc.max("max_base_point_miss", through);
    for (int j = 0; j < kSamples; ++j) {
      const PentaPoint y = d.point(random_in_disc(rng, 0.99));
      const double defect = std::abs(std::norm(y.a) - std::exp(-phi(y.s, y.p)));
      acc.check(defect < kDefect, [&] { return "disc point off the boundary by " + fmt(defect) + ": " + fmt_point(y); });
      acc.max("max_hartogs_defect", defect);
    }
  });
  finish(rep, acc);
}

void part2_levi_flat(SuiteReport& rep, const SuiteConfig&, int threads) {
  constexpr double kFlat = 1e-5;
  constexpr int kDiscSamples = 16;
  rep.tolerances = {{"levi_abs_max", kFlat}, {"disc_samples", kDiscSamples}, {"classify_band", 1e-8}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const cplx l1 = random_unimodular(rng);
    const cplx l2 = random_in_disc(rng, 0.9);
    const double b3 = criterion3_bound({l1, l2});
    const PentaPoint x{0.9 * uniform01(rng) * b3 * random_unimodular(rng), l1 + l2, l1 * l2};

    for (const Vec3C& v : {Vec3C{1.0, 0.0, 0.0}, Vec3C{0.0, 1.0, l1}}) {
      const LeviResult lr = levi_form(x, v);
      acc.check(std::abs(lr.value) < kFlat, [&] { return "Levi form " + fmt(lr.value) + " at " + fmt_point(x); });
      acc.max("max_abs_levi", std::abs(lr.value));
      acc.max("max_tangency_residual", lr.tangency_residual);
    }

    const AnalyticDisc d = foliation_disc_part2(x);
    const double room = 0.2 * std::min(b3 - std::abs(x.a), 1.0 - std::abs(l2));
    for (int j = 0; j < kDiscSamples; ++j) {
      const PentaPoint y = d.point(d.center[0] + random_in_disc(rng, room), d.center[1] + random_in_disc(rng, room));
      const BoundaryClass c = boundary_classify(y, 1e-8);
      acc.check(c == BoundaryClass::Part2, [&] { return std::string("disc sample classified ") + to_string(c); });
    }
  });
  finish(rep, acc);
}

void part1_not_flat(SuiteReport& rep, const SuiteConfig&, int threads) {
  constexpr double kNonFlat = 1e-4;
  constexpr double kTangency = 1e-8;
  constexpr double kRequired = 0.99;
  rep.tolerances = {{"levi_abs_min", kNonFlat}, {"required_fraction", kRequired}, {"tangency", kTangency}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    const PentaPoint x = part1_point(rng);
    double best = 0.0;
    for (const Vec3C& v : complex_tangent_basis(x)) {
      const LeviResult lr = levi_form(x, v);
      best = std::max(best, std::abs(lr.value));
      acc.check(lr.tangency_residual < kTangency, [&] { return "basis vector not tangent: " + fmt(lr.tangency_residual); });
      acc.max("max_levi_error_estimate", lr.error_estimate);
    }
    acc.values.push_back(best);
    if (best > kNonFlat) acc.count("non_flat_points");

    // Noise floor: the foliation disc is tangent to the boundary, so the Levi
    // form along it must vanish.
    const AnalyticDisc d = foliation_disc_part1(x);
    const LeviResult along = levi_form(x, d.terms[1].coeff);
    acc.max("max_levi_along_disc", std::abs(along.value));
  });
  finish(rep, acc);
  const long good = acc.counts.count("non_flat_points") ? acc.counts.at("non_flat_points") : 0;
  std::vector<double> v = acc.values;
  std::sort(v.begin(), v.end());
  if (!v.empty()) {
    rep.calibration["levi_max_over_basis_min"] = v.front();
    rep.calibration["levi_max_over_basis_p01"] = v[v.size() / 100];
    rep.calibration["levi_max_over_basis_median"] = v[v.size() / 2];
    rep.calibration["levi_max_over_basis_max"] = v.back();
  }
  rep.calibration["noise_floor_levi_along_disc"] = acc.hi.count("max_levi_along_disc") ? acc.hi.at("max_levi_along_disc") : 0.0;
  rep.calibration["threshold"] = kNonFlat;
  rep.checks += 1;
  if (static_cast<double>(good) < kRequired * static_cast<double>(rep.n)) {
    rep.pass = false;
    rep.failures += 1;
    rep.first_failures.push_back("only " + std::to_string(good) + " of " + std::to_string(rep.n) + " points are non-flat");
  }
}

void linear_convexity(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr int kVerify = 10000;
  constexpr double kThrough = 1e-10;
  rep.tolerances = {{"band", cfg.tol}, {"verify_samples", kVerify}, {"incidence_residual", 1e-8},
                    {"witness_through_point", kThrough}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long i) {
    PentaPoint x;
    if (i % 2 == 0) {
      const SymmetrisedPoint q = g2_point_below(rng, 0.999);
      x = {criterion2_bound(q.s, q.p) * (1.001 + uniform01(rng)) * random_unimodular(rng), q.s, q.p};
    } else {
      do {
        x = {random_in_disc(rng, 1.5), random_in_disc(rng, 3.0), random_in_disc(rng, 1.5)};
      } while (g2_contains({x.s, x.p}, cfg.tol) != Verdict::Outside);
    }
    const HyperplaneWitness w = linconvex_witness(x, cfg.tol);
    const double through = witness_residual(w, x);
    acc.check(through < kThrough, [&] { return "witness misses its point by " + fmt(through); });
    if (const auto* l = std::get_if<ProductLine>(&w)) {
      acc.count("product_line_witnesses");
      acc.min("min_line_clearance", l->clearance);
    } else {
      acc.count("psi_level_set_witnesses");
    }
    const WitnessVerification v = witness_verify(w, kVerify, rng());
    acc.check(v.projected_checks == kVerify, [&] { return "verification stopped early"; });
    acc.min("min_sample_residual", v.min_residual);
  });
  finish(rep, acc);
}

void blaschke_symmetrization(SuiteReport& rep, const SuiteConfig& cfg, int threads) {
  constexpr double kShilov = 1e-10;
  constexpr double kConsistency = 1e-12;
  rep.tolerances = {{"band", cfg.tol}, {"shilov", kShilov}, {"degree_one_consistency", kConsistency},
                    {"max_degree", 3}};
  const Acc acc = run_sharded(rep.n, rep.seed, threads, [&](Acc& acc, Rng& rng, long) {
    BlaschkeProduct b;
    b.prefactor = random_unimodular(rng);
    const int degree = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < degree; ++k) b.factors.push_back(MoebiusParams::make(random_unimodular(rng), random_in_disc(rng, 0.95)));

    SymmetrisedPoint q;
    do {
      q = random_g2_point(rng, 1.0);
    } while (g2_contains(q, cfg.tol) != Verdict::Inside);
    const SymmetrisedPoint img = symmetrize_blaschke(b, q);
    acc.check(g2_contains(img, cfg.tol) != Verdict::Outside, [&] { return "image leaves G2"; });
    acc.min("min_image_margin", 1.0 - g2_defining_value(img.s, img.p));

    const cplx l1 = random_unimodular(rng), l2 = random_unimodular(rng);
    const SymmetrisedPoint simg = symmetrize_blaschke(b, {l1 + l2, l1 * l2});
    const EigenPair r = solve_quadratic(simg.s, simg.p);
    const double dev = std::max(std::abs(std::abs(r.lambda1) - 1.0), std::abs(std::abs(r.lambda2) - 1.0));
    acc.check(dev < kShilov, [&] { return "distinguished boundary image off by " + fmt(dev); });
    acc.max("max_shilov_deviation", dev);

    if (degree == 1) {
      const MoebiusParams nu = MoebiusParams::make(b.prefactor * b.factors[0].eta, b.factors[0].alpha);
      const PentaPoint y = auto_apply({1.0, nu}, {0.0, q.s, q.p});
      const double e = std::max(std::abs(y.s - img.s), std::abs(y.p - img.p));
      acc.check(e < kConsistency, [&] { return "degree-one product disagrees with the automorphism by " + fmt(e); });
    }
  });
  finish(rep, acc);
}

struct SuiteDef {
  const char* name;
  const char* claim;
  long default_n;
  void (*run)(SuiteReport&, const SuiteConfig&, int);
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"criteria-equivalence", "membership criteria (2), (3), (4) describe the same set", 10000, criteria_equivalence},
      {"image-of-ball", "P is the image of the 2x2 operator ball under pi", 10000, image_of_ball},
      {"balanced-actions", "P is (k,1,2)-balanced for k = 0, 1, 2", 1000, balanced_actions},
      {"automorphism-group", "f_{omega,nu} are automorphisms closed under composition and inversion", 10000,
       automorphism_group},
      {"orbit-of-zero", "the orbit of 0 under f_{omega,nu} is {0} x royal variety", 1000, orbit_of_zero},
      {"bidisc-slice", "P meets C x {0} x C in D x {0} x D", 50, bidisc_slice},
      {"phi-cconvex", "phi is C-convex", 500, phi_cconvex},
      {"phiz-cconvex", "phi^z is C-convex", 500, phiz_cconvex},
      {"sup-family", "phi is the upper envelope of the C-convex family phi^z", 100, sup_family},
      {"not-pluriharmonic", "phi is not pluriharmonic", 200, not_pluriharmonic},
      {"part1-foliation", "the smooth boundary part 1 is foliated by analytic discs", 100, part1_foliation},
      {"part2-levi-flat", "boundary part 2 is Levi flat", 100, part2_levi_flat},
      {"part1-not-flat", "boundary part 1 is not Levi flat", 100, part1_not_flat},
      {"linear-convexity", "P is linearly convex", 100, linear_convexity},
      {"blaschke-symmetrization", "symmetrised Blaschke products are proper self-maps of G2", 1000,
       blaschke_symmetrization},
  };
  return defs;
}

const SuiteDef& lookup(std::string_view name) {
  for (const auto& d : registry()) {
    if (name == d.name) return d;
  }
  std::string msg = "unknown suite '" + std::string(name) + "'; known suites:";
  for (const auto& d : registry()) msg += std::string(" ") + d.name;
  throw UnknownSuite(msg);
}

}  // namespace

nlohmann::ordered_json SuiteReport::to_json(bool include_timing) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["suite"] = suite;
  j["claim"] = claim;
  j["pass"] = pass;
  j["n"] = n;
  j["checks"] = checks;
  j["failures"] = failures;
  j["tolerances"] = tolerances;
  j["worst"] = worst;
  if (!calibration.empty()) j["calibration"] = calibration;
  j["first_failures"] = first_failures;
  j["seed"] = seed;
  if (include_timing) j["timing"] = {{"wall_seconds", wall_seconds}};
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.emplace_back(d.name);
    return out;
  }();
  return names;
}

long default_suite_size(std::string_view name) { return lookup(name).default_n; }

int resolve_threads(int requested) {
  int cap = 0;
  if (const char* env = std::getenv("PENTA_GEOM_THREADS")) cap = std::atoi(env);
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  if (cap > 0) t = std::min(t, cap);
  return std::min(t, kShards);
}

SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg) {
  const SuiteDef& def = lookup(name);
  if (cfg.n < 0) throw InvalidArgument("suite size must be non-negative");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  SuiteReport rep;
  rep.suite = def.name;
  rep.claim = def.claim;
  rep.n = cfg.n > 0 ? cfg.n : def.default_n;
  rep.seed = cfg.seed;
  const auto t0 = std::chrono::steady_clock::now();
  def.run(rep, cfg, resolve_threads(cfg.threads));
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rep.checks == 0) rep.pass = false;
  return rep;
}

}  // namespace pentageom
