#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "pentageom/domains.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/sampling.hpp"

using namespace pentageom;

namespace {

double dist(const PentaPoint& x, const PentaPoint& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.s - y.s), std::abs(x.p - y.p)});
}

}  // namespace

TEST_CASE("membership at hand-checked points") {
  const MembershipReport o = penta_contains({0.0, 0.0, 0.0});
  CHECK(o.verdict == Verdict::Inside);
  CHECK(o.bound2 == doctest::Approx(1.0));
  CHECK(o.bound3 == doctest::Approx(1.0));

  CHECK(penta_contains({0.5, 0.0, 0.5}).verdict == Verdict::Inside);

  const cplx lam = std::polar(1.0, 0.7);
  CHECK(penta_contains({0.3, 2.0 * lam, lam * lam}).verdict == Verdict::Outside);
  CHECK(penta_contains({0.0, 2.0 * lam, lam * lam}).verdict == Verdict::BoundaryBand);

  // (1, 0) lies on the boundary of G2 (roots 1 and 0), so (0.25, 1, 0) is a
  // boundary point with criterion-(3) radius 1/2.
  const MembershipReport b = penta_contains({0.25, 1.0, 0.0});
  CHECK(b.verdict == Verdict::BoundaryBand);
  CHECK(b.bound3 == doctest::Approx(0.5));
  CHECK(penta_contains({0.6, 1.0, 0.0}).verdict == Verdict::Outside);
}

TEST_CASE("criterion bounds agree and obey the Hartogs form") {
  Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    const cplx l1 = random_in_disc(rng), l2 = random_in_disc(rng);
    const double b2 = criterion2_bound(l1 + l2, l1 * l2);
    const double b3 = criterion3_bound({l1, l2});
    CHECK(std::abs(b2 - b3) < 1e-11);
    CHECK(b3 <= 1.0 + 1e-12);
    CHECK(criterion3_bound({l2, l1}) == b3);
    if (g2_defining_value(l1 + l2, l1 * l2) < 0.999) {
      CHECK(std::abs(b2 - std::exp(-0.5 * phi(l1 + l2, l1 * l2))) < 1e-12);
    }
  }
}

TEST_CASE("G2 membership") {
  CHECK(g2_contains({0.0, 0.0}) == Verdict::Inside);
  CHECK(g2_contains({2.0, 1.0}) == Verdict::BoundaryBand);
  CHECK(g2_contains({3.0, 0.0}) == Verdict::Outside);
  // Defining value exactly 1 but roots (3 +- sqrt 5)/2 off the closed disc.
  CHECK(g2_defining_value(3.0, 1.0) == doctest::Approx(1.0));
  CHECK(g2_contains({3.0, 1.0}) == Verdict::Outside);
  CHECK(in_shilov_boundary({2.0, 1.0}));
  CHECK_FALSE(in_shilov_boundary({1.0, 0.0}));
  CHECK_THROWS_AS(phi(3.0, 0.0), DomainError);
  CHECK_THROWS_AS(compute_beta(0.0, 1.0), DegenerateDenominator);
}

TEST_CASE("phi^z reproduces |Psi_z| and phi is the sup over z") {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const SymmetrisedPoint q = random_g2_point(rng, 0.9);
    const PentaPoint x{random_in_disc(rng), q.s, q.p};
    const cplx z = random_in_disc(rng, 0.95);
    const double lhs = std::norm(psi(z, x));
    const double rhs = std::norm(x.a) * std::exp(phi_z_field(z)(q.s, q.p));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + rhs));
    CHECK(phi_z_field(z)(q.s, q.p) <= phi(q.s, q.p) + 1e-12);
  }
}

TEST_CASE("sup_psi against a brute-force grid and the scale identity") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const SymmetrisedPoint q = random_g2_point(rng, 0.95);
    const PentaPoint x{random_in_disc(rng, 1.5), q.s, q.p};
    const SupPsiResult r = sup_psi(x);
    double grid = 0.0;
    for (int ir = 1; ir < 300; ++ir) {
      for (int k = 0; k < 600; ++k) {
        const cplx z = std::polar(ir / 300.0, 2.0 * std::numbers::pi * k / 600.0);
        grid = std::max(grid, std::abs(psi(z, x)));
      }
    }
    CHECK(grid <= r.sup + 1e-12);
    CHECK(r.sup - grid < 1e-3 * (1.0 + r.sup));
    CHECK(std::abs(std::abs(psi(r.argmax, x)) - r.sup) < 1e-12);
    const double unit = sup_psi({1.0, q.s, q.p}).sup;
    CHECK(std::abs(r.sup - std::abs(x.a) * unit) < 1e-10);
    CHECK(std::abs(unit - std::exp(0.5 * phi(q.s, q.p))) < 1e-8);
  }
}

TEST_CASE("pi_map and lift_to_ball") {
  const cplx l1(0.3, 0.1), l2(-0.2, 0.4);
  const PentaPoint d = pi_map(Matrix2::diag(l1, l2));
  CHECK(dist(d, {0.0, l1 + l2, l1 * l2}) < 1e-16);
  CHECK(dist(pi_map({0.0, cplx(0.2, 0.3), 0.0, 0.0}), {cplx(0.2, 0.3), 0.0, 0.0}) == 0.0);

  CHECK(max_abs_diff(lift_to_ball({0.0, 0.0, 0.0}), Matrix2::zero()) == 0.0);
  const Matrix2 dl = lift_to_ball({0.0, l1 + l2, l1 * l2});
  CHECK(operator_norm(dl) == doctest::Approx(std::max(std::abs(l1), std::abs(l2))));

  Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    const PentaPoint x = random_penta_point(rng, 0.999);
    const Matrix2 z = lift_to_ball(x);
    CHECK(operator_norm(z) < 1.0);
    CHECK(dist(pi_map(z), x) < 1e-12);
  }
  CHECK_THROWS_AS(lift_to_ball({2.0, 0.0, 0.0}), LiftFailure);
  CHECK_THROWS_AS(lift_to_ball({1.0, 0.0, 0.0}), LiftFailure);
}

TEST_CASE("image of contractions lies in the pentablock") {
  Rng rng(25);
  for (int i = 0; i < 2000; ++i) {
    const double r = uniform01(rng);
    const PentaPoint x = pi_map(random_contraction(rng, r));
    const Verdict v = penta_contains(x).verdict;
    CHECK(v != Verdict::Outside);
    if (r < 0.999) CHECK(v == Verdict::Inside);
  }
}

TEST_CASE("quasi-balanced actions") {
  const PentaPoint x{0.2, cplx(0.1, 0.3), cplx(-0.2, 0.1)};
  CHECK(dist(quasi_action({}, 1.0, x), x) == 0.0);
  CHECK(dist(quasi_action({0, 1, 2}, 0.0, x), {x.a, 0.0, 0.0}) == 0.0);
  Rng rng(26);
  for (int i = 0; i < 300; ++i) {
    const PentaPoint y = random_penta_point(rng);
    for (unsigned k = 0; k <= 2; ++k) {
      const PentaPoint z = quasi_action({k, 1, 2}, random_in_disc(rng), y);
      CHECK(penta_contains(z).verdict != Verdict::Outside);
    }
  }
}

TEST_CASE("royal variety") {
  CHECK(royal_point(0.0).s == cplx(0.0));
  const SymmetrisedPoint one = royal_point(1.0);
  CHECK(one.s == cplx(2.0));
  CHECK(one.p == cplx(1.0));
  CHECK(g2_contains(one) == Verdict::BoundaryBand);
  CHECK(in_shilov_boundary(one));
  const SymmetrisedPoint h = royal_point(0.5);
  const EigenPair r = solve_quadratic(h.s, h.p);
  CHECK(std::abs(r.lambda1 - 0.5) < 1e-15);
  CHECK(std::abs(r.lambda2 - 0.5) < 1e-15);
}

TEST_CASE("boundary classification") {
  CHECK(boundary_classify({0.1, 0.0, 0.0}) == BoundaryClass::Interior);
  CHECK(boundary_classify({1.0, 0.0, 0.0}) == BoundaryClass::Part1);
  CHECK(boundary_classify({0.25, 1.0, 0.0}) == BoundaryClass::Part2);
  CHECK(boundary_classify({0.0, 2.0, 1.0}) == BoundaryClass::Part3);
  CHECK(boundary_classify({0.5, 1.0, 0.0}) == BoundaryClass::Part3);
  CHECK(boundary_classify({0.7, 1.0, 0.0}) == BoundaryClass::Exterior);
  CHECK(boundary_classify({1.5, 0.0, 0.0}) == BoundaryClass::Exterior);
  CHECK(boundary_classify({0.0, 3.0, 0.0}) == BoundaryClass::Exterior);
}

TEST_CASE("samplers are deterministic and land in their declared class") {
  SamplerConfig cfg;
  cfg.count = 1;
  cfg.seed = 99;
  const PentaPoint a = sample_penta(cfg)[0];
  const PentaPoint b = sample_penta(cfg)[0];
  CHECK(dist(a, b) == 0.0);

  cfg.count = 300;
  cfg.strategy = SamplerStrategy::BoundaryPart1;
  for (const auto& x : sample_penta(cfg)) CHECK(boundary_classify(x) == BoundaryClass::Part1);
  cfg.strategy = SamplerStrategy::BoundaryPart2;
  for (const auto& x : sample_penta(cfg)) CHECK(boundary_classify(x, 1e-8) == BoundaryClass::Part2);
  cfg.strategy = SamplerStrategy::RejectionInBox;
  for (const auto& x : sample_penta(cfg)) CHECK(penta_contains(x).verdict == Verdict::Inside);
  cfg.strategy = SamplerStrategy::ContractionPushforward;
  for (const auto& x : sample_penta(cfg)) CHECK(penta_contains(x).verdict != Verdict::Outside);

  cfg.count = 0;
  CHECK_THROWS_AS(sample_penta(cfg), InvalidArgument);
  CHECK_THROWS_AS(parse_strategy("uniform"), InvalidArgument);
  CHECK(parse_strategy("boundary-part2") == SamplerStrategy::BoundaryPart2);
  CHECK(shard_seed(1, 0) != shard_seed(1, 1));
}
