#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pentageom/automorphisms.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/sampling.hpp"

using namespace pentageom;

namespace {

double dist(const PentaPoint& x, const PentaPoint& y) {
  return std::max({std::abs(x.a - y.a), std::abs(x.s - y.s), std::abs(x.p - y.p)});
}

PentaAutomorphism random_auto(Rng& rng) {
  return PentaAutomorphism::make(random_unimodular(rng), random_unimodular(rng), random_in_disc(rng, 0.95));
}

}  // namespace

TEST_CASE("auto_apply at hand-computed points") {
  const PentaPoint x{cplx(0.2, 0.1), cplx(0.3, -0.2), cplx(0.1, 0.05)};
  CHECK(dist(auto_apply(PentaAutomorphism::identity(), x), x) < 1e-15);

  const cplx w = std::polar(1.0, 0.4), e = std::polar(1.0, -1.3);
  const PentaPoint y = auto_apply(PentaAutomorphism::make(w, e, 0.0), x);
  CHECK(dist(y, {w * e * x.a, e * x.s, e * e * x.p}) < 1e-15);

  const PentaPoint z = auto_apply(PentaAutomorphism::make(1.0, 1.0, 0.5), {0.0, 1.0, 0.0});
  CHECK(dist(z, {0.0, 0.5, -0.5}) < 1e-15);
}

TEST_CASE("auto_apply (s, p) part matches the rational closed form") {
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const PentaAutomorphism f = random_auto(rng);
    const PentaPoint x = random_penta_point(rng);
    const PentaPoint y = auto_apply(f, x);
    cplx s, p;
    oracle::moebius_on_g2(f.nu.eta, f.nu.alpha, x.s, x.p, s, p);
    CHECK(std::abs(y.s - s) < 1e-11);
    CHECK(std::abs(y.p - p) < 1e-11);
    const cplx ab = std::conj(f.nu.alpha);
    const cplx a = f.omega * f.nu.eta * (1.0 - std::norm(f.nu.alpha)) * x.a / (1.0 - ab * x.s + ab * ab * x.p);
    CHECK(std::abs(y.a - a) < 1e-13);
  }
}

TEST_CASE("automorphisms preserve the pentablock and its smooth boundary") {
  Rng rng(32);
  for (int i = 0; i < 2000; ++i) {
    const PentaAutomorphism f = random_auto(rng);
    CHECK(penta_contains(auto_apply(f, random_penta_point(rng)), Criterion::C2).verdict != Verdict::Outside);
    const SymmetrisedPoint q = random_g2_point(rng, 0.9);
    const PentaPoint b{criterion2_bound(q.s, q.p) * random_unimodular(rng), q.s, q.p};
    CHECK(boundary_classify(auto_apply(f, b), 1e-8) == BoundaryClass::Part1);
  }
}

TEST_CASE("group laws in parameter space") {
  Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    const PentaAutomorphism f = random_auto(rng), g = random_auto(rng), h = random_auto(rng);
    const PentaPoint x = random_penta_point(rng);
    CHECK(dist(auto_apply(auto_inverse(f), auto_apply(f, x)), x) < 1e-10);
    CHECK(dist(auto_apply(auto_compose(f, g), x), auto_apply(f, auto_apply(g, x))) < 1e-9);
    CHECK(dist(auto_apply(auto_compose(auto_compose(f, g), h), x), auto_apply(auto_compose(f, auto_compose(g, h)), x)) <
          1e-9);
    CHECK(parameter_distance(auto_compose(f, PentaAutomorphism::identity()), f) < 1e-13);
    CHECK(parameter_distance(auto_compose(PentaAutomorphism::identity(), f), f) < 1e-13);
    CHECK(parameter_distance(auto_compose(f, auto_inverse(f)), PentaAutomorphism::identity()) < 1e-12);
  }
  CHECK(parameter_distance(auto_inverse(PentaAutomorphism::identity()), PentaAutomorphism::identity()) == 0.0);
  const cplx w = std::polar(1.0, 0.4), e = std::polar(1.0, -1.3);
  const PentaAutomorphism r = auto_inverse(PentaAutomorphism::make(w, e, 0.0));
  CHECK(std::abs(r.omega - std::conj(w)) < 1e-15);
  CHECK(std::abs(r.nu.eta - std::conj(e)) < 1e-15);
  CHECK(std::abs(r.nu.alpha) == 0.0);
}

TEST_CASE("orbit of the origin") {
  const PentaPoint o = orbit_of_origin(PentaAutomorphism::identity());
  CHECK(dist(o, {0.0, 0.0, 0.0}) == 0.0);
  const PentaPoint m = orbit_of_origin(PentaAutomorphism::make(1.0, 1.0, 0.3));
  CHECK(dist(m, {0.0, -0.6, 0.09}) < 1e-15);
  Rng rng(34);
  double mu_max = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PentaAutomorphism f = random_auto(rng);
    const PentaPoint y = orbit_of_origin(f);
    CHECK(y.a == cplx(0.0));
    CHECK(std::abs(y.s * y.s - 4.0 * y.p) < 1e-12);
    mu_max = std::max(mu_max, std::abs(0.5 * y.s));
  }
  CHECK(mu_max > 0.9);
}

TEST_CASE("symmetrised Blaschke products") {
  const SymmetrisedPoint q{cplx(0.9), cplx(0.14)};
  BlaschkeProduct id;
  id.factors = {MoebiusParams::identity()};
  const SymmetrisedPoint same = symmetrize_blaschke(id, q);
  CHECK(std::abs(same.s - q.s) < 1e-15);
  CHECK(std::abs(same.p - q.p) < 1e-15);

  BlaschkeProduct sq;
  sq.factors = {MoebiusParams::identity(), MoebiusParams::identity()};
  const SymmetrisedPoint r = symmetrize_blaschke(sq, q);
  CHECK(std::abs(r.s - 0.53) < 1e-15);
  CHECK(std::abs(r.p - 0.0196) < 1e-15);

  Rng rng(35);
  for (int i = 0; i < 300; ++i) {
    const auto nu = MoebiusParams::make(random_unimodular(rng), random_in_disc(rng, 0.9));
    BlaschkeProduct b;
    b.factors = {nu};
    const SymmetrisedPoint g = random_g2_point(rng, 0.95);
    const SymmetrisedPoint img = symmetrize_blaschke(b, g);
    const PentaPoint y = auto_apply({1.0, nu}, {0.0, g.s, g.p});
    CHECK(std::abs(img.s - y.s) < 1e-12);
    CHECK(std::abs(img.p - y.p) < 1e-12);
  }
}
