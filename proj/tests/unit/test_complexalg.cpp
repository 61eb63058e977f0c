#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pentageom/complexalg.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/sampling.hpp"

using namespace pentageom;

namespace {

double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("moebius_apply matches a long double evaluation") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto nu = MoebiusParams::make(random_unimodular(rng), random_in_disc(rng, 0.95));
    const cplx lam = random_in_disc(rng, 1.0);
    CHECK(dist(moebius_apply(nu, lam), oracle::moebius(nu.eta, nu.alpha, lam)) < 1e-12);
  }
}

TEST_CASE("moebius maps preserve the circle and invert") {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto nu = MoebiusParams::make(random_unimodular(rng), random_in_disc(rng, 0.9));
    const cplx u = random_unimodular(rng);
    CHECK(std::abs(std::abs(moebius_apply(nu, u)) - 1.0) < 1e-12);
    const cplx lam = random_in_disc(rng, 1.0);
    CHECK(dist(moebius_apply(moebius_inverse(nu), moebius_apply(nu, lam)), lam) < 1e-11);
  }
}

TEST_CASE("moebius_compose agrees with pointwise composition") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto f = MoebiusParams::make(random_unimodular(rng), random_in_disc(rng, 0.9));
    const auto g = MoebiusParams::make(random_unimodular(rng), random_in_disc(rng, 0.9));
    const auto fg = moebius_compose(f, g);
    CHECK(std::abs(std::abs(fg.eta) - 1.0) < 1e-14);
    CHECK(std::abs(fg.alpha) < 1.0);
    const cplx lam = random_in_disc(rng, 1.0);
    CHECK(dist(moebius_apply(fg, lam), moebius_apply(f, moebius_apply(g, lam))) < 1e-11);
  }
}

TEST_CASE("moebius parameter validation") {
  CHECK_THROWS_AS(MoebiusParams::make(1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(MoebiusParams::make(1.1, 0.0), InvalidArgument);
  const auto nu = MoebiusParams::make(cplx(1.0 + 1e-12, 0.0), 0.2);
  CHECK(std::abs(nu.eta) == doctest::Approx(1.0).epsilon(1e-15));
  const MoebiusParams pole{1.0, 0.5};
  CHECK_THROWS_AS(moebius_apply(pole, 2.0), PoleError);
}

TEST_CASE("blaschke products") {
  BlaschkeProduct id;
  CHECK(id.degree() == 0);
  CHECK(blaschke_apply(id, cplx(0.3, 0.1)) == cplx(1.0, 0.0));
  BlaschkeProduct sq;
  sq.factors = {MoebiusParams::identity(), MoebiusParams::identity()};
  CHECK(dist(blaschke_apply(sq, cplx(0.3, 0.4)), cplx(0.3, 0.4) * cplx(0.3, 0.4)) < 1e-15);
}

TEST_CASE("solve_quadratic roots, Vieta and ordering") {
  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const cplx l1 = random_in_disc(rng, 2.0), l2 = random_in_disc(rng, 2.0);
    const cplx s = l1 + l2, p = l1 * l2;
    const EigenPair r = solve_quadratic(s, p);
    CHECK(std::abs(r.lambda1) >= std::abs(r.lambda2));
    CHECK(dist(r.lambda1 + r.lambda2, s) < 1e-12);
    CHECK(dist(r.lambda1 * r.lambda2, p) < 1e-12);
    const double e = std::min(dist(r.lambda1, l1) + dist(r.lambda2, l2), dist(r.lambda1, l2) + dist(r.lambda2, l1));
    CHECK(e < 1e-6);
  }
}

TEST_CASE("solve_quadratic avoids cancellation") {
  // l^2 - 1e8 l + 1: small root 1e-8 to full relative precision.
  const EigenPair r = solve_quadratic(1e8, 1.0);
  CHECK(std::abs(r.lambda2 - 1e-8) / 1e-8 < 1e-14);
  CHECK(std::abs(r.lambda1 - 1e8) / 1e8 < 1e-14);
}

TEST_CASE("solve_quadratic double root and ties") {
  const EigenPair d = solve_quadratic(1.0, 0.25);
  CHECK(dist(d.lambda1, 0.5) < 1e-15);
  CHECK(dist(d.lambda2, 0.5) < 1e-15);
  // Equal moduli: ordered by argument in [0, 2 pi).
  const EigenPair t = solve_quadratic(0.0, -1.0);  // roots +1, -1
  CHECK(dist(t.lambda1, 1.0) < 1e-15);
  CHECK(dist(t.lambda2, -1.0) < 1e-15);
  const EigenPair z = solve_quadratic(0.0, 0.0);
  CHECK(z.lambda1 == cplx(0.0, 0.0));
  CHECK(z.lambda2 == cplx(0.0, 0.0));
}

TEST_CASE("svd2 reconstructs and agrees with Hermitian eigenvalues") {
  Rng rng(15);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    Matrix2 z{{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
    if (i % 5 == 0) z.z21 = z.z22 = 0.0;  // rank one
    const Svd2 sv = svd2(z);
    const Matrix2 rec = sv.u * Matrix2::diag(sv.sigma1, sv.sigma2) * sv.v;
    CHECK(max_abs_diff(rec, z) < 1e-12 * (1.0 + sv.sigma1));
    CHECK(max_abs_diff(sv.u.adjoint() * sv.u, Matrix2::identity()) < 1e-13);
    CHECK(max_abs_diff(sv.v * sv.v.adjoint(), Matrix2::identity()) < 1e-13);
    const Matrix2 h = z.adjoint() * z;
    long double hi = 0, lo = 0;
    oracle::hermitian_eigs(h.z11.real(), h.z12, h.z22.real(), hi, lo);
    CHECK(std::abs(sv.sigma1 - std::sqrt(static_cast<double>(hi))) < 1e-12 * (1.0 + sv.sigma1));
    CHECK(sv.sigma1 >= sv.sigma2);
    CHECK(sv.sigma2 >= 0.0);
    CHECK(std::abs(operator_norm(z) - oracle::power_norm(z)) < 1e-9 * (1.0 + sv.sigma1));
  }
}

TEST_CASE("svd2 edge cases") {
  const Svd2 zero = svd2(Matrix2::zero());
  CHECK(zero.sigma1 == 0.0);
  CHECK(zero.sigma2 == 0.0);
  const Svd2 id = svd2(Matrix2::identity());
  CHECK(id.sigma1 == doctest::Approx(1.0));
  CHECK(id.sigma2 == doctest::Approx(1.0));
  const Matrix2 nil{0.0, 1.0, 0.0, 0.0};
  const Svd2 n = svd2(nil);
  CHECK(n.sigma1 == doctest::Approx(1.0));
  CHECK(n.sigma2 == doctest::Approx(0.0));
  CHECK(max_abs_diff(n.u * Matrix2::diag(1.0, 0.0) * n.v, nil) < 1e-15);
}

TEST_CASE("wirtinger_jet on hand-computed fields") {
  const cplx z0(0.3, -0.2);
  // |z|^2: u_z = conj z, u_zz = 0, u_zzbar = 1.
  const WirtingerJet a = wirtinger_jet([](cplx z) { return std::norm(z); }, z0);
  CHECK(dist(a.d_z, std::conj(z0)) < 1e-10);
  CHECK(dist(a.d_zbar, z0) < 1e-10);
  CHECK(std::abs(a.d_zz) < 1e-6);
  CHECK(dist(a.d_zzbar, 1.0) < 1e-6);
  // Re z^3: u_z = 3 z^2 / 2, u_zz = 3 z, harmonic.
  const WirtingerJet b = wirtinger_jet([](cplx z) { return std::real(z * z * z); }, z0);
  CHECK(dist(b.d_z, 1.5 * z0 * z0) < 1e-7);
  CHECK(dist(b.d_zz, 3.0 * z0) < 1e-6);
  CHECK(std::abs(b.d_zzbar) < 1e-6);
}

TEST_CASE("wirtinger_jet converges at second order") {
  // |z|^4 has u_zzbar = 4 |z|^2; the stencil error is O(h^2).
  const cplx z0(0.4, 0.25);
  auto f = [](cplx z) { return std::norm(z) * std::norm(z); };
  const double exact = 4.0 * std::norm(z0);
  const double e1 = std::abs(wirtinger_jet(f, z0, 1e-2).d_zzbar.real() - exact);
  const double e2 = std::abs(wirtinger_jet(f, z0, 5e-3).d_zzbar.real() - exact);
  CHECK(e1 > 0.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("refined jets reach near machine accuracy on smooth fields") {
  const cplx z0(0.2, 0.1);
  auto f = [](cplx z) { return -2.0 * std::log(std::abs(1.0 - z / 4.0)) + std::norm(z) * std::norm(z); };
  const RefinedJet r = wirtinger_jet_refined(f, z0, 1e-2);
  CHECK(std::abs(r.jet.d_zzbar.real() - 4.0 * std::norm(z0)) < 1e-9);
  CHECK(r.delta < 1e-8);
}

TEST_CASE("wirtinger_jet reports evaluation failures") {
  CHECK_THROWS_AS(wirtinger_jet([](cplx z) { return std::log(z.real()); }, 0.0), EvaluationFailure);
  CHECK_THROWS_AS(wirtinger_jet([](cplx) -> double { throw DomainError("nope"); }, 0.0), EvaluationFailure);
  CHECK_THROWS_AS(wirtinger_jet([](cplx z) { return z.real(); }, 0.0, 0.0), InvalidArgument);
}
