#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>

#include "pentageom/automorphisms.hpp"
#include "pentageom/convexity.hpp"
#include "pentageom/domains.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/json_io.hpp"
#include "pentageom/sampling.hpp"
#include "pentageom/suites.hpp"

namespace py = pybind11;
using namespace pentageom;

namespace {

using Triple = std::tuple<cplx, cplx, cplx>;
using MatrixRows = std::array<std::array<cplx, 2>, 2>;

PentaPoint point(const Triple& t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t)}; }
Triple triple(const PentaPoint& x) { return {x.a, x.s, x.p}; }

PentaAutomorphism automorphism(const Triple& t) {
  return PentaAutomorphism::make(std::get<0>(t), std::get<1>(t), std::get<2>(t));
}
Triple params(const PentaAutomorphism& f) { return {f.omega, f.nu.eta, f.nu.alpha}; }

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Criterion criterion(const std::string& s) {
  for (auto c : {Criterion::C2, Criterion::C3, Criterion::C4, Criterion::All}) {
    if (s == to_string(c)) return c;
  }
  throw InvalidArgument("criterion must be one of c2, c3, c4, all");
}

HyperplaneWitness witness_from_dict(const py::dict& d) {
  const auto kind = d["kind"].cast<std::string>();
  auto c = [](const py::handle& h) {
    const auto v = h.cast<std::array<double, 2>>();
    return cplx{v[0], v[1]};
  };
  if (kind == "psi-level-set") return PsiLevelSet{c(d["z"]), c(d["omega"])};
  if (kind == "product-line") {
    const auto pt = d["point"].cast<py::list>();
    const auto dir = d["direction"].cast<py::list>();
    return ProductLine{{c(pt[0]), c(pt[1])}, {c(dir[0]), c(dir[1])}, d["clearance"].cast<double>()};
  }
  throw InvalidArgument("unknown witness kind '" + kind + "'");
}

ScalarField2C field(const std::string& name, cplx z) {
  if (name == "phi") return phi_field();
  if (name == "phiz") return phi_z_field(z);
  throw InvalidArgument("field must be 'phi' or 'phiz'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical geometry of the pentablock";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<EvaluationFailure>(m, "EvaluationFailure", base.ptr());
  py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());
  py::register_exception<LiftFailure>(m, "LiftFailure", base.ptr());
  py::register_exception<ClassificationError>(m, "ClassificationError", base.ptr());
  py::register_exception<WitnessNotFound>(m, "WitnessNotFound", base.ptr());
  py::register_exception<WitnessViolation>(m, "WitnessViolation", base.ptr());
  py::register_exception<UnknownSuite>(m, "UnknownSuite", base.ptr());

  m.def("solve_quadratic", [](cplx s, cplx p) {
    const EigenPair r = solve_quadratic(s, p);
    return std::make_tuple(r.lambda1, r.lambda2);
  }, py::arg("s"), py::arg("p"), "Roots of l^2 - s l + p, larger modulus first.");

  m.def("penta_contains", [](const Triple& x, const std::string& crit, double tol) {
    return to_py(to_json(penta_contains(point(x), criterion(crit), tol)));
  }, py::arg("x"), py::arg("criterion") = "all", py::arg("tol") = kDefaultBand);

  m.def("boundary_classify", [](const Triple& x, double tol) { return std::string(to_string(boundary_classify(point(x), tol))); },
        py::arg("x"), py::arg("tol") = kDefaultBand);

  m.def("phi", &phi, py::arg("s"), py::arg("p"));
  m.def("criterion2_bound", &criterion2_bound, py::arg("s"), py::arg("p"));
  m.def("psi", [](cplx z, const Triple& x) { return psi(z, point(x)); }, py::arg("z"), py::arg("x"));
  m.def("sup_psi", [](const Triple& x) {
    const SupPsiResult r = sup_psi(point(x));
    return std::make_tuple(r.sup, r.argmax);
  }, py::arg("x"));

  m.def("pi_map", [](const MatrixRows& z) {
    return triple(pi_map({z[0][0], z[0][1], z[1][0], z[1][1]}));
  }, py::arg("z"));
  m.def("lift_to_ball", [](const Triple& x, double tol) {
    const Matrix2 z = lift_to_ball(point(x), tol);
    return MatrixRows{{{z.z11, z.z12}, {z.z21, z.z22}}};
  }, py::arg("x"), py::arg("tol") = kDefaultBand);
  m.def("operator_norm", [](const MatrixRows& z) {
    return operator_norm({z[0][0], z[0][1], z[1][0], z[1][1]});
  }, py::arg("z"));

  m.def("auto_apply", [](const Triple& f, const Triple& x) { return triple(auto_apply(automorphism(f), point(x))); },
        py::arg("f"), py::arg("x"), "f = (omega, eta, alpha).");
  m.def("auto_inverse", [](const Triple& f) { return params(auto_inverse(automorphism(f))); }, py::arg("f"));
  m.def("auto_compose", [](const Triple& f, const Triple& g) {
    return params(auto_compose(automorphism(f), automorphism(g)));
  }, py::arg("f"), py::arg("g"), "Parameters of f o g (g applied first).");
  m.def("orbit_of_origin", [](const Triple& f) { return triple(orbit_of_origin(automorphism(f))); }, py::arg("f"));
  m.def("symmetrize_blaschke", [](cplx prefactor, const std::vector<std::pair<cplx, cplx>>& factors, cplx s, cplx p) {
    BlaschkeProduct b;
    b.prefactor = prefactor;
    for (const auto& [eta, alpha] : factors) b.factors.push_back(MoebiusParams::make(eta, alpha));
    const SymmetrisedPoint q = symmetrize_blaschke(b, {s, p});
    return std::make_tuple(q.s, q.p);
  }, py::arg("prefactor"), py::arg("factors"), py::arg("s"), py::arg("p"), "factors = [(eta, alpha), ...].");

  m.def("cconvexity_check", [](const std::string& name, std::pair<cplx, cplx> base, std::pair<cplx, cplx> dir,
                               cplx t0, cplx z) {
    return to_py(to_json(cconvexity_check(field(name, z), {base.first, base.second}, {dir.first, dir.second}, t0)));
  }, py::arg("field"), py::arg("base"), py::arg("direction"), py::arg("t0") = cplx{}, py::arg("z") = cplx{});

  m.def("levi_form", [](const Triple& x, const Triple& v) {
    return to_py(to_json(levi_form(point(x), {std::get<0>(v), std::get<1>(v), std::get<2>(v)})));
  }, py::arg("x"), py::arg("v"));
  m.def("complex_tangent_basis", [](const Triple& x) {
    const auto b = complex_tangent_basis(point(x));
    return std::make_pair(Triple{b[0][0], b[0][1], b[0][2]}, Triple{b[1][0], b[1][1], b[1][2]});
  }, py::arg("x"));
  m.def("foliation_disc", [](const Triple& x) {
    const PentaPoint p = point(x);
    const BoundaryClass c = boundary_classify(p, 1e-8);
    return to_py(to_json(c == BoundaryClass::Part2 ? foliation_disc_part2(p) : foliation_disc_part1(p)));
  }, py::arg("x"), "Foliating disc through a part-1 or part-2 boundary point.");

  m.def("linconvex_witness", [](const Triple& x, double tol) { return to_py(to_json(linconvex_witness(point(x), tol))); },
        py::arg("x"), py::arg("tol") = kDefaultBand);
  m.def("witness_residual", [](const py::dict& w, const Triple& y) { return witness_residual(witness_from_dict(w), point(y)); },
        py::arg("witness"), py::arg("y"));
  m.def("witness_verify", [](const py::dict& w, int n, std::uint64_t seed) {
    return to_py(to_json(witness_verify(witness_from_dict(w), n, seed)));
  }, py::arg("witness"), py::arg("n") = 10000, py::arg("seed") = 0);

  m.def("sample_penta", [](const std::string& strategy, int count, std::uint64_t seed, std::optional<double> cap) {
    SamplerConfig cfg;
    cfg.strategy = parse_strategy(strategy);
    cfg.count = count;
    cfg.seed = seed;
    cfg.radius_cap = cap;
    std::vector<Triple> out;
    for (const auto& x : sample_penta(cfg)) out.push_back(triple(x));
    return out;
  }, py::arg("strategy") = "contraction-pushforward", py::arg("count") = 1, py::arg("seed") = 0,
     py::arg("radius_cap") = std::nullopt);

  m.def("suite_names", &suite_names);
  m.def("run_suite", [](const std::string& name, long n, std::uint64_t seed, double tol, bool timing) {
    SuiteConfig cfg;
    cfg.n = n;
    cfg.seed = seed;
    cfg.tol = tol;
    SuiteReport r;
    {
      py::gil_scoped_release release;
      r = run_suite(name, cfg);
    }
    return to_py(r.to_json(timing));
  }, py::arg("name"), py::arg("n") = 0, py::arg("seed") = 0, py::arg("tol") = kDefaultBand, py::arg("timing") = true);
}
