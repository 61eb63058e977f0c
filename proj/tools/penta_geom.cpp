// penta-geom: command line front end for the pentageom library.
//
// Exit codes: 0 success / property holds, 1 mathematical failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pentageom/automorphisms.hpp"
#include "pentageom/convexity.hpp"
#include "pentageom/domains.hpp"
#include "pentageom/errors.hpp"
#include "pentageom/json_io.hpp"
#include "pentageom/sampling.hpp"
#include "pentageom/suites.hpp"

using namespace pentageom;

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_reals(const std::string& text, size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.size() != count) {
    throw UsageError(std::string(what) + ": expected " + std::to_string(count) + " comma-separated reals, got " +
                     std::to_string(out.size()));
  }
  return out;
}

PentaPoint parse_point(const std::string& text) {
  const auto v = parse_reals(text, 6, "--point");
  return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
}

cplx parse_complex(const std::string& text, const char* what) {
  const auto v = parse_reals(text, 2, what);
  return {v[0], v[1]};
}

PentaAutomorphism parse_automorphism(const std::string& text, const char* what) {
  const auto v = parse_reals(text, 6, what);
  try {
    return PentaAutomorphism::make({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]});
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

Criterion parse_criterion(const std::string& s) {
  for (auto c : {Criterion::C2, Criterion::C3, Criterion::C4, Criterion::All}) {
    if (s == to_string(c)) return c;
  }
  throw UsageError("--criterion must be one of c2, c3, c4, all");
}

struct Output {
  std::string json_path;

  void emit(const Json& j) const {
    if (json_path.empty() || json_path == "-") {
      std::cout << j.dump(2) << "\n";
      return;
    }
    std::ofstream f(json_path);
    if (!f) throw UsageError("cannot open '" + json_path + "' for writing");
    f << j.dump(2) << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership oracles, automorphisms and boundary geometry of the pentablock"};
  app.require_subcommand(1);

  Output out;
  std::uint64_t seed = 0;
  double tol = kDefaultBand;
  long n = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--json", out.json_path, "Write JSON here instead of stdout");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--tol", tol, "Boundary band half-width")->check(CLI::PositiveNumber);
    sub->add_option("--n", n, "Sample count")->check(CLI::NonNegativeNumber);
  };

  // check
  std::string point_text;
  std::string criterion_text = "all";
  auto* check = app.add_subcommand("check", "Membership of a point in the pentablock");
  check->add_option("--point", point_text, "aRe,aIm,sRe,sIm,pRe,pIm")->required();
  check->add_option("--criterion", criterion_text, "c2, c3, c4 or all");
  common(check);

  // sample
  std::string strategy_text = "contraction-pushforward";
  double radius_cap = 0.0;
  std::string csv_path;
  auto* sample = app.add_subcommand("sample", "Draw points and print them as CSV with their boundary class");
  sample->add_option("--strategy", strategy_text,
                     "contraction-pushforward, rejection-in-box, boundary-part1 or boundary-part2");
  sample->add_option("--radius-cap", radius_cap, "Strategy radius cap");
  sample->add_option("--csv", csv_path, "Write CSV here instead of stdout");
  common(sample);

  // witness
  int verify = 0;
  auto* witness = app.add_subcommand("witness", "Complex hyperplane through a non-interior point missing the pentablock");
  witness->add_option("--point", point_text, "aRe,aIm,sRe,sIm,pRe,pIm")->required();
  witness->add_option("--verify", verify, "Check the witness against this many pentablock samples");
  common(witness);

  // boundary
  bool want_disc = false, want_levi = false;
  auto* boundary = app.add_subcommand("boundary", "Boundary part of a point, with optional disc and Levi data");
  boundary->add_option("--point", point_text, "aRe,aIm,sRe,sIm,pRe,pIm")->required();
  boundary->add_flag("--disc", want_disc, "Include the foliating analytic disc");
  boundary->add_flag("--levi", want_levi, "Include Levi forms on the complex tangent space");
  common(boundary);

  // convexity
  std::string field_text = "phi", z_text = "0,0", base_text, dir_text, t0_text = "0,0";
  double step = kLineStep, margin_tol = 1e-6;
  auto* convexity = app.add_subcommand("convexity", "C-convexity inequality along a complex line in (s, p)");
  convexity->add_option("--field", field_text, "phi, phiz or sup32");
  convexity->add_option("--z", z_text, "zRe,zIm for --field phiz");
  convexity->add_option("--base", base_text, "sRe,sIm,pRe,pIm")->required();
  convexity->add_option("--dir", dir_text, "dsRe,dsIm,dpRe,dpIm")->required();
  convexity->add_option("--t0", t0_text, "tRe,tIm");
  convexity->add_option("--step", step, "Initial finite-difference step")->check(CLI::PositiveNumber);
  convexity->add_option("--margin-tol", margin_tol, "Allowed negative margin");
  common(convexity);

  // auto
  std::string f_text = "1,0,1,0,0,0", g_text = "1,0,1,0,0,0";
  auto* aut = app.add_subcommand("auto", "Automorphisms f_{omega,nu}; parameters omegaRe,omegaIm,etaRe,etaIm,alphaRe,alphaIm");
  aut->require_subcommand(1);
  auto* apply = aut->add_subcommand("apply", "Image of a point");
  apply->add_option("--f", f_text)->required();
  apply->add_option("--point", point_text)->required();
  auto* compose = aut->add_subcommand("compose", "Parameters of f o g (g first)");
  compose->add_option("--f", f_text)->required();
  compose->add_option("--g", g_text)->required();
  auto* invert = aut->add_subcommand("invert", "Parameters of the inverse");
  invert->add_option("--f", f_text)->required();
  auto* orbit = aut->add_subcommand("orbit", "Image of the origin");
  orbit->add_option("--f", f_text)->required();
  for (auto* s : {apply, compose, invert, orbit}) s->add_option("--json", out.json_path, "Write JSON here");

  // suite
  std::string suite_name;
  int threads = 0;
  bool no_timing = false;
  auto* suite = app.add_subcommand("suite", "Run a named property suite (or 'all')");
  suite->add_option("--name", suite_name, "Suite name or 'all'")->required();
  suite->add_option("--threads", threads, "Worker threads (capped by PENTA_GEOM_THREADS)");
  suite->add_flag("--no-timing", no_timing, "Omit the wall-clock field for byte-stable output");
  common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) {
      const MembershipReport r = penta_contains(parse_point(point_text), parse_criterion(criterion_text), tol);
      out.emit(to_json(r));
      return kOk;
    }

    if (*sample) {
      SamplerConfig cfg;
      cfg.strategy = parse_strategy(strategy_text);
      cfg.count = n > 0 ? static_cast<int>(n) : 1;
      cfg.seed = seed;
      if (radius_cap > 0.0) cfg.radius_cap = radius_cap;
      const auto pts = sample_penta(cfg);
      std::ofstream file;
      if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) throw UsageError("cannot open '" + csv_path + "' for writing");
      }
      std::ostream& os = csv_path.empty() ? std::cout : file;
      os.precision(17);
      os << "aRe,aIm,sRe,sIm,pRe,pIm,class\n";
      for (const auto& x : pts) {
        os << x.a.real() << ',' << x.a.imag() << ',' << x.s.real() << ',' << x.s.imag() << ',' << x.p.real() << ','
           << x.p.imag() << ',' << to_string(boundary_classify(x, tol)) << '\n';
      }
      return kOk;
    }

    if (*witness) {
      const PentaPoint x = parse_point(point_text);
      Json j;
      j["schema"] = kReportSchema;
      j["point"] = to_json(x);
      try {
        const HyperplaneWitness w = linconvex_witness(x, tol);
        j["witness"] = to_json(w);
        j["residual_at_point"] = witness_residual(w, x);
        if (verify > 0) j["verification"] = to_json(witness_verify(w, verify, seed));
        j["pass"] = true;
      } catch (const Error& e) {
        j["pass"] = false;
        j["error"] = e.what();
        out.emit(j);
        return kMathFailure;
      }
      out.emit(j);
      return kOk;
    }

    if (*boundary) {
      const PentaPoint x = parse_point(point_text);
      const BoundaryClass c = boundary_classify(x, tol);
      Json j;
      j["schema"] = kReportSchema;
      j["point"] = to_json(x);
      j["class"] = to_string(c);
      if (want_disc) {
        if (c == BoundaryClass::Part1) j["disc"] = to_json(foliation_disc_part1(x, tol));
        else if (c == BoundaryClass::Part2) j["disc"] = to_json(foliation_disc_part2(x));
        else j["disc"] = nullptr;
      }
      if (want_levi) {
        Json levi = Json::array();
        if (c == BoundaryClass::Part1 || c == BoundaryClass::Part2) {
          for (const Vec3C& v : complex_tangent_basis(x)) levi.push_back(to_json(levi_form(x, v)));
        }
        j["levi"] = levi;
      }
      out.emit(j);
      return kOk;
    }

    if (*convexity) {
      const auto b = parse_reals(base_text, 4, "--base");
      const auto d = parse_reals(dir_text, 4, "--dir");
      const Vec2C base{cplx{b[0], b[1]}, cplx{b[2], b[3]}};
      const Vec2C dir{cplx{d[0], d[1]}, cplx{d[2], d[3]}};
      const cplx t0 = parse_complex(t0_text, "--t0");
      ConvexityReport r;
      if (field_text == "phi") {
        r = cconvexity_check(phi_field(), base, dir, t0, step);
      } else if (field_text == "phiz") {
        r = cconvexity_check(phi_z_field(parse_complex(z_text, "--z")), base, dir, t0, step);
      } else if (field_text == "sup32") {
        r = sup_family_check(phi_z_family(4, 8, 0.6), base, dir, t0, step);
      } else {
        throw UsageError("--field must be phi, phiz or sup32");
      }
      Json j;
      j["schema"] = kReportSchema;
      j["field"] = field_text;
      j["report"] = to_json(r);
      j["margin_tolerance"] = margin_tol;
      j["pass_paper"] = r.margin_paper >= -margin_tol;
      j["pass_standard"] = r.margin_standard >= -margin_tol;
      out.emit(j);
      return r.margin_paper >= -margin_tol ? kOk : kMathFailure;
    }

    if (*aut) {
      Json j;
      j["schema"] = kReportSchema;
      const PentaAutomorphism f = parse_automorphism(f_text, "--f");
      j["f"] = to_json(f);
      if (*apply) {
        const PentaPoint x = parse_point(point_text);
        j["point"] = to_json(x);
        j["image"] = to_json(auto_apply(f, x));
      } else if (*compose) {
        const PentaAutomorphism g = parse_automorphism(g_text, "--g");
        j["g"] = to_json(g);
        j["composition"] = to_json(auto_compose(f, g));
      } else if (*invert) {
        j["inverse"] = to_json(auto_inverse(f));
      } else {
        j["orbit_point"] = to_json(orbit_of_origin(f));
      }
      out.emit(j);
      return kOk;
    }

    if (*suite) {
      SuiteConfig cfg;
      cfg.n = n;
      cfg.seed = seed;
      cfg.tol = tol;
      cfg.threads = threads;
      std::vector<std::string> names;
      if (suite_name == "all") {
        names = suite_names();
      } else {
        names = {suite_name};
      }
      bool all_pass = true;
      Json reports = Json::array();
      for (const auto& name : names) {
        const SuiteReport r = run_suite(name, cfg);
        all_pass = all_pass && r.pass;
        reports.push_back(r.to_json(!no_timing));
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.suite << " (" << r.checks << " checks, " << r.failures
                  << " failures)\n";
      }
      out.emit(names.size() == 1 ? reports[0] : Json{{"schema", kReportSchema}, {"pass", all_pass}, {"reports", reports}});
      return all_pass ? kOk : kMathFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownSuite& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}
