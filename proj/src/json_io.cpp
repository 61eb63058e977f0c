#include "pentageom/json_io.hpp"

#include "pentageom/suites.hpp"

namespace pentageom {

namespace {

Json vec(const auto& v) {
  Json out = Json::array();
  for (cplx z : v) out.push_back(to_json(z));
  return out;
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const PentaPoint& x) { return {{"a", to_json(x.a)}, {"s", to_json(x.s)}, {"p", to_json(x.p)}}; }

Json to_json(const MembershipReport& r) {
  Json j;
  j["schema"] = kReportSchema;
  j["point"] = to_json(r.point);
  j["criterion"] = to_string(r.criterion);
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = r.margin;
  j["g2"] = {{"value", r.g2_value}, {"verdict", to_string(r.g2)}};
  Json c = Json::object();
  if (r.has_c2) c["c2"] = {{"verdict", to_string(r.c2)}, {"bound", r.bound2}, {"beta", to_json(r.beta)}};
  if (r.has_c3) c["c3"] = {{"verdict", to_string(r.c3)}, {"bound", r.bound3}};
  if (r.has_c4) c["c4"] = {{"verdict", to_string(r.c4)}, {"sup_psi", r.sup_psi}, {"argmax_z", to_json(r.argmax_z)}};
  j["criteria"] = c;
  return j;
}

Json to_json(const PentaAutomorphism& f) {
  return {{"omega", to_json(f.omega)}, {"eta", to_json(f.nu.eta)}, {"alpha", to_json(f.nu.alpha)}};
}

Json to_json(const ConvexityReport& r) {
  return {{"base", vec(r.base)},
          {"direction", vec(r.direction)},
          {"t0", to_json(r.t0)},
          {"h", r.h},
          {"lhs", r.lhs},
          {"rhs_paper", r.rhs_paper},
          {"rhs_standard", r.rhs_standard},
          {"margin_paper", r.margin_paper},
          {"margin_standard", r.margin_standard},
          {"error_estimate", r.error_estimate},
          {"active_switch", r.active_switch}};
}

Json to_json(const LeviResult& r) {
  return {{"point", to_json(r.point)},
          {"tangent", vec(r.tangent)},
          {"part", to_string(r.part)},
          {"value", r.value},
          {"error_estimate", r.error_estimate},
          {"tangency_residual", r.tangency_residual}};
}

Json to_json(const AnalyticDisc& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) terms.push_back({{"powers", {t.powers[0], t.powers[1]}}, {"coeff", vec(t.coeff)}});
  Json center = Json::array();
  for (int k = 0; k < d.parameters; ++k) center.push_back(to_json(d.center[k]));
  return {{"tag", to_string(d.tag)}, {"parameters", d.parameters}, {"center", center}, {"terms", terms}};
}

Json to_json(const HyperplaneWitness& w) {
  if (const auto* l = std::get_if<ProductLine>(&w)) {
    return {{"kind", "product-line"},
            {"point", vec(l->point)},
            {"direction", vec(l->direction)},
            {"clearance", l->clearance}};
  }
  const auto& ls = std::get<PsiLevelSet>(w);
  return {{"kind", "psi-level-set"}, {"z", to_json(ls.z)}, {"omega", to_json(ls.omega)}};
}

Json to_json(const WitnessVerification& v) {
  return {{"samples", v.samples}, {"min_residual", v.min_residual}, {"projected_checks", v.projected_checks}};
}

}  // namespace pentageom
