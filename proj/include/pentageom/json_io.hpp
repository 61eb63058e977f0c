#pragma once

// JSON views of the library's result types, shared by the command line tool
// and the Python module. Complex numbers are written as [re, im].

#include "json.hpp"
#include "pentageom/automorphisms.hpp"
#include "pentageom/convexity.hpp"
#include "pentageom/domains.hpp"

namespace pentageom {

using Json = nlohmann::ordered_json;

Json to_json(cplx z);
Json to_json(const PentaPoint& x);
Json to_json(const MembershipReport& r);
Json to_json(const PentaAutomorphism& f);
Json to_json(const ConvexityReport& r);
Json to_json(const LeviResult& r);
Json to_json(const AnalyticDisc& d);
Json to_json(const HyperplaneWitness& w);
Json to_json(const WitnessVerification& v);

}  // namespace pentageom
