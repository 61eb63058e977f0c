#pragma once

// Seeded point samplers. All randomness in the library flows through Rng so
// that every run is reproducible from its seed.

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "pentageom/complexalg.hpp"
#include "pentageom/domains.hpp"

namespace pentageom {

using Rng = std::mt19937_64;

enum class SamplerStrategy { ContractionPushforward, RejectionInBox, BoundaryPart1, BoundaryPart2 };

const char* to_string(SamplerStrategy s);
/// Accepts the kebab-case names ("contraction-pushforward", ...); throws InvalidArgument.
SamplerStrategy parse_strategy(std::string_view name);

struct SamplerConfig {
  SamplerStrategy strategy = SamplerStrategy::ContractionPushforward;
  int count = 1;
  std::uint64_t seed = 0;
  /// contraction-pushforward: largest operator norm (default 1).
  /// boundary strategies: radius of the disc the free roots are drawn from (default 0.9).
  std::optional<double> radius_cap;
};

/// Independent stream for shard `index` of a run seeded with `master`.
std::uint64_t shard_seed(std::uint64_t master, std::uint64_t index);

double uniform01(Rng& rng);
cplx random_in_disc(Rng& rng, double radius = 1.0);
cplx random_unimodular(Rng& rng);
/// Complex-Gaussian entries rescaled to the given operator norm.
Matrix2 random_contraction(Rng& rng, double norm);
/// pi of a contraction whose norm is uniform in (0, cap).
PentaPoint random_penta_point(Rng& rng, double cap = 1.0);
/// (l1 + l2, l1 l2) with both roots uniform in the disc of the given radius.
SymmetrisedPoint random_g2_point(Rng& rng, double root_radius = 1.0);

std::vector<PentaPoint> sample_penta(const SamplerConfig& cfg);

}  // namespace pentageom
