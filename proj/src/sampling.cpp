#include "pentageom/sampling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "pentageom/errors.hpp"

namespace pentageom {

const char* to_string(SamplerStrategy s) {
  switch (s) {
    case SamplerStrategy::ContractionPushforward: return "contraction-pushforward";
    case SamplerStrategy::RejectionInBox: return "rejection-in-box";
    case SamplerStrategy::BoundaryPart1: return "boundary-part1";
    case SamplerStrategy::BoundaryPart2: return "boundary-part2";
  }
  return "?";
}

SamplerStrategy parse_strategy(std::string_view name) {
  for (auto s : {SamplerStrategy::ContractionPushforward, SamplerStrategy::RejectionInBox,
                 SamplerStrategy::BoundaryPart1, SamplerStrategy::BoundaryPart2}) {
    if (name == to_string(s)) return s;
  }
  throw InvalidArgument("unknown sampling strategy '" + std::string(name) + "'");
}

std::uint64_t shard_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finaliser over the pair.
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

cplx random_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform01(rng));
  return std::polar(r, 2.0 * std::numbers::pi * uniform01(rng));
}

cplx random_unimodular(Rng& rng) { return std::polar(1.0, 2.0 * std::numbers::pi * uniform01(rng)); }

Matrix2 random_contraction(Rng& rng, double norm) {
  std::normal_distribution<double> g;
  Matrix2 z;
  do {
    z = {{g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}};
  } while (z.frobenius_sq() == 0.0);
  return (norm / operator_norm(z)) * z;
}

PentaPoint random_penta_point(Rng& rng, double cap) {
  return pi_map(random_contraction(rng, cap * uniform01(rng)));
}

SymmetrisedPoint random_g2_point(Rng& rng, double root_radius) {
  const cplx l1 = random_in_disc(rng, root_radius);
  const cplx l2 = random_in_disc(rng, root_radius);
  return {l1 + l2, l1 * l2};
}

std::vector<PentaPoint> sample_penta(const SamplerConfig& cfg) {
  if (cfg.count <= 0) throw InvalidArgument("sample count must be positive");
  Rng rng(cfg.seed);
  std::vector<PentaPoint> out;
  out.reserve(static_cast<size_t>(cfg.count));

  switch (cfg.strategy) {
    case SamplerStrategy::ContractionPushforward: {
      const double cap = cfg.radius_cap.value_or(1.0);
      if (!(cap > 0.0 && cap <= 1.0)) throw InvalidArgument("contraction radius cap must lie in (0, 1]");
      for (int i = 0; i < cfg.count; ++i) out.push_back(random_penta_point(rng, cap));
      break;
    }
    case SamplerStrategy::RejectionInBox: {
      long draws = 0;
      while (static_cast<int>(out.size()) < cfg.count) {
        const PentaPoint x{random_in_disc(rng, 1.01), random_in_disc(rng, 2.0), random_in_disc(rng, 1.0)};
        ++draws;
        if (penta_contains(x, Criterion::C2).verdict == Verdict::Inside) out.push_back(x);
        if (draws >= 1'000'000 && static_cast<double>(out.size()) < 1e-3 * static_cast<double>(draws)) {
          std::ostringstream os;
          os << "rejection sampler accepted " << out.size() << " of " << draws << " draws";
          throw ExhaustionError(os.str());
        }
      }
      break;
    }
    case SamplerStrategy::BoundaryPart1: {
      const double cap = cfg.radius_cap.value_or(0.9);
      for (int i = 0; i < cfg.count; ++i) {
        const SymmetrisedPoint q = random_g2_point(rng, cap);
        out.push_back({criterion2_bound(q.s, q.p) * random_unimodular(rng), q.s, q.p});
      }
      break;
    }
    case SamplerStrategy::BoundaryPart2: {
      const double cap = cfg.radius_cap.value_or(0.9);
      for (int i = 0; i < cfg.count; ++i) {
        const cplx l1 = random_unimodular(rng);
        const cplx l2 = random_in_disc(rng, cap);
        const double b3 = criterion3_bound({l1, l2});
        const double scale = 0.9 * uniform01(rng);
        out.push_back({b3 * scale * random_unimodular(rng), l1 + l2, l1 * l2});
      }
      break;
    }
  }
  return out;
}

}  // namespace pentageom
