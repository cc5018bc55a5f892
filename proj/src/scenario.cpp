#include "scendp/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scendp {

void DistributionSpec::validate() const {
  if (lo > hi) {
    throw std::invalid_argument("distribution bounds: lo > hi");
  }
  if (lo < 0) {
    throw std::invalid_argument("demands are nonnegative: lo must be >= 0");
  }
  if (kind == Kind::kTruncatedNormal && !(stddev > 0.0)) {
    throw std::invalid_argument("truncated normal: std must be > 0");
  }
}

std::uint32_t DistributionSpec::sample(SplitMix64& rng) const {
  if (kind == Kind::kUniformInt) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return static_cast<std::uint32_t>(lo + static_cast<std::int64_t>(rng.next_below(span)));
  }
  // Truncated normal: Box-Muller draws, rounded to the nearest integer,
  // resampled until inside [lo, hi]. The retry cap keeps sampling total; the
  // fallback clamp only triggers for degenerate parameterizations.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double u1 = rng.next_unit();
    const double u2 = rng.next_unit();
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const long long r = std::llround(mean + stddev * z);
    if (r >= lo && r <= hi) return static_cast<std::uint32_t>(r);
  }
  const long long r = std::clamp<long long>(std::llround(mean), lo, hi);
  return static_cast<std::uint32_t>(r);
}

DistributionSpec DistributionSpec::parse(std::string_view text,
                                         std::uint64_t seed) {
  DistributionSpec spec;
  spec.seed = seed;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      break;
    }
    parts.emplace_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  try {
    if (parts.size() == 3 && parts[0] == "uniform") {
      spec.kind = Kind::kUniformInt;
      spec.lo = std::stoll(parts[1]);
      spec.hi = std::stoll(parts[2]);
    } else if (parts.size() == 5 && parts[0] == "tnormal") {
      spec.kind = Kind::kTruncatedNormal;
      spec.mean = std::stod(parts[1]);
      spec.stddev = std::stod(parts[2]);
      spec.lo = std::stoll(parts[3]);
      spec.hi = std::stoll(parts[4]);
    } else {
      throw std::invalid_argument("unrecognized layout");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument(
        "distribution spec '" + std::string(text) +
        "': expected uniform:lo:hi or tnormal:mean:std:lo:hi");
  }
  spec.validate();
  return spec;
}

std::string DistributionSpec::describe() const {
  if (kind == Kind::kUniformInt) {
    return "uniform:" + std::to_string(lo) + ":" + std::to_string(hi);
  }
  std::string s = "tnormal:";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g:%.12g", mean, stddev);
  s += buf;
  s += ":" + std::to_string(lo) + ":" + std::to_string(hi);
  return s;
}

void generate_scenario_column(const DistributionSpec& dist, std::size_t w,
                              std::span<std::uint32_t> out) {
  SplitMix64 rng(derive_stream(dist.seed, kStreamScenario, w));
  for (std::uint32_t& v : out) v = dist.sample(rng);
}

ScenarioBatch generate_scenarios(const DistributionSpec& dist,
                                 std::size_t entities, std::size_t steps,
                                 std::size_t count) {
  dist.validate();
  if (entities == 0 || steps == 0) {
    throw std::invalid_argument("scenario grid must have at least one cell");
  }
  ScenarioBatch batch;
  batch.rows = entities * steps;
  batch.count = count;
  batch.data.resize(batch.rows * count);
  for (std::size_t w = 0; w < count; ++w) {
    generate_scenario_column(dist, w,
                             {batch.data.data() + w * batch.rows, batch.rows});
  }
  return batch;
}

}  // namespace scendp
