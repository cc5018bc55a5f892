#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scendp {

// Stateless splitmix64 finalizer, the building block of every random stream.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Tiny fully-specified generator. All randomness in the project flows from a
/// single seed through derive_stream, so runs are reproducible and scenario
/// columns can be generated independently of each other (prefix-stable
/// truncation, lazy generation by index).
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit constexpr SplitMix64(std::uint64_t seed) : state(seed) {}

  constexpr std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform double in (0, 1].
  double next_unit() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }
};

// Named sub-streams of the top-level seed.
inline constexpr std::uint64_t kStreamScenario = 0x5343454eULL;    // training draws
inline constexpr std::uint64_t kStreamEvaluation = 0x4556414cULL;  // out-of-sample sets
inline constexpr std::uint64_t kStreamInstance = 0x494e5354ULL;    // synthetic instances
inline constexpr std::uint64_t kStreamExperiment = 0x45585054ULL;  // per-replication seeds

constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag,
                                      std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ tag) ^ index);
}

/// Integer demand distribution. Samples are always integers inside [lo, hi].
struct DistributionSpec {
  enum class Kind { kUniformInt, kTruncatedNormal };

  Kind kind = Kind::kUniformInt;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double mean = 0.0;
  double stddev = 1.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
  std::uint32_t sample(SplitMix64& rng) const;

  // Accepts "uniform:lo:hi" and "tnormal:mean:std:lo:hi".
  static DistributionSpec parse(std::string_view text, std::uint64_t seed);
  std::string describe() const;
};

/// Sampled demand realizations, scenario-major: column w (one scenario) is the
/// contiguous block data[w*rows .. (w+1)*rows). Rows are entity-major, i.e.
/// customers for the routing instantiation (one step each) and days for the
/// inventory instantiation (one entity).
struct ScenarioBatch {
  std::size_t rows = 0;
  std::size_t count = 0;
  std::vector<std::uint32_t> data;

  std::span<const std::uint32_t> column(std::size_t w) const {
    return {data.data() + w * rows, rows};
  }

  bool operator==(const ScenarioBatch&) const = default;
};

// Fills one scenario column (rows values) for scenario index w. Used both by
// generate_scenarios and by benchmarks that stream scenarios without
// materializing the batch.
void generate_scenario_column(const DistributionSpec& dist, std::size_t w,
                              std::span<std::uint32_t> out);

// m i.i.d. scenario columns over an (entities x steps) demand grid. The same
// spec always produces the same batch, and a batch of m' > m columns starts
// with exactly the batch of m columns.
ScenarioBatch generate_scenarios(const DistributionSpec& dist,
                                 std::size_t entities, std::size_t steps,
                                 std::size_t count);

}  // namespace scendp
