#include "scendp/engine.hpp"

#include <limits>

namespace scendp {

std::size_t adjust_batch_size(std::size_t requested, std::uint64_t budget_bytes,
                              std::uint64_t per_scenario_bytes,
                              bool* undersized) {
  if (undersized) *undersized = false;
  if (per_scenario_bytes == 0) return std::max<std::size_t>(1, requested);
  const std::uint64_t fit = budget_bytes / per_scenario_bytes;
  if (fit == 0) {
    if (undersized) *undersized = true;
    return 1;
  }
  const std::uint64_t capped =
      std::min<std::uint64_t>(requested, fit);
  return static_cast<std::size_t>(std::max<std::uint64_t>(1, capped));
}

FootprintEstimate memory_footprint(const FootprintModel& model,
                                   std::uint64_t scenario_count) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (model.per_scenario_bytes != 0 &&
      scenario_count > (kMax - model.fixed_bytes) / model.per_scenario_bytes) {
    return {kMax, true};
  }
  return {model.fixed_bytes + scenario_count * model.per_scenario_bytes, false};
}

}  // namespace scendp
