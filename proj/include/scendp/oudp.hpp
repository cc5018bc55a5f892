#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scendp/engine.hpp"
#include "scendp/minplus.hpp"
#include "scendp/scenario.hpp"

namespace scendp {

/// Single customer under the order-up-to policy: every delivery refills the
/// inventory to capacity U, the only alternative is no delivery.
struct CustomerSpec {
  int capacity = 0;           // U
  int initial_inventory = 0;  // I0, in [0, U]
  int horizon = 1;            // H days
  double holding = 0.0;       // h, per unit and day
  double stockout_multiplier = 2.0;  // rho > 1; stockouts cost rho * h per unit

  void validate() const;
};

/// Delivery cost F_t(q; r) over days t = 1..H and route options r = 0..R-1.
/// Standard form: 0 for q = 0, otherwise fixed(t, r) + unit(t, r) * q. A
/// tabular per-day override F_t(q) exists for instances specified by explicit
/// tables; it must satisfy F_t(0) = 0.
struct DeliveryCostModel {
  int horizon = 1;
  int options = 1;  // R
  std::vector<double> fixed;  // [t][r], size H * R
  std::vector<double> unit;   // [t][r]
  bool tabular = false;
  std::vector<double> table;  // [t][q], size H * (U_max + 1)
  int table_quantities = 0;   // columns of the table (U + 1)

  static DeliveryCostModel linear(int horizon, int options, double fixed_cost,
                                  double unit_cost);

  double cost(int day, int option, int quantity) const {
    if (quantity == 0) return 0.0;
    if (tabular) return table[(day - 1) * table_quantities + quantity];
    return fixed[(day - 1) * options + option] +
           unit[(day - 1) * options + option] * quantity;
  }

  void validate(const CustomerSpec& spec) const;
};

/// End-of-day inventory penalty. Standard form h*J + rho*h*s for end inventory
/// J and shortage s; the tabular form depends on the end state only and
/// reproduces instances given as explicit state-cost tables.
struct HoldingPenaltyModel {
  bool tabular = false;
  std::vector<double> table;  // size U+1, cost at end inventory J

  double cost(const CustomerSpec& spec, int end_inventory, int shortage) const {
    if (tabular) return table[end_inventory];
    return spec.holding * end_inventory +
           spec.stockout_multiplier * spec.holding * shortage;
  }

  void validate(const CustomerSpec& spec) const;
};

/// Recovered per-scenario schedule. Quantities follow the order-up-to rule
/// exactly: q^t is 0 or U - I^{t-1}, and q^t > 0 iff deliver[t] is set.
struct ScheduleResult {
  ExtendedCost total;
  std::vector<std::uint8_t> deliver;       // z^t, size H
  std::vector<std::int32_t> quantity;      // q^t
  std::vector<std::int32_t> end_inventory; // I^t
  std::vector<std::int32_t> route_option;  // r on delivery days, 0 otherwise
};

struct DayOutcome {
  int end_inventory = 0;  // J = max(0, I + q - d)
  int shortage = 0;       // s = max(0, d - I - q)
};

// One day of inventory dynamics. Rejects quantities outside the order-up-to
// set {0, U - I}.
DayOutcome simulate_day(const CustomerSpec& spec, int inventory, int quantity,
                        int demand);

// Collapsed (U+1) x (U+1) stage matrix for one day: entry (I, J) is the
// cheapest way to move from start inventory I to end inventory J over the
// order-up-to actions and route options, +inf where no action reaches J.
MaskedTransition build_transition_matrix(const CustomerSpec& spec,
                                         const DeliveryCostModel& delivery,
                                         const HoldingPenaltyModel& holding,
                                         int day, int demand);

// Forward sweep over the H stage matrices starting from the frontier with 0
// at I0. Used by solve_customer_scenario and by golden tests that inspect the
// intermediate frontiers.
std::vector<ValueFrontier> sweep_customer_scenario(
    const CustomerSpec& spec, const DeliveryCostModel& delivery,
    const HoldingPenaltyModel& holding, std::span<const std::uint32_t> demands);

// Optimal schedule for one demand scenario. Argmin ties prefer no delivery,
// then the smaller route option, then the smaller predecessor state; the
// terminal state tie prefers the smaller inventory.
ScheduleResult solve_customer_scenario(const CustomerSpec& spec,
                                       const DeliveryCostModel& delivery,
                                       const HoldingPenaltyModel& holding,
                                       std::span<const std::uint32_t> demands);

// Replays a schedule through the cost models and returns its total, using the
// same per-day cost grouping as the DP so totals match exactly.
ExtendedCost simulate_schedule(const CustomerSpec& spec,
                               const DeliveryCostModel& delivery,
                               const HoldingPenaltyModel& holding,
                               std::span<const std::uint32_t> demands,
                               std::span<const std::uint8_t> deliver,
                               std::span<const std::int32_t> route_option);

// Enumerates all 2^H delivery patterns, choosing the cheapest route option
// per delivery day. Verification oracle; H <= 14.
ExtendedCost brute_force_schedule(const CustomerSpec& spec,
                                  const DeliveryCostModel& delivery,
                                  const HoldingPenaltyModel& holding,
                                  std::span<const std::uint32_t> demands);

// Documented bytes pinned per scenario by a batched evaluation: the
// backpointer tensor slice (H * (U+1) packed entries), the per-batch value
// rows, the scenario column and the stored schedule.
std::uint64_t oudp_per_scenario_bytes(const CustomerSpec& spec);
FootprintModel oudp_footprint_model(const CustomerSpec& spec);

// One ScheduleResult per scenario in input order. Scenarios are solved over a
// per-batch decision tensor whose size is capped by the byte budget in the
// config, so peak memory follows the documented footprint model.
BatchResultSet<ScheduleResult> batched_expected_cost(
    const CustomerSpec& spec, const DeliveryCostModel& delivery,
    const HoldingPenaltyModel& holding, const ScenarioBatch& scenarios,
    const BackendConfig& config);

}  // namespace scendp
