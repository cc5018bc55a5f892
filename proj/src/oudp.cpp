#include "scendp/oudp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scendp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Backpointer packing: predecessor state in the low 16 bits, the delivery
// flag at bit 16, the route option above it.
constexpr std::uint32_t pack_step(int pred, int deliver, int option) {
  return static_cast<std::uint32_t>(pred) |
         (static_cast<std::uint32_t>(deliver) << 16) |
         (static_cast<std::uint32_t>(option) << 17);
}
constexpr int step_pred(std::uint32_t e) { return static_cast<int>(e & 0xffff); }
constexpr int step_deliver(std::uint32_t e) { return static_cast<int>((e >> 16) & 1); }
constexpr int step_option(std::uint32_t e) { return static_cast<int>(e >> 17); }

void check_demands(const CustomerSpec& spec,
                   std::span<const std::uint32_t> demands) {
  if (demands.size() != static_cast<std::size_t>(spec.horizon)) {
    throw std::invalid_argument("scenario has " +
                                std::to_string(demands.size()) +
                                " days, spec horizon is " +
                                std::to_string(spec.horizon));
  }
}

// Forward pass for one scenario. Candidates are scanned in the tie-break
// order (no delivery first, then route option, then predecessor state) with
// strict improvement, so the stored backpointer is the first candidate in
// that order attaining the minimum.
void forward_pass(const CustomerSpec& spec, const DeliveryCostModel& delivery,
                  const HoldingPenaltyModel& holding,
                  std::span<const std::uint32_t> demands, double* cur,
                  double* next, std::uint32_t* bp) {
  const int states = spec.capacity + 1;
  double* a = cur;
  double* b = next;
  std::fill(a, a + states, kInf);
  a[spec.initial_inventory] = 0.0;
  for (int t = 1; t <= spec.horizon; ++t) {
    const int d = static_cast<int>(demands[t - 1]);
    std::uint32_t* bpt = bp + static_cast<std::size_t>(t - 1) * states;
    std::fill(b, b + states, kInf);
    std::fill(bpt, bpt + states, 0);

    for (int i = 0; i < states; ++i) {
      const double vi = a[i];
      if (!(vi < kInf)) continue;
      const int j = std::max(0, i - d);
      const int s = std::max(0, d - i);
      const double cand =
          vi + (delivery.cost(t, 0, 0) + holding.cost(spec, j, s));
      if (cand < b[j]) {
        b[j] = cand;
        bpt[j] = pack_step(i, 0, 0);
      }
    }

    const int j1 = std::max(0, spec.capacity - d);
    const int s1 = std::max(0, d - spec.capacity);
    for (int r = 0; r < delivery.options; ++r) {
      for (int i = 0; i < spec.capacity; ++i) {
        const double vi = a[i];
        if (!(vi < kInf)) continue;
        const int q = spec.capacity - i;
        const double cand =
            vi + (delivery.cost(t, r, q) + holding.cost(spec, j1, s1));
        if (cand < b[j1]) {
          b[j1] = cand;
          bpt[j1] = pack_step(i, 1, r);
        }
      }
    }
    std::swap(a, b);
  }
  // the final frontier lives in a; the caller reads it from cur
  if (a != cur) std::copy(a, a + states, cur);
}

struct Terminal {
  int state = -1;
  double value = kInf;
};

Terminal pick_terminal(const double* frontier, int states) {
  Terminal t;
  for (int j = 0; j < states; ++j) {
    if (frontier[j] < t.value) {
      t.value = frontier[j];
      t.state = j;
    }
  }
  if (t.state < 0) {
    throw std::logic_error("inventory DP produced an all-infinite frontier");
  }
  return t;
}

ScheduleResult assemble_schedule(const CustomerSpec& spec,
                                 const std::uint32_t* bp, Terminal terminal) {
  const int states = spec.capacity + 1;
  const int h = spec.horizon;
  ScheduleResult out;
  out.total = ExtendedCost{terminal.value};
  out.deliver.assign(h, 0);
  out.quantity.assign(h, 0);
  out.end_inventory.assign(h, 0);
  out.route_option.assign(h, 0);
  int j = terminal.state;
  for (int t = h; t >= 1; --t) {
    const std::uint32_t e = bp[static_cast<std::size_t>(t - 1) * states + j];
    out.end_inventory[t - 1] = j;
    out.deliver[t - 1] = static_cast<std::uint8_t>(step_deliver(e));
    out.route_option[t - 1] = step_deliver(e) ? step_option(e) : 0;
    j = step_pred(e);
  }
  int inv = spec.initial_inventory;
  for (int t = 1; t <= h; ++t) {
    out.quantity[t - 1] = out.deliver[t - 1] ? spec.capacity - inv : 0;
    inv = out.end_inventory[t - 1];
  }
  return out;
}

}  // namespace

void CustomerSpec::validate() const {
  if (capacity < 0 || capacity > 65535) {
    throw std::invalid_argument("capacity U must be in [0, 65535]");
  }
  if (initial_inventory < 0 || initial_inventory > capacity) {
    throw std::invalid_argument("initial inventory must be in [0, U]");
  }
  if (horizon < 1) throw std::invalid_argument("horizon H must be >= 1");
  if (!(holding >= 0.0)) throw std::invalid_argument("holding cost must be >= 0");
  if (!(stockout_multiplier > 1.0)) {
    throw std::invalid_argument("stockout multiplier rho must be > 1");
  }
}

DeliveryCostModel DeliveryCostModel::linear(int horizon, int options,
                                            double fixed_cost,
                                            double unit_cost) {
  DeliveryCostModel m;
  m.horizon = horizon;
  m.options = options;
  m.fixed.assign(static_cast<std::size_t>(horizon) * options, fixed_cost);
  m.unit.assign(static_cast<std::size_t>(horizon) * options, unit_cost);
  return m;
}

void DeliveryCostModel::validate(const CustomerSpec& spec) const {
  if (horizon != spec.horizon) {
    throw std::invalid_argument("delivery model horizon does not match spec");
  }
  if (options < 1 || options > 256) {
    throw std::invalid_argument("route options R must be in [1, 256]");
  }
  if (tabular) {
    if (table_quantities != spec.capacity + 1 ||
        table.size() != static_cast<std::size_t>(horizon) * table_quantities) {
      throw std::invalid_argument("delivery table must be H x (U+1)");
    }
    for (int t = 1; t <= horizon; ++t) {
      if (table[(t - 1) * table_quantities] != 0.0) {
        throw std::invalid_argument("delivery table requires F_t(0) = 0");
      }
    }
    for (double v : table) {
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("delivery table entries must be finite and >= 0");
      }
    }
  } else {
    const std::size_t want = static_cast<std::size_t>(horizon) * options;
    if (fixed.size() != want || unit.size() != want) {
      throw std::invalid_argument("delivery model needs H x R fixed and unit costs");
    }
    for (std::size_t k = 0; k < want; ++k) {
      if (!std::isfinite(fixed[k]) || fixed[k] < 0.0 || !std::isfinite(unit[k]) ||
          unit[k] < 0.0) {
        throw std::invalid_argument("delivery costs must be finite and >= 0");
      }
    }
  }
}

void HoldingPenaltyModel::validate(const CustomerSpec& spec) const {
  if (!tabular) return;
  if (table.size() != static_cast<std::size_t>(spec.capacity) + 1) {
    throw std::invalid_argument("holding table must have U+1 entries");
  }
  for (double v : table) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("holding table entries must be finite and >= 0");
    }
  }
}

DayOutcome simulate_day(const CustomerSpec& spec, int inventory, int quantity,
                        int demand) {
  if (inventory < 0 || inventory > spec.capacity) {
    throw std::invalid_argument("inventory outside [0, U]");
  }
  if (quantity != 0 && quantity != spec.capacity - inventory) {
    throw std::invalid_argument(
        "order-up-to quantity must be 0 or U - I, got " +
        std::to_string(quantity));
  }
  if (demand < 0) throw std::invalid_argument("demand must be >= 0");
  DayOutcome out;
  out.end_inventory = std::max(0, inventory + quantity - demand);
  out.shortage = std::max(0, demand - inventory - quantity);
  return out;
}

MaskedTransition build_transition_matrix(const CustomerSpec& spec,
                                         const DeliveryCostModel& delivery,
                                         const HoldingPenaltyModel& holding,
                                         int day, int demand) {
  const int states = spec.capacity + 1;
  MaskedTransition a(states, states, 1);
  for (int i = 0; i < states; ++i) {
    const int q_full = spec.capacity - i;
    for (int variant = 0; variant < 2; ++variant) {
      const int q = variant == 0 ? 0 : q_full;
      if (variant == 1 && q_full == 0) continue;
      const int j = std::max(0, i + q - demand);
      const int s = std::max(0, demand - i - q);
      const int option_count = q == 0 ? 1 : delivery.options;
      for (int r = 0; r < option_count; ++r) {
        const double c = delivery.cost(day, r, q) + holding.cost(spec, j, s);
        a.at(i, j) = extended_min(a.at(i, j), ExtendedCost{c});
      }
    }
  }
  return a;
}

std::vector<ValueFrontier> sweep_customer_scenario(
    const CustomerSpec& spec, const DeliveryCostModel& delivery,
    const HoldingPenaltyModel& holding,
    std::span<const std::uint32_t> demands) {
  spec.validate();
  delivery.validate(spec);
  holding.validate(spec);
  check_demands(spec, demands);
  std::vector<MaskedTransition> stages;
  stages.reserve(spec.horizon);
  for (int t = 1; t <= spec.horizon; ++t) {
    stages.push_back(build_transition_matrix(spec, delivery, holding, t,
                                             static_cast<int>(demands[t - 1])));
  }
  const ValueFrontier start = ValueFrontier::initial(
      1, spec.capacity + 1, static_cast<std::size_t>(spec.initial_inventory));
  return forward_sweep(stages, start);
}

ScheduleResult solve_customer_scenario(const CustomerSpec& spec,
                                       const DeliveryCostModel& delivery,
                                       const HoldingPenaltyModel& holding,
                                       std::span<const std::uint32_t> demands) {
  const std::vector<ValueFrontier> frontiers =
      sweep_customer_scenario(spec, delivery, holding, demands);
  const int states = spec.capacity + 1;
  const int h = spec.horizon;

  std::vector<double> terminal_values(states);
  for (int j = 0; j < states; ++j) terminal_values[j] = frontiers[h].values[j].value;
  const Terminal terminal = pick_terminal(terminal_values.data(), states);

  // Recover the argmin path by rescanning candidates day by day in tie-break
  // order; the scan recomputes the exact sums the sweep minimized, so the
  // first match is the canonical choice.
  std::vector<std::uint32_t> bp(static_cast<std::size_t>(h) * states, 0);
  int j = terminal.state;
  for (int t = h; t >= 1; --t) {
    const double target = frontiers[t].values[j].value;
    const int d = static_cast<int>(demands[t - 1]);
    const auto& prev = frontiers[t - 1].values;
    bool found = false;
    for (int i = 0; i < states && !found; ++i) {
      if (!prev[i].is_finite()) continue;
      if (std::max(0, i - d) != j) continue;
      const int s = std::max(0, d - i);
      if (prev[i].value + (delivery.cost(t, 0, 0) + holding.cost(spec, j, s)) ==
          target) {
        bp[static_cast<std::size_t>(t - 1) * states + j] = pack_step(i, 0, 0);
        found = true;
      }
    }
    if (!found && std::max(0, spec.capacity - d) == j) {
      const int s = std::max(0, d - spec.capacity);
      for (int r = 0; r < delivery.options && !found; ++r) {
        for (int i = 0; i < spec.capacity && !found; ++i) {
          if (!prev[i].is_finite()) continue;
          const int q = spec.capacity - i;
          if (prev[i].value +
                  (delivery.cost(t, r, q) + holding.cost(spec, j, s)) ==
              target) {
            bp[static_cast<std::size_t>(t - 1) * states + j] =
                pack_step(i, 1, r);
            found = true;
          }
        }
      }
    }
    if (!found) {
      throw std::logic_error("schedule recovery found no matching transition");
    }
    j = step_pred(bp[static_cast<std::size_t>(t - 1) * states + j]);
  }
  return assemble_schedule(spec, bp.data(), terminal);
}

ExtendedCost simulate_schedule(const CustomerSpec& spec,
                               const DeliveryCostModel& delivery,
                               const HoldingPenaltyModel& holding,
                               std::span<const std::uint32_t> demands,
                               std::span<const std::uint8_t> deliver,
                               std::span<const std::int32_t> route_option) {
  check_demands(spec, demands);
  double total = 0.0;
  int inv = spec.initial_inventory;
  for (int t = 1; t <= spec.horizon; ++t) {
    const int d = static_cast<int>(demands[t - 1]);
    const int q = deliver[t - 1] ? spec.capacity - inv : 0;
    const int r = deliver[t - 1] ? route_option[t - 1] : 0;
    const int j = std::max(0, inv + q - d);
    const int s = std::max(0, d - inv - q);
    // grouped exactly like the DP stage cost so totals agree bitwise
    total += delivery.cost(t, r, q) + holding.cost(spec, j, s);
    inv = j;
  }
  return ExtendedCost{total};
}

ExtendedCost brute_force_schedule(const CustomerSpec& spec,
                                  const DeliveryCostModel& delivery,
                                  const HoldingPenaltyModel& holding,
                                  std::span<const std::uint32_t> demands) {
  spec.validate();
  delivery.validate(spec);
  holding.validate(spec);
  check_demands(spec, demands);
  if (spec.horizon > 14) {
    throw std::invalid_argument("brute-force schedule is limited to H <= 14");
  }
  double best = kInf;
  const std::uint32_t patterns = 1U << spec.horizon;
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    double total = 0.0;
    int inv = spec.initial_inventory;
    for (int t = 1; t <= spec.horizon; ++t) {
      const int d = static_cast<int>(demands[t - 1]);
      const bool z = (mask >> (t - 1)) & 1;
      const int q = z ? spec.capacity - inv : 0;
      double f = delivery.cost(t, 0, q);
      // route options enter additively per day, so the cheapest option per
      // delivery day is independently optimal
      for (int r = 1; r < delivery.options && q > 0; ++r) {
        f = std::min(f, delivery.cost(t, r, q));
      }
      const int j = std::max(0, inv + q - d);
      const int s = std::max(0, d - inv - q);
      total += f + holding.cost(spec, j, s);
      inv = j;
    }
    best = std::min(best, total);
  }
  return ExtendedCost{best};
}

std::uint64_t oudp_per_scenario_bytes(const CustomerSpec& spec) {
  const std::uint64_t states = static_cast<std::uint64_t>(spec.capacity) + 1;
  const std::uint64_t h = static_cast<std::uint64_t>(spec.horizon);
  // decision tensor slice + two value rows + scenario column + stored schedule
  return h * states * sizeof(std::uint32_t) + 2 * states * sizeof(double) +
         h * sizeof(std::uint32_t) + h * 13 + 160;
}

FootprintModel oudp_footprint_model(const CustomerSpec& spec) {
  FootprintModel model;
  model.fixed_bytes = std::uint64_t{1} << 20;
  model.per_scenario_bytes = oudp_per_scenario_bytes(spec);
  return model;
}

BatchResultSet<ScheduleResult> batched_expected_cost(
    const CustomerSpec& spec, const DeliveryCostModel& delivery,
    const HoldingPenaltyModel& holding, const ScenarioBatch& scenarios,
    const BackendConfig& config) {
  spec.validate();
  delivery.validate(spec);
  holding.validate(spec);
  if (scenarios.rows != static_cast<std::size_t>(spec.horizon)) {
    throw std::invalid_argument("scenario batch rows must equal the horizon");
  }
  const std::size_t states = static_cast<std::size_t>(spec.capacity) + 1;
  const std::size_t h = static_cast<std::size_t>(spec.horizon);

  // Per-batch DP tensors: two value rows and an H x (U+1) decision slice per
  // scenario in the batch. The byte budget in the config caps how many
  // scenarios are staged at once.
  std::vector<double> values;
  std::vector<std::uint32_t> decisions;
  std::size_t batch_lo = 0;
  BatchHooks hooks;
  hooks.before = [&](std::size_t, std::size_t lo, std::size_t hi) {
    batch_lo = lo;
    values.resize((hi - lo) * 2 * states);
    decisions.resize((hi - lo) * h * states);
  };

  auto factory = [&](unsigned) {
    return [&](std::size_t w) -> ScheduleResult {
      const std::size_t local = w - batch_lo;
      double* cur = values.data() + local * 2 * states;
      double* next = cur + states;
      std::uint32_t* bp = decisions.data() + local * h * states;
      const auto demands = scenarios.column(w);
      forward_pass(spec, delivery, holding, demands, cur, next, bp);
      const Terminal terminal = pick_terminal(cur, static_cast<int>(states));
      return assemble_schedule(spec, bp, terminal);
    };
  };
  return run_batched<ScheduleResult>(scenarios.count, factory, config,
                                     oudp_per_scenario_bytes(spec), &hooks);
}

}  // namespace scendp
