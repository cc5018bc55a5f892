#include "scendp/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "scendp/oudp.hpp"
#include "scendp/scenario.hpp"
#include "scendp/split.hpp"

namespace scendp {

namespace {

void record_failure(OracleOutcome& out, std::size_t trial,
                    const std::string& what) {
  ++out.mismatches;
  if (out.first_failure.empty()) {
    out.first_failure = "trial " + std::to_string(trial) + ": " + what;
  }
}

GiantTour random_tour(int n, SplitMix64& rng) {
  GiantTour tour;
  tour.order.resize(n);
  std::iota(tour.order.begin(), tour.order.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(i + 1));
    std::swap(tour.order[i], tour.order[j]);
  }
  return tour;
}

std::vector<std::uint32_t> random_demands(int n, std::uint32_t bound,
                                          SplitMix64& rng) {
  std::vector<std::uint32_t> d(n);
  for (auto& v : d) v = static_cast<std::uint32_t>(rng.next_below(bound));
  return d;
}

RoutingInstance random_float_instance(int n, std::int64_t capacity,
                                      SplitMix64& rng) {
  RoutingInstance inst;
  inst.n = n;
  inst.capacity = capacity;
  inst.hard = true;
  const int side = n + 2;
  inst.costs.assign(static_cast<std::size_t>(side) * side, 0.0);
  for (int a = 0; a < side; ++a) {
    for (int b = a + 1; b < side; ++b) {
      const double c = rng.next_unit() * 20.0;
      inst.costs[a * side + b] = c;
      inst.costs[b * side + a] = c;
    }
  }
  return inst;
}

}  // namespace

OracleOutcome run_split_oracle_trials(std::size_t trials, std::uint64_t seed) {
  OracleOutcome out;
  out.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    SplitMix64 rng(derive_stream(seed, 0x53504c54ULL, k));
    const int n = 2 + static_cast<int>(rng.next_below(9));  // 2..10
    const std::int64_t q = 5 + static_cast<std::int64_t>(rng.next_below(16));
    const bool hard = (k % 2) == 0;
    const double beta = 1.0 + static_cast<double>(rng.next_below(5));
    RoutingInstance inst =
        make_random_instance(n, rng.next(), q, hard, hard ? 0.0 : beta);
    const GiantTour tour = random_tour(n, rng);
    const auto demands =
        random_demands(n, static_cast<std::uint32_t>(q + 3), rng);

    const SplitSolution dp = split_scenario_quadratic(inst, tour, demands);
    const ExtendedCost reference = brute_force_split(inst, tour, demands);
    if (dp.total != reference) {
      record_failure(out, k, "split DP total does not match enumeration");
      continue;
    }
    if (hard) {
      const SplitSolution lin = split_scenario_linear(inst, tour, demands);
      if (lin.values.values != dp.values.values || lin.cuts != dp.cuts) {
        record_failure(out, k, "linear split disagrees with quadratic split");
        continue;
      }
      // every recovered route must fit the vehicle
      if (dp.feasible) {
        const SplitPrefixes pre = build_split_inputs(inst, tour, demands);
        for (const auto& [p, i] : recover_routes(dp)) {
          if (pre.load[i] - pre.load[p] > inst.capacity) {
            record_failure(out, k, "recovered route exceeds capacity");
            break;
          }
        }
      }
    }
  }
  return out;
}

OracleOutcome run_split_agreement_trials(std::size_t trials, std::uint64_t seed,
                                         int max_n) {
  OracleOutcome out;
  out.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    SplitMix64 rng(derive_stream(seed, 0x4147524dULL, k));
    const int n = 1 + static_cast<int>(rng.next_below(max_n));
    const std::int64_t q = 10 + static_cast<std::int64_t>(rng.next_below(30));
    const RoutingInstance inst = random_float_instance(n, q, rng);
    const GiantTour tour = random_tour(n, rng);
    const auto demands =
        random_demands(n, static_cast<std::uint32_t>(q / 2 + 2), rng);

    const SplitSolution quad = split_scenario_quadratic(inst, tour, demands);
    const SplitSolution lin = split_scenario_linear(inst, tour, demands);
    if (quad.values.values != lin.values.values) {
      record_failure(out, k, "V vectors differ between linear and quadratic");
    } else if (quad.cuts != lin.cuts) {
      record_failure(out, k, "cut choices differ between linear and quadratic");
    }
  }
  return out;
}

OracleOutcome run_dsirp_oracle_trials(std::size_t trials, std::uint64_t seed) {
  OracleOutcome out;
  out.trials = trials;
  for (std::size_t k = 0; k < trials; ++k) {
    SplitMix64 rng(derive_stream(seed, 0x4f554450ULL, k));
    CustomerSpec spec;
    spec.capacity = static_cast<int>(rng.next_below(9));  // 0..8
    spec.initial_inventory = static_cast<int>(rng.next_below(spec.capacity + 1));
    spec.horizon = 1 + static_cast<int>(rng.next_below(10));
    spec.holding = 1.0 + static_cast<double>(rng.next_below(5));
    spec.stockout_multiplier = 2.0 + static_cast<double>(rng.next_below(2));
    const int options = 1 + static_cast<int>(rng.next_below(3));

    DeliveryCostModel delivery =
        DeliveryCostModel::linear(spec.horizon, options, 0.0, 0.0);
    for (auto& f : delivery.fixed) f = static_cast<double>(rng.next_below(11));
    for (auto& u : delivery.unit) u = static_cast<double>(rng.next_below(6));

    HoldingPenaltyModel holding;
    if (rng.next_below(2) == 0) {
      holding.tabular = true;
      holding.table.resize(spec.capacity + 1);
      for (auto& v : holding.table) {
        v = static_cast<double>(rng.next_below(11));
      }
    }

    const auto demands = random_demands(
        spec.horizon, static_cast<std::uint32_t>(2 * spec.capacity + 3), rng);

    const ScheduleResult dp =
        solve_customer_scenario(spec, delivery, holding, demands);
    const ExtendedCost reference =
        brute_force_schedule(spec, delivery, holding, demands);
    if (dp.total != reference) {
      record_failure(out, k, "schedule DP total does not match enumeration");
      continue;
    }
    const ExtendedCost replay = simulate_schedule(
        spec, delivery, holding, demands, dp.deliver, dp.route_option);
    if (replay != dp.total) {
      record_failure(out, k, "schedule does not re-simulate to its total");
    }
  }
  return out;
}

}  // namespace scendp
