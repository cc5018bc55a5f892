#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scendp/engine.hpp"
#include "scendp/minplus.hpp"
#include "scendp/scenario.hpp"

namespace scendp {

/// Capacitated routing instance over nodes {0 .. n+1}: node 0 is the departure
/// depot, node n+1 the destination depot, nodes 1..n the customers. Demands
/// are integers so feasibility checks on prefix sums are exact.
struct RoutingInstance {
  int n = 0;
  std::int64_t capacity = 0;  // Q
  bool hard = true;           // hard capacity mask vs per-unit excess penalty
  double penalty_beta = 0.0;  // cost per unit of capacity excess (penalized mode)
  std::vector<double> costs;  // (n+2) x (n+2), row-major

  double cost(int a, int b) const { return costs[a * (n + 2) + b]; }
  int depot_out() const { return 0; }
  int depot_in() const { return n + 1; }

  void validate() const;  // throws std::invalid_argument
};

/// First-stage solution encoding: a permutation of customers 1..n.
struct GiantTour {
  std::vector<int> order;

  void validate(int n) const;
};

/// Prefix arrays for one scenario of the split recursion:
///   dist[i]  = travel cost along the tour from position 1 to position i
///   load[i]  = cumulative demand of positions 1..i (load[0] = 0)
/// so a subroute (p, i] costs c(0, s_{p+1}) + dist[i] - dist[p+1] + c(s_i, n+1)
/// and carries load[i] - load[p] demand units.
struct SplitPrefixes {
  std::vector<double> dist;        // size n+1, dist[0] unused, dist[1] = 0
  std::vector<std::int64_t> load;  // size n+1, load[0] = 0
};

SplitPrefixes build_split_inputs(const RoutingInstance& instance,
                                 const GiantTour& tour,
                                 std::span<const std::uint32_t> demand);

// Subroute cost (p, i] evaluated from the prefixes; shared by both DP
// implementations and by tests.
double subroute_cost(const RoutingInstance& instance, const GiantTour& tour,
                     const SplitPrefixes& pre, int p, int i);

/// Split of one giant tour under one demand scenario: the running-cost vector
/// V (V[0] = 0), the predecessor of each position for route recovery, and the
/// total V[n].
struct SplitSolution {
  ValueFrontier values;            // length n+1
  std::vector<std::int32_t> cuts;  // length n+1; cuts[i] = argmin predecessor, -1 if unreachable
  ExtendedCost total;
  std::int32_t route_count = 0;
  bool feasible = true;
};

// Position ranges (p, i] of the recovered routes, first route first. Empty for
// infeasible solutions.
std::vector<std::pair<int, int>> recover_routes(const SplitSolution& solution);

// Reference O(n^2) split: V(i) = min_{p<i} V(p) + A(p, i), with A masked at
// +inf when the subroute load exceeds Q (hard mode) or charged beta per excess
// unit (penalized mode). Argmin ties resolve to the smallest predecessor.
SplitSolution split_scenario_quadratic(const RoutingInstance& instance,
                                       const GiantTour& tour,
                                       std::span<const std::uint32_t> demand);

// O(n) split for hard capacities using a double-ended candidate queue with
// dominance key f(p) = V(p) + c(0, s_{p+1}) - dist[p+1] and a sliding
// load-feasibility window. Produces V and cuts bitwise identical to the
// quadratic form; rejects penalized instances.
SplitSolution split_scenario_linear(const RoutingInstance& instance,
                                    const GiantTour& tour,
                                    std::span<const std::uint32_t> demand);

// Exhaustive minimum over all 2^(n-1) contiguous partitions of the tour, with
// the same mask/penalty rule as the DP. Verification oracle; n <= 20.
ExtendedCost brute_force_split(const RoutingInstance& instance,
                               const GiantTour& tour,
                               std::span<const std::uint32_t> demand);

// Documented bytes pinned per scenario by a full batched split evaluation
// (solution payload plus its scenario column); drives batch sizing and the
// memory model.
std::uint64_t split_per_scenario_bytes(int n);
FootprintModel split_footprint_model(const RoutingInstance& instance);

// One SplitSolution per scenario, in input order, evaluated through the batch
// engine. The aggregate is the fixed-order mean of finite totals plus the
// infeasible count (hard mode).
BatchResultSet<SplitSolution> batched_expected_split(
    const RoutingInstance& instance, const GiantTour& tour,
    const ScenarioBatch& scenarios, const BackendConfig& config);

// Cost-only variant used by search loops and benchmarks: per-scenario totals
// without solution payloads.
BatchResultSet<ExtendedCost> batched_split_costs(const RoutingInstance& instance,
                                                 const GiantTour& tour,
                                                 const ScenarioBatch& scenarios,
                                                 const BackendConfig& config);

// Cost-only evaluation with scenario columns generated on the fly from the
// distribution (no materialized batch); scenario w always sees the same
// demands as column w of generate_scenarios.
BatchResultSet<ExtendedCost> batched_split_costs_generated(
    const RoutingInstance& instance, const GiantTour& tour,
    const DistributionSpec& dist, std::size_t count,
    const BackendConfig& config);

// Synthetic instance with symmetric integer-valued costs in [1, 20]; used by
// randomized tests and benchmark subcommands.
RoutingInstance make_random_instance(int n, std::uint64_t seed,
                                     std::int64_t capacity, bool hard,
                                     double penalty_beta);

}  // namespace scendp
