#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "scendp/engine.hpp"
#include "scendp/io.hpp"
#include "scendp/scenario.hpp"
#include "scendp/split.hpp"

namespace scendp {

/// Search effort cap: whichever of the two limits binds first. Evaluation
/// budgets are exactly reproducible; wall-clock budgets are for fixed-time
/// comparisons.
struct SearchBudget {
  std::uint64_t max_evaluations = std::numeric_limits<std::uint64_t>::max();
  double max_wall_seconds = std::numeric_limits<double>::infinity();
};

struct TrajectoryPoint {
  double elapsed_ms = 0.0;
  std::uint64_t evaluations = 0;
  double best_value = 0.0;
};

struct SearchResult {
  GiantTour tour;
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
  std::uint64_t best_found_at = 0;
  std::vector<TrajectoryPoint> trajectory;  // one point per scored candidate
};

// Multi-start nearest-neighbor construction followed by first-improvement
// 2-opt and Or-opt moves, every candidate scored by its expected penalized
// split cost over the training batch. Deterministic for a fixed instance,
// batch and evaluation budget; requires a penalized-mode instance. A zero
// budget still scores one construction and returns it.
SearchResult improve_first_stage(const RoutingInstance& instance,
                                 const ScenarioBatch& train,
                                 const BackendConfig& backend,
                                 const SearchBudget& budget);

// Expected cost of a fixed tour on an evaluation batch (fixed-order mean).
double out_of_sample_eval(const RoutingInstance& instance, const GiantTour& tour,
                          const ScenarioBatch& eval, const BackendConfig& backend);

// Ordinary least-squares slope of y against x; NaN when fewer than two points.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct ExperimentReport {
  std::vector<ReportRow> rows;
};

struct ExperimentConfig {
  std::string instance_label = "instance";
  std::uint64_t seed = 0;
  BackendConfig backend;
  std::uint64_t search_evaluations = 2000;  // candidate budget per replication
};

// Per (m, replication): a fresh training batch, a first-stage search, and an
// out-of-sample evaluation of its solution on a shared evaluation set. Rows
// per replication: in_sample, out_of_sample, candidates, best_found_at; per
// m: means and standard errors of the first two. reference_size > 0 appends
// one reference_value row, the large-sample evaluation of the best solution
// encountered.
ExperimentReport run_bias_experiment(const RoutingInstance& instance,
                                     const DistributionSpec& demand,
                                     const std::vector<std::size_t>& m_list,
                                     int reps, std::size_t eval_size,
                                     std::size_t reference_size,
                                     const ExperimentConfig& config);

// Spread of the in-sample optimum across replications per m, plus the
// log-log regression slope of that spread against m. m_list must span at
// least two decades.
ExperimentReport run_convergence_experiment(const RoutingInstance& instance,
                                            const DistributionSpec& demand,
                                            const std::vector<std::size_t>& m_list,
                                            int reps,
                                            const ExperimentConfig& config);

// Out-of-sample cost of solutions trained with increasing scenario counts,
// evaluated on one fixed large set.
ExperimentReport run_quality_experiment(const RoutingInstance& instance,
                                        const DistributionSpec& demand,
                                        const std::vector<std::size_t>& m_list,
                                        int reps, std::size_t eval_size,
                                        const ExperimentConfig& config);

struct ScalingOptions {
  std::vector<std::size_t> sizes;
  std::vector<BackendConfig> modes;
  // repetitions per size are chosen so that roughly this many scenario
  // evaluations are timed per point
  std::size_t target_evaluations = 200000;
};

// Wall time of the batched split evaluator against the scenario count, per
// execution mode, with the fitted log-log slope. Scenario columns are
// generated on the fly so the largest sizes do not need materialized batches.
ExperimentReport run_scaling_benchmark(const RoutingInstance& instance,
                                       const DistributionSpec& demand,
                                       const ScalingOptions& options,
                                       const ExperimentConfig& config);

struct TimeBudgetOptions {
  std::vector<double> budgets_seconds;  // ascending
  std::vector<BackendConfig> modes;
  std::size_t train_size = 10000;
  std::vector<std::size_t> scaling_sizes;  // optional scaling sub-table
};

// Best penalized cost and candidate count reached within each wall-clock
// budget, per execution mode. One search per mode runs to the largest budget;
// smaller budgets are read off its trajectory, so best-so-far is nonincreasing
// in the budget by construction.
ExperimentReport run_time_budget_experiment(const RoutingInstance& instance,
                                            const DistributionSpec& demand,
                                            const TimeBudgetOptions& options,
                                            const ExperimentConfig& config);

// Human-readable label for an execution mode ("single" or "multiT").
std::string mode_label(const BackendConfig& backend);

}  // namespace scendp
