#include "scendp/saa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scendp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

GiantTour nearest_neighbor_tour(const RoutingInstance& inst, int start) {
  const int n = inst.n;
  GiantTour tour;
  tour.order.reserve(n);
  std::vector<char> used(n + 1, 0);
  int current = start;
  tour.order.push_back(current);
  used[current] = 1;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int c = 1; c <= n; ++c) {
      if (used[c]) continue;
      const double d = inst.cost(current, c);
      if (d < best_cost) {
        best_cost = d;
        best = c;
      }
    }
    tour.order.push_back(best);
    used[best] = 1;
    current = best;
  }
  return tour;
}

struct Stats {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(count)
  double stddev = 0.0;
};

Stats summarize(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  s.se = s.stddev / std::sqrt(static_cast<double>(xs.size()));
  return s;
}

std::uint64_t rep_stream_index(std::size_t m_index, int rep) {
  return static_cast<std::uint64_t>(m_index) * 1000003ULL +
         static_cast<std::uint64_t>(rep);
}

DistributionSpec with_seed(DistributionSpec d, std::uint64_t seed) {
  d.seed = seed;
  return d;
}

}  // namespace

std::string mode_label(const BackendConfig& backend) {
  if (backend.mode == BackendConfig::Mode::kSingleThread) return "single";
  return "multi" + std::to_string(backend.threads);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double out_of_sample_eval(const RoutingInstance& instance, const GiantTour& tour,
                          const ScenarioBatch& eval,
                          const BackendConfig& backend) {
  const auto res = batched_split_costs(instance, tour, eval, backend);
  if (!res.mean_cost) {
    throw std::runtime_error("evaluation produced no finite scenario cost");
  }
  return *res.mean_cost;
}

SearchResult improve_first_stage(const RoutingInstance& instance,
                                 const ScenarioBatch& train,
                                 const BackendConfig& backend,
                                 const SearchBudget& budget) {
  instance.validate();
  if (instance.hard) {
    throw std::invalid_argument(
        "first-stage search scores candidates by expected penalized cost; "
        "run the instance in penalized mode");
  }
  if (train.count == 0) {
    throw std::invalid_argument("training batch is empty");
  }
  const int n = instance.n;
  const auto t0 = Clock::now();

  SearchResult out;
  auto over_budget = [&] {
    return out.evaluations >= budget.max_evaluations ||
           ms_since(t0) >= budget.max_wall_seconds * 1000.0;
  };
  auto score = [&](const GiantTour& tour) {
    const auto res = batched_split_costs(instance, tour, train, backend);
    ++out.evaluations;
    return *res.mean_cost;
  };
  auto attempt = [&](GiantTour&& cand) {
    const double v = score(cand);
    const bool better = v < out.value;
    if (better) {
      out.tour = std::move(cand);
      out.value = v;
      out.best_found_at = out.evaluations;
    }
    out.trajectory.push_back({ms_since(t0), out.evaluations, out.value});
    return better;
  };

  // constructions; the first one is scored even under a zero budget
  const int starts = std::min(n, 8);
  for (int k = 0; k < starts; ++k) {
    if (k > 0 && over_budget()) break;
    const int start = 1 + (k * n) / starts;
    attempt(nearest_neighbor_tour(instance, start));
  }

  // first-improvement local search, rescanning from the top after each
  // accepted move
  bool any = true;
  while (any && !over_budget()) {
    any = false;
    for (int i = 0; i + 1 < n && !any; ++i) {
      for (int j = i + 1; j < n && !any; ++j) {
        if (over_budget()) return out;
        GiantTour cand = out.tour;
        std::reverse(cand.order.begin() + i, cand.order.begin() + j + 1);
        any = attempt(std::move(cand));
      }
    }
    if (any) continue;
    for (int len = 1; len <= 3 && !any; ++len) {
      for (int i = 0; i + len <= n && !any; ++i) {
        for (int k = 0; k <= n - len && !any; ++k) {
          if (k == i) continue;
          if (over_budget()) return out;
          GiantTour cand;
          cand.order.reserve(n);
          const auto& ord = out.tour.order;
          std::vector<int> rest;
          rest.reserve(n - len);
          for (int p = 0; p < n; ++p) {
            if (p < i || p >= i + len) rest.push_back(ord[p]);
          }
          cand.order.assign(rest.begin(), rest.begin() + k);
          cand.order.insert(cand.order.end(), ord.begin() + i,
                            ord.begin() + i + len);
          cand.order.insert(cand.order.end(), rest.begin() + k, rest.end());
          any = attempt(std::move(cand));
        }
      }
    }
  }
  return out;
}

ExperimentReport run_bias_experiment(const RoutingInstance& instance,
                                     const DistributionSpec& demand,
                                     const std::vector<std::size_t>& m_list,
                                     int reps, std::size_t eval_size,
                                     std::size_t reference_size,
                                     const ExperimentConfig& config) {
  if (reps < 2) throw std::invalid_argument("bias experiment needs reps >= 2");
  const std::size_t n = static_cast<std::size_t>(instance.n);
  const ScenarioBatch eval_batch = generate_scenarios(
      with_seed(demand, derive_stream(config.seed, kStreamEvaluation, 0)), n, 1,
      eval_size);

  ExperimentReport report;
  const std::string exp = "saa_bias";
  double best_oos = std::numeric_limits<double>::infinity();
  GiantTour best_tour;

  for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
    const std::size_t m = m_list[mi];
    std::vector<double> zs, oos_values;
    for (int rep = 0; rep < reps; ++rep) {
      const std::uint64_t train_seed =
          derive_stream(config.seed, kStreamExperiment, rep_stream_index(mi, rep));
      const ScenarioBatch train =
          generate_scenarios(with_seed(demand, train_seed), n, 1, m);
      const SearchResult sr = improve_first_stage(
          instance, train, config.backend, {config.search_evaluations,
                                            std::numeric_limits<double>::infinity()});
      const double oos =
          out_of_sample_eval(instance, sr.tour, eval_batch, config.backend);
      zs.push_back(sr.value);
      oos_values.push_back(oos);
      if (oos < best_oos) {
        best_oos = oos;
        best_tour = sr.tour;
      }
      report.rows.push_back({exp, config.instance_label, m, rep, "in_sample",
                             sr.value, 0.0, config.seed});
      report.rows.push_back({exp, config.instance_label, m, rep, "out_of_sample",
                             oos, 0.0, config.seed});
      report.rows.push_back({exp, config.instance_label, m, rep, "candidates",
                             static_cast<double>(sr.evaluations), 0.0,
                             config.seed});
      report.rows.push_back({exp, config.instance_label, m, rep, "best_found_at",
                             static_cast<double>(sr.best_found_at), 0.0,
                             config.seed});
    }
    const Stats z = summarize(zs);
    const Stats o = summarize(oos_values);
    report.rows.push_back({exp, config.instance_label, m, -1, "in_sample_mean",
                           z.mean, 0.0, config.seed});
    report.rows.push_back({exp, config.instance_label, m, -1, "in_sample_se",
                           z.se, 0.0, config.seed});
    report.rows.push_back({exp, config.instance_label, m, -1,
                           "out_of_sample_mean", o.mean, 0.0, config.seed});
    report.rows.push_back({exp, config.instance_label, m, -1,
                           "out_of_sample_se", o.se, 0.0, config.seed});
  }

  if (reference_size > 0 && !best_tour.order.empty()) {
    const ScenarioBatch ref = generate_scenarios(
        with_seed(demand, derive_stream(config.seed, kStreamEvaluation, 1)), n,
        1, reference_size);
    report.rows.push_back(
        {exp, config.instance_label, 0, -1, "reference_value",
         out_of_sample_eval(instance, best_tour, ref, config.backend), 0.0,
         config.seed});
  }
  return report;
}

ExperimentReport run_convergence_experiment(const RoutingInstance& instance,
                                            const DistributionSpec& demand,
                                            const std::vector<std::size_t>& m_list,
                                            int reps,
                                            const ExperimentConfig& config) {
  if (m_list.size() < 2 ||
      m_list.back() < 100 * m_list.front()) {
    throw std::invalid_argument(
        "convergence experiment needs m values spanning at least two decades");
  }
  const std::size_t n = static_cast<std::size_t>(instance.n);
  ExperimentReport report;
  const std::string exp = "saa_convergence";
  std::vector<double> log_m, log_std;

  for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
    const std::size_t m = m_list[mi];
    std::vector<double> zs;
    for (int rep = 0; rep < reps; ++rep) {
      const std::uint64_t train_seed =
          derive_stream(config.seed, kStreamExperiment, rep_stream_index(mi, rep));
      const ScenarioBatch train =
          generate_scenarios(with_seed(demand, train_seed), n, 1, m);
      const SearchResult sr = improve_first_stage(
          instance, train, config.backend, {config.search_evaluations,
                                            std::numeric_limits<double>::infinity()});
      zs.push_back(sr.value);
      report.rows.push_back({exp, config.instance_label, m, rep, "in_sample",
                             sr.value, 0.0, config.seed});
      report.rows.push_back({exp, config.instance_label, m, rep, "candidates",
                             static_cast<double>(sr.evaluations), 0.0,
                             config.seed});
    }
    const Stats z = summarize(zs);
    report.rows.push_back({exp, config.instance_label, m, -1, "in_sample_mean",
                           z.mean, 0.0, config.seed});
    report.rows.push_back({exp, config.instance_label, m, -1, "in_sample_std",
                           z.stddev, 0.0, config.seed});
    if (z.stddev > 0.0) {
      log_m.push_back(std::log(static_cast<double>(m)));
      log_std.push_back(std::log(z.stddev));
    }
  }
  const double slope =
      log_m.size() >= 2 ? least_squares_slope(log_m, log_std) : 0.0;
  report.rows.push_back({exp, config.instance_label, 0, -1, "log_std_slope",
                         slope, 0.0, config.seed});
  return report;
}

ExperimentReport run_quality_experiment(const RoutingInstance& instance,
                                        const DistributionSpec& demand,
                                        const std::vector<std::size_t>& m_list,
                                        int reps, std::size_t eval_size,
                                        const ExperimentConfig& config) {
  const std::size_t n = static_cast<std::size_t>(instance.n);
  const ScenarioBatch eval_batch = generate_scenarios(
      with_seed(demand, derive_stream(config.seed, kStreamEvaluation, 0)), n, 1,
      eval_size);
  ExperimentReport report;
  const std::string exp = "quality_vs_scenarios";
  for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
    const std::size_t m = m_list[mi];
    std::vector<double> oos_values;
    for (int rep = 0; rep < reps; ++rep) {
      const std::uint64_t train_seed =
          derive_stream(config.seed, kStreamExperiment, rep_stream_index(mi, rep));
      const ScenarioBatch train =
          generate_scenarios(with_seed(demand, train_seed), n, 1, m);
      const SearchResult sr = improve_first_stage(
          instance, train, config.backend, {config.search_evaluations,
                                            std::numeric_limits<double>::infinity()});
      const double oos =
          out_of_sample_eval(instance, sr.tour, eval_batch, config.backend);
      oos_values.push_back(oos);
      report.rows.push_back({exp, config.instance_label, m, rep, "out_of_sample",
                             oos, 0.0, config.seed});
    }
    const Stats o = summarize(oos_values);
    report.rows.push_back({exp, config.instance_label, m, -1,
                           "out_of_sample_mean", o.mean, 0.0, config.seed});
    report.rows.push_back({exp, config.instance_label, m, -1,
                           "out_of_sample_se", o.se, 0.0, config.seed});
  }
  return report;
}

ExperimentReport run_scaling_benchmark(const RoutingInstance& instance,
                                       const DistributionSpec& demand,
                                       const ScalingOptions& options,
                                       const ExperimentConfig& config) {
  ExperimentReport report;
  const std::string exp = "scaling";
  GiantTour tour;
  tour.order.resize(instance.n);
  std::iota(tour.order.begin(), tour.order.end(), 1);
  const DistributionSpec dist =
      with_seed(demand, derive_stream(config.seed, kStreamScenario, 1));

  for (const BackendConfig& mode : options.modes) {
    const std::string label = mode_label(mode);
    std::vector<double> log_size, log_ms;
    // warmup run so thread creation and page faults stay out of the smallest
    // measurement
    batched_split_costs_generated(instance, tour, dist,
                                  std::min<std::size_t>(options.sizes.front(), 1000),
                                  mode);
    for (std::size_t size : options.sizes) {
      const std::size_t reps =
          std::max<std::size_t>(1, options.target_evaluations / size);
      const auto t0 = Clock::now();
      for (std::size_t rep = 0; rep < reps; ++rep) {
        batched_split_costs_generated(instance, tour, dist, size, mode);
      }
      const double wall_ms = ms_since(t0) / static_cast<double>(reps);
      report.rows.push_back({exp, config.instance_label, size, -1,
                             label + "_wall_ms", wall_ms, wall_ms, config.seed});
      log_size.push_back(std::log(static_cast<double>(size)));
      log_ms.push_back(std::log(wall_ms));
    }
    report.rows.push_back({exp, config.instance_label, 0, -1,
                           label + "_loglog_slope",
                           least_squares_slope(log_size, log_ms), 0.0,
                           config.seed});
  }
  return report;
}

ExperimentReport run_time_budget_experiment(const RoutingInstance& instance,
                                            const DistributionSpec& demand,
                                            const TimeBudgetOptions& options,
                                            const ExperimentConfig& config) {
  if (options.budgets_seconds.empty() ||
      !std::is_sorted(options.budgets_seconds.begin(),
                      options.budgets_seconds.end())) {
    throw std::invalid_argument("budgets must be ascending and nonempty");
  }
  const std::size_t n = static_cast<std::size_t>(instance.n);
  const ScenarioBatch train = generate_scenarios(
      with_seed(demand, derive_stream(config.seed, kStreamScenario, 0)), n, 1,
      options.train_size);
  ExperimentReport report;
  const std::string exp = "time_budget";

  for (const BackendConfig& mode : options.modes) {
    const std::string label = mode_label(mode);
    SearchBudget budget;
    budget.max_wall_seconds = options.budgets_seconds.back();
    const SearchResult sr = improve_first_stage(instance, train, mode, budget);
    for (std::size_t bi = 0; bi < options.budgets_seconds.size(); ++bi) {
      const double limit_ms = options.budgets_seconds[bi] * 1000.0;
      // last trajectory point inside the budget; the first point stands in
      // when even the first evaluation exceeded it
      TrajectoryPoint at = sr.trajectory.front();
      for (const TrajectoryPoint& p : sr.trajectory) {
        if (p.elapsed_ms > limit_ms) break;
        at = p;
      }
      report.rows.push_back({exp, config.instance_label, options.train_size,
                             static_cast<std::int64_t>(bi),
                             label + "_budget_seconds",
                             options.budgets_seconds[bi], 0.0, config.seed});
      report.rows.push_back({exp, config.instance_label, options.train_size,
                             static_cast<std::int64_t>(bi), label + "_best_cost",
                             at.best_value, at.elapsed_ms, config.seed});
      report.rows.push_back({exp, config.instance_label, options.train_size,
                             static_cast<std::int64_t>(bi), label + "_candidates",
                             static_cast<double>(at.evaluations), at.elapsed_ms,
                             config.seed});
    }
  }

  if (!options.scaling_sizes.empty()) {
    ScalingOptions scaling;
    scaling.sizes = options.scaling_sizes;
    scaling.modes = options.modes;
    const ExperimentReport sub =
        run_scaling_benchmark(instance, demand, scaling, config);
    report.rows.insert(report.rows.end(), sub.rows.begin(), sub.rows.end());
  }
  return report;
}

}  // namespace scendp
