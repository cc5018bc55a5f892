// scendp: scenario-batched min-plus DP engine for two-stage stochastic
// routing and inventory problems. Subcommands cover single evaluations,
// randomized oracle checks, the statistical experiment suite and benchmarks.

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "scendp/io.hpp"
#include "scendp/oracle.hpp"
#include "scendp/oudp.hpp"
#include "scendp/saa.hpp"
#include "scendp/scenario.hpp"
#include "scendp/split.hpp"

namespace {

using namespace scendp;

struct CommonOpts {
  std::string instance_path;
  std::string scenario_path;
  std::string gen_spec;
  std::size_t m = 0;
  std::string mode = "single";
  unsigned threads = 1;
  std::size_t batch_size = BackendConfig::kDefaultBatchSize;
  std::uint64_t mem_budget = BackendConfig::kDefaultMemoryBudget;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string timing_out;
  double beta = -1.0;
  bool hard = false;
  bool allow_infeasible = false;
  int synth_n = 0;
};

void add_backend_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--mode", o.mode, "Execution mode: single or multi")
      ->check(CLI::IsMember({"single", "multi"}));
  cmd->add_option("--threads", o.threads, "Worker threads in multi mode")
      ->envname("SCENARIO_DP_THREADS");
  cmd->add_option("--batch-size", o.batch_size, "Requested scenario batch size");
  cmd->add_option("--mem-budget", o.mem_budget, "Per-batch byte budget");
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_scenarios = true) {
  cmd->add_option("--instance", o.instance_path, "Instance file path");
  if (with_scenarios) {
    cmd->add_option("--scenarios", o.scenario_path,
                    "Scenario file (.csv for text, binary otherwise)");
    cmd->add_option("--gen", o.gen_spec,
                    "Generate scenarios from uniform:lo:hi or "
                    "tnormal:mean:std:lo:hi");
    cmd->add_option("--m", o.m, "Scenario count when generating");
  }
  cmd->add_option("--seed", o.seed, "Top-level seed; all streams derive from it");
  cmd->add_option("--out", o.out_path, "Report file (CSV)");
  cmd->add_option("--timing-out", o.timing_out, "Per-batch timing CSV");
  add_backend_flags(cmd, o);
}

void add_capacity_mode_flags(CLI::App* cmd, CommonOpts& o) {
  auto* beta = cmd->add_option(
      "--beta", o.beta, "Penalized capacity mode with this cost per excess unit");
  cmd->add_flag("--hard", o.hard, "Hard capacity mode (mask violations)")
      ->excludes(beta);
  cmd->add_flag("--allow-infeasible", o.allow_infeasible,
                "Exit 0 even when hard-mode scenarios are infeasible");
}

BackendConfig backend_from(const CommonOpts& o) {
  BackendConfig c = o.mode == "multi" ? BackendConfig::multi_thread(o.threads)
                                      : BackendConfig::single_thread();
  c.batch_size = o.batch_size;
  c.memory_budget = o.mem_budget;
  return c;
}

RoutingInstance load_routing(const CommonOpts& o) {
  RoutingInstance inst;
  if (!o.instance_path.empty()) {
    ParsedInstance parsed = parse_instance_file(o.instance_path);
    if (!std::holds_alternative<RoutingInstance>(parsed)) {
      throw std::runtime_error(o.instance_path + " is not a routing instance");
    }
    inst = std::get<RoutingInstance>(parsed);
  } else if (o.synth_n > 0) {
    inst = make_random_instance(o.synth_n, o.seed, 30, true, 0.0);
  } else {
    throw std::runtime_error("pass --instance or --synth-n");
  }
  if (o.beta >= 0.0) {
    inst.hard = false;
    inst.penalty_beta = o.beta;
  } else if (o.hard) {
    inst.hard = true;
  }
  return inst;
}

DsirpInstance load_dsirp(const CommonOpts& o) {
  if (o.instance_path.empty()) {
    throw std::runtime_error("pass --instance with a dsirp file");
  }
  ParsedInstance parsed = parse_instance_file(o.instance_path);
  if (!std::holds_alternative<DsirpInstance>(parsed)) {
    throw std::runtime_error(o.instance_path + " is not a dsirp instance");
  }
  return std::get<DsirpInstance>(parsed);
}

ScenarioBatch load_scenarios(const CommonOpts& o, std::size_t rows) {
  if (!o.scenario_path.empty()) {
    ScenarioBatch batch = read_scenario_file(o.scenario_path);
    if (batch.rows != rows) {
      throw std::runtime_error("scenario file has " +
                               std::to_string(batch.rows) +
                               " rows, instance needs " + std::to_string(rows));
    }
    return batch;
  }
  if (o.gen_spec.empty()) {
    throw std::runtime_error("pass --scenarios or --gen with --m");
  }
  const DistributionSpec dist = DistributionSpec::parse(
      o.gen_spec, derive_stream(o.seed, kStreamScenario, 0));
  return generate_scenarios(dist, rows, 1, o.m);
}

DistributionSpec demand_spec(const CommonOpts& o, const std::string& fallback) {
  return DistributionSpec::parse(o.gen_spec.empty() ? fallback : o.gen_spec, 0);
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoull(tok));
  if (out.empty()) throw std::runtime_error("empty list: " + text);
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw std::runtime_error("empty list: " + text);
  return out;
}

std::vector<BackendConfig> modes_from(const std::string& text,
                                      const CommonOpts& o) {
  std::vector<BackendConfig> modes;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    CommonOpts local = o;
    local.mode = tok;
    modes.push_back(backend_from(local));
  }
  if (modes.empty()) throw std::runtime_error("empty mode list");
  return modes;
}

void write_report_file(
    const CommonOpts& o, const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& params,
    const std::vector<ReportRow>& rows) {
  if (o.out_path.empty()) return;
  std::ofstream f(o.out_path);
  if (!f) throw std::runtime_error("cannot write " + o.out_path);
  RunMetadata meta;
  meta.command = command;
  meta.seed = o.seed;
  meta.params = params;
  write_report_csv(f, meta, rows);
}

void write_timing_file(const CommonOpts& o,
                       const std::vector<BatchTiming>& rows) {
  if (o.timing_out.empty()) return;
  std::ofstream f(o.timing_out);
  if (!f) throw std::runtime_error("cannot write " + o.timing_out);
  write_timing_csv(f, rows);
}

std::string label_of(const CommonOpts& o) {
  if (!o.instance_path.empty()) {
    const std::size_t slash = o.instance_path.find_last_of('/');
    return slash == std::string::npos ? o.instance_path
                                      : o.instance_path.substr(slash + 1);
  }
  return "synth" + std::to_string(o.synth_n);
}

std::uint64_t read_vm_hwm_bytes() {
  std::ifstream f("/proc/self/status");
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::uint64_t kb = 0;
      ls >> kb;
      return kb * 1024;
    }
  }
  return 0;
}

int cmd_split_eval(const CommonOpts& o, const std::string& tour_text) {
  RoutingInstance inst = load_routing(o);
  const ScenarioBatch scenarios = load_scenarios(o, inst.n);
  GiantTour tour;
  if (tour_text.empty()) {
    tour.order.resize(inst.n);
    std::iota(tour.order.begin(), tour.order.end(), 1);
  } else {
    std::istringstream in(tour_text);
    std::string tok;
    while (std::getline(in, tok, ',')) tour.order.push_back(std::stoi(tok));
  }

  const auto result =
      batched_expected_split(inst, tour, scenarios, backend_from(o));

  std::vector<ReportRow> rows;
  rows.reserve(scenarios.count + 2);
  for (std::size_t w = 0; w < scenarios.count; ++w) {
    rows.push_back({"split_eval", label_of(o), scenarios.count,
                    static_cast<std::int64_t>(w), "total",
                    result.per_scenario[w].total.value, 0.0, o.seed});
  }
  rows.push_back({"split_eval", label_of(o), scenarios.count, -1,
                  "mean_finite_total", result.mean_cost.value_or(0.0), 0.0,
                  o.seed});
  rows.push_back({"split_eval", label_of(o), scenarios.count, -1,
                  "infeasible_count",
                  static_cast<double>(result.infeasible_count), 0.0, o.seed});

  std::cout << "scenarios: " << scenarios.count << "  mean finite total: "
            << format_value(result.mean_cost.value_or(0.0))
            << "  infeasible: " << result.infeasible_count << '\n';
  if (scenarios.count <= 4) {
    for (std::size_t w = 0; w < scenarios.count; ++w) {
      const SplitSolution& s = result.per_scenario[w];
      std::cout << "scenario " << w << ": total "
                << format_value(s.total.value) << ", V =";
      for (const ExtendedCost& v : s.values.values) {
        std::cout << ' ' << (v.is_finite() ? format_value(v.value) : "inf");
      }
      std::cout << ", routes:";
      for (const auto& [p, i] : recover_routes(s)) {
        std::cout << " [";
        for (int k = p + 1; k <= i; ++k) {
          std::cout << tour.order[k - 1] << (k == i ? "" : " ");
        }
        std::cout << ']';
      }
      std::cout << '\n';
    }
  }

  write_report_file(
      o, "split-eval",
      {{"instance", label_of(o)},
       {"m", std::to_string(scenarios.count)},
       {"capacity_mode",
        inst.hard ? "hard" : "beta=" + format_value(inst.penalty_beta)}},
      rows);
  write_timing_file(o, result.timings);
  if (result.error_count() > 0) return 2;
  if (inst.hard && result.infeasible_count > 0 && !o.allow_infeasible) return 3;
  return 0;
}

int cmd_dsirp_eval(const CommonOpts& o) {
  const DsirpInstance inst = load_dsirp(o);
  const ScenarioBatch scenarios = load_scenarios(o, inst.spec.horizon);
  const auto result = batched_expected_cost(inst.spec, inst.delivery,
                                            inst.holding, scenarios,
                                            backend_from(o));

  std::vector<ReportRow> rows;
  for (std::size_t w = 0; w < scenarios.count; ++w) {
    rows.push_back({"dsirp_eval", label_of(o), scenarios.count,
                    static_cast<std::int64_t>(w), "total",
                    result.per_scenario[w].total.value, 0.0, o.seed});
  }
  rows.push_back({"dsirp_eval", label_of(o), scenarios.count, -1, "mean_total",
                  result.mean_cost.value_or(0.0), 0.0, o.seed});

  std::cout << "scenarios: " << scenarios.count
            << "  mean total: " << format_value(result.mean_cost.value_or(0.0))
            << '\n';
  if (scenarios.count <= 4) {
    for (std::size_t w = 0; w < scenarios.count; ++w) {
      const auto frontiers = sweep_customer_scenario(
          inst.spec, inst.delivery, inst.holding, scenarios.column(w));
      const ScheduleResult& s = result.per_scenario[w];
      std::cout << "scenario " << w << ": total "
                << format_value(s.total.value) << '\n';
      for (std::size_t t = 0; t < frontiers.size(); ++t) {
        std::cout << "  J" << (t + 1) << " =";
        for (const ExtendedCost& v : frontiers[t].values) {
          std::cout << ' ' << (v.is_finite() ? format_value(v.value) : "inf");
        }
        std::cout << '\n';
      }
      std::cout << "  deliver =";
      for (std::size_t t = 0; t < s.deliver.size(); ++t) {
        std::cout << ' ' << int(s.deliver[t]);
      }
      std::cout << "  quantities =";
      for (std::size_t t = 0; t < s.quantity.size(); ++t) {
        std::cout << ' ' << s.quantity[t];
      }
      std::cout << '\n';
    }
  }

  write_report_file(o, "dsirp-eval",
                    {{"instance", label_of(o)},
                     {"m", std::to_string(scenarios.count)}},
                    rows);
  write_timing_file(o, result.timings);
  return result.error_count() > 0 ? 2 : 0;
}

int cmd_oracle_check(const CommonOpts& o, std::size_t trials,
                     const std::string& kind) {
  bool failed = false;
  auto report = [&](const std::string& name, const OracleOutcome& r) {
    std::cout << name << ": " << (r.trials - r.mismatches) << "/" << r.trials
              << " matched\n";
    if (!r.ok()) {
      std::cout << "  first failure: " << r.first_failure << '\n';
      failed = true;
    }
  };
  if (kind == "split" || kind == "both") {
    report("split vs enumeration", run_split_oracle_trials(trials, o.seed));
    report("linear vs quadratic",
           run_split_agreement_trials(trials, o.seed, 120));
  }
  if (kind == "dsirp" || kind == "both") {
    report("dsirp vs enumeration", run_dsirp_oracle_trials(trials, o.seed));
  }
  return failed ? 2 : 0;
}

int cmd_gen_scenarios(const CommonOpts& o, std::size_t rows_flag) {
  std::size_t rows = rows_flag;
  if (!o.instance_path.empty()) {
    ParsedInstance parsed = parse_instance_file(o.instance_path);
    rows = std::holds_alternative<RoutingInstance>(parsed)
               ? static_cast<std::size_t>(std::get<RoutingInstance>(parsed).n)
               : static_cast<std::size_t>(
                     std::get<DsirpInstance>(parsed).spec.horizon);
  }
  if (rows == 0) throw std::runtime_error("pass --rows or --instance");
  if (o.gen_spec.empty()) throw std::runtime_error("pass --gen");
  if (o.out_path.empty()) throw std::runtime_error("pass --out");
  const DistributionSpec dist = DistributionSpec::parse(
      o.gen_spec, derive_stream(o.seed, kStreamScenario, 0));
  const ScenarioBatch batch = generate_scenarios(dist, rows, 1, o.m);
  write_scenario_file(batch, o.out_path);
  std::cout << "wrote " << batch.count << " scenarios x " << batch.rows
            << " rows to " << o.out_path << '\n';
  return 0;
}

ExperimentConfig experiment_config(const CommonOpts& o, std::uint64_t budget) {
  ExperimentConfig cfg;
  cfg.instance_label = label_of(o);
  cfg.seed = o.seed;
  cfg.backend = backend_from(o);
  cfg.search_evaluations = budget;
  return cfg;
}

int emit_experiment(const CommonOpts& o, const std::string& command,
                    const ExperimentReport& report,
                    std::vector<std::pair<std::string, std::string>> params) {
  if (o.out_path.empty()) {
    RunMetadata meta{command, o.seed, params};
    write_report_csv(std::cout, meta, report.rows);
  } else {
    write_report_file(o, command, params, report.rows);
    std::cout << command << ": " << report.rows.size() << " rows -> "
              << o.out_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "scendp: scenario-batched min-plus DP engine for stochastic routing "
      "and inventory problems"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string tour_text;
  std::size_t trials = 200;
  std::string kind = "both";
  std::size_t rows_flag = 0;
  std::string m_list_text = "10,100,1000";
  int reps = 5;
  std::size_t eval_size = 10000;
  std::size_t ref_size = 0;
  std::uint64_t budget_evals = 800;
  std::string budgets_text = "0.5,1,2";
  std::string modes_text = "single,multi";
  std::string sizes_text = "1000,10000,100000,1000000";
  std::size_t target_evals = 200000;
  std::size_t train_size = 10000;
  std::string mem_kind = "split";
  std::string tb_scaling;

  auto* split_eval =
      app.add_subcommand("split-eval", "Split one giant tour per scenario");
  add_common_flags(split_eval, o);
  add_capacity_mode_flags(split_eval, o);
  split_eval->add_option("--tour", tour_text,
                         "Comma-separated customer order (default 1..n)");
  split_eval->add_option("--synth-n", o.synth_n, "Synthetic instance size");

  auto* dsirp_eval =
      app.add_subcommand("dsirp-eval", "Order-up-to schedule per scenario");
  add_common_flags(dsirp_eval, o);

  auto* oracle = app.add_subcommand(
      "oracle-check", "Randomized cross-checks against enumeration oracles");
  add_common_flags(oracle, o, false);
  oracle->add_option("--trials", trials, "Trials per check");
  oracle->add_option("--kind", kind, "split, dsirp or both")
      ->check(CLI::IsMember({"split", "dsirp", "both"}));

  auto* gen = app.add_subcommand("gen-scenarios", "Write a scenario file");
  add_common_flags(gen, o);
  gen->add_option("--rows", rows_flag, "Demand rows when no instance is given");

  auto* bias = app.add_subcommand(
      "saa-bias", "In-sample vs out-of-sample value per scenario count");
  add_common_flags(bias, o);
  add_capacity_mode_flags(bias, o);
  bias->add_option("--m-list", m_list_text, "Training scenario counts");
  bias->add_option("--reps", reps, "Replications per m");
  bias->add_option("--eval-size", eval_size, "Shared evaluation set size");
  bias->add_option("--ref-size", ref_size,
                   "Reference evaluation of the best solution (0 = skip)");
  bias->add_option("--budget-evals", budget_evals, "Search candidates per rep");

  auto* conv = app.add_subcommand("saa-convergence",
                                  "Spread of the in-sample value vs m");
  add_common_flags(conv, o);
  add_capacity_mode_flags(conv, o);
  conv->add_option("--m-list", m_list_text, "Training scenario counts");
  conv->add_option("--reps", reps, "Replications per m");
  conv->add_option("--budget-evals", budget_evals, "Search candidates per rep");

  auto* quality = app.add_subcommand(
      "quality-vs-scenarios",
      "Out-of-sample cost of solutions trained with growing m");
  add_common_flags(quality, o);
  add_capacity_mode_flags(quality, o);
  quality->add_option("--m-list", m_list_text, "Training scenario counts");
  quality->add_option("--reps", reps, "Replications per m");
  quality->add_option("--eval-size", eval_size, "Evaluation set size");
  quality->add_option("--budget-evals", budget_evals,
                      "Search candidates per rep");

  auto* tbudget = app.add_subcommand(
      "time-budget",
      "Best solution found within wall-clock budgets, per execution mode");
  add_common_flags(tbudget, o);
  add_capacity_mode_flags(tbudget, o);
  tbudget->add_option("--budgets", budgets_text, "Ascending budgets in seconds");
  tbudget->add_option("--modes", modes_text, "Modes to compare");
  tbudget->add_option("--train-size", train_size, "Training scenario count");
  tbudget->add_option("--synth-n", o.synth_n, "Synthetic instance size");
  tbudget->add_option("--scaling-sizes", tb_scaling,
                      "Optional scaling sub-table sizes");

  auto* scaling = app.add_subcommand(
      "scaling-bench", "Split evaluator wall time vs scenario count");
  add_common_flags(scaling, o);
  add_capacity_mode_flags(scaling, o);
  scaling->add_option("--sizes", sizes_text, "Scenario counts to time");
  scaling->add_option("--modes", modes_text, "Modes to compare");
  scaling->add_option("--target-evals", target_evals,
                      "Evaluations timed per point");
  scaling->add_option("--synth-n", o.synth_n, "Synthetic instance size");

  auto* mem = app.add_subcommand(
      "mem-report", "Predicted vs measured peak memory of a batched evaluation");
  add_common_flags(mem, o);
  mem->add_option("--kind", mem_kind, "split or dsirp")
      ->check(CLI::IsMember({"split", "dsirp"}));
  mem->add_option("--synth-n", o.synth_n, "Synthetic instance size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (split_eval->parsed()) return cmd_split_eval(o, tour_text);
    if (dsirp_eval->parsed()) return cmd_dsirp_eval(o);
    if (oracle->parsed()) return cmd_oracle_check(o, trials, kind);
    if (gen->parsed()) return cmd_gen_scenarios(o, rows_flag);

    if (bias->parsed()) {
      const RoutingInstance inst = load_routing(o);
      const auto report = run_bias_experiment(
          inst, demand_spec(o, "uniform:1:10"), parse_size_list(m_list_text),
          reps, eval_size, ref_size, experiment_config(o, budget_evals));
      return emit_experiment(o, "saa-bias", report,
                             {{"m_list", m_list_text},
                              {"reps", std::to_string(reps)},
                              {"eval_size", std::to_string(eval_size)},
                              {"budget_evals", std::to_string(budget_evals)}});
    }
    if (conv->parsed()) {
      const RoutingInstance inst = load_routing(o);
      const auto report = run_convergence_experiment(
          inst, demand_spec(o, "uniform:1:10"), parse_size_list(m_list_text),
          reps, experiment_config(o, budget_evals));
      return emit_experiment(o, "saa-convergence", report,
                             {{"m_list", m_list_text},
                              {"reps", std::to_string(reps)},
                              {"budget_evals", std::to_string(budget_evals)}});
    }
    if (quality->parsed()) {
      const RoutingInstance inst = load_routing(o);
      const auto report = run_quality_experiment(
          inst, demand_spec(o, "uniform:1:10"), parse_size_list(m_list_text),
          reps, eval_size, experiment_config(o, budget_evals));
      return emit_experiment(o, "quality-vs-scenarios", report,
                             {{"m_list", m_list_text},
                              {"reps", std::to_string(reps)},
                              {"eval_size", std::to_string(eval_size)},
                              {"budget_evals", std::to_string(budget_evals)}});
    }
    if (tbudget->parsed()) {
      const RoutingInstance inst = load_routing(o);
      TimeBudgetOptions opts;
      opts.budgets_seconds = parse_double_list(budgets_text);
      opts.modes = modes_from(modes_text, o);
      opts.train_size = train_size;
      if (!tb_scaling.empty()) opts.scaling_sizes = parse_size_list(tb_scaling);
      const auto report =
          run_time_budget_experiment(inst, demand_spec(o, "uniform:1:10"), opts,
                                     experiment_config(o, budget_evals));
      return emit_experiment(o, "time-budget", report,
                             {{"budgets", budgets_text},
                              {"modes", modes_text},
                              {"train_size", std::to_string(train_size)}});
    }
    if (scaling->parsed()) {
      const RoutingInstance inst = load_routing(o);
      ScalingOptions opts;
      opts.sizes = parse_size_list(sizes_text);
      opts.modes = modes_from(modes_text, o);
      opts.target_evaluations = target_evals;
      const auto report =
          run_scaling_benchmark(inst, demand_spec(o, "uniform:1:10"), opts,
                                experiment_config(o, budget_evals));
      return emit_experiment(o, "scaling-bench", report,
                             {{"sizes", sizes_text}, {"modes", modes_text}});
    }
    if (mem->parsed()) {
      const std::uint64_t baseline = read_vm_hwm_bytes();
      FootprintModel model;
      std::uint64_t measured = 0;
      std::size_t count = 0;
      if (mem_kind == "split") {
        const RoutingInstance inst = load_routing(o);
        model = split_footprint_model(inst);
        GiantTour tour;
        tour.order.resize(inst.n);
        std::iota(tour.order.begin(), tour.order.end(), 1);
        const ScenarioBatch scenarios = load_scenarios(o, inst.n);
        count = scenarios.count;
        const auto result =
            batched_expected_split(inst, tour, scenarios, backend_from(o));
        measured = read_vm_hwm_bytes();
        if (result.error_count() > 0) return 2;
      } else {
        const DsirpInstance inst = load_dsirp(o);
        model = oudp_footprint_model(inst.spec);
        const ScenarioBatch scenarios = load_scenarios(o, inst.spec.horizon);
        count = scenarios.count;
        const auto result = batched_expected_cost(
            inst.spec, inst.delivery, inst.holding, scenarios, backend_from(o));
        measured = read_vm_hwm_bytes();
        if (result.error_count() > 0) return 2;
      }
      const FootprintEstimate predicted = memory_footprint(model, count);
      const std::uint64_t predicted_total = baseline + predicted.bytes;
      std::cout << "kind,m,baseline_bytes,model_bytes,predicted_peak_bytes,"
                   "measured_peak_bytes,ratio\n";
      std::cout << mem_kind << ',' << count << ',' << baseline << ','
                << predicted.bytes << ',' << predicted_total << ',' << measured
                << ','
                << format_value(static_cast<double>(measured) /
                                static_cast<double>(predicted_total))
                << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
