#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "scendp/cost.hpp"

namespace scendp {

/// Execution settings for scenario-batched evaluation. The budget bounds the
/// bytes a single batch may pin at once; the effective batch size is derived
/// from it up front, the deterministic stand-in for reactive out-of-memory
/// retries.
struct BackendConfig {
  enum class Mode { kSingleThread, kMultiThread };

  static constexpr std::size_t kDefaultBatchSize = std::size_t{1} << 20;
  static constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{2} << 30;

  Mode mode = Mode::kSingleThread;
  unsigned threads = 1;
  std::size_t batch_size = kDefaultBatchSize;
  std::uint64_t memory_budget = kDefaultMemoryBudget;

  unsigned worker_count() const {
    return mode == Mode::kSingleThread ? 1U : threads;
  }

  void validate() const {
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  }

  static BackendConfig single_thread() { return BackendConfig{}; }
  static BackendConfig multi_thread(unsigned t) {
    BackendConfig c;
    c.mode = Mode::kMultiThread;
    c.threads = t;
    return c;
  }
};

/// One row of the optional per-batch timing side channel.
struct BatchTiming {
  std::size_t batch_index = 0;
  std::size_t size = 0;
  double wall_ms = 0.0;
  std::uint64_t bytes_estimate = 0;
};

// Cost projection used for the aggregate: either the result is the cost
// itself or it exposes a `total` member.
template <typename R>
ExtendedCost scenario_cost(const R& r) {
  if constexpr (std::is_same_v<R, ExtendedCost>) {
    return r;
  } else {
    return r.total;
  }
}

/// Per-scenario results in input order plus a fixed-order aggregate. The
/// aggregate mean is always one sequential sum over finite costs in scenario
/// index order, independent of how the work was partitioned.
template <typename R>
struct BatchResultSet {
  std::vector<R> per_scenario;
  std::vector<std::uint8_t> evaluated;       // 0 marks an error slot
  std::map<std::size_t, std::string> errors; // scenario index -> message
  std::optional<double> mean_cost;
  std::size_t finite_count = 0;
  std::size_t infeasible_count = 0;  // evaluated but cost == +inf
  std::vector<BatchTiming> timings;
  std::vector<std::string> warnings;

  std::size_t error_count() const { return errors.size(); }
};

// Largest batch the byte budget admits, floored at 1:
// max(1, min(requested, floor(budget / per_scenario_bytes))).
// per_scenario_bytes == 0 means "unknown" and leaves the request unchanged.
// A budget smaller than one scenario degrades to batches of 1 and reports it
// through *undersized.
std::size_t adjust_batch_size(std::size_t requested, std::uint64_t budget_bytes,
                              std::uint64_t per_scenario_bytes,
                              bool* undersized = nullptr);

/// Affine memory model: fixed_bytes + count * per_scenario_bytes.
struct FootprintModel {
  std::uint64_t fixed_bytes = 0;
  std::uint64_t per_scenario_bytes = 0;
};

struct FootprintEstimate {
  std::uint64_t bytes = 0;
  bool saturated = false;  // set when the count overflows the model
};

FootprintEstimate memory_footprint(const FootprintModel& model,
                                   std::uint64_t scenario_count);

/// Optional per-batch callbacks, run on the dispatching thread. Evaluators
/// that stage per-batch tensors allocate them in `before` and release them in
/// `after`.
struct BatchHooks {
  std::function<void(std::size_t batch_index, std::size_t lo, std::size_t hi)> before;
  std::function<void(std::size_t batch_index, std::size_t lo, std::size_t hi)> after;
};

// Evaluates `count` independent scenarios with a pool of workers.
//
// make_worker(worker_index) is invoked once per worker per batch and must
// return a callable R(std::size_t scenario_index) that is pure with respect
// to shared state. Results land in input order; an exception in one scenario
// marks only that slot as failed. Outputs are bitwise identical across modes,
// thread counts and batch sizes because every scenario writes its own slot
// and the aggregate is reduced sequentially afterwards.
template <typename R, typename WorkerFactory>
BatchResultSet<R> run_batched(std::size_t count, WorkerFactory&& make_worker,
                              const BackendConfig& config,
                              std::uint64_t per_scenario_bytes = 0,
                              const BatchHooks* hooks = nullptr) {
  config.validate();
  BatchResultSet<R> out;
  out.per_scenario.resize(count);
  out.evaluated.assign(count, 0);
  if (count == 0) return out;

  bool undersized = false;
  const std::size_t batch =
      adjust_batch_size(std::min(config.batch_size, count),
                        config.memory_budget, per_scenario_bytes, &undersized);
  if (undersized) {
    out.warnings.push_back(
        "memory budget below one scenario's footprint; running batches of 1");
  }

  std::mutex error_mutex;
  const unsigned workers = std::max(1U, config.worker_count());
  std::size_t batch_index = 0;
  for (std::size_t lo = 0; lo < count; lo += batch, ++batch_index) {
    const std::size_t hi = std::min(count, lo + batch);
    const auto t0 = std::chrono::steady_clock::now();
    if (hooks && hooks->before) hooks->before(batch_index, lo, hi);

    auto run_range = [&](unsigned widx, std::size_t a, std::size_t b) {
      auto worker = make_worker(widx);
      for (std::size_t w = a; w < b; ++w) {
        try {
          out.per_scenario[w] = worker(w);
          out.evaluated[w] = 1;
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> guard(error_mutex);
          out.errors.emplace(w, e.what());
        }
      }
    };

    const std::size_t span = hi - lo;
    const unsigned used = static_cast<unsigned>(
        std::min<std::size_t>(workers, span));
    if (used <= 1) {
      run_range(0, lo, hi);
    } else {
      const std::size_t chunk = (span + used - 1) / used;
      std::vector<std::thread> pool;
      pool.reserve(used);
      for (unsigned k = 0; k < used; ++k) {
        const std::size_t a = lo + k * chunk;
        const std::size_t b = std::min(hi, a + chunk);
        if (a >= b) break;
        pool.emplace_back(run_range, k, a, b);
      }
      for (auto& th : pool) th.join();
    }

    if (hooks && hooks->after) hooks->after(batch_index, lo, hi);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    out.timings.push_back(
        {batch_index, span, ms, static_cast<std::uint64_t>(span) * per_scenario_bytes});
  }

  // Fixed-order aggregation; never parallel, floating-point addition is not
  // associative and the mean is part of the determinism contract.
  double sum = 0.0;
  for (std::size_t w = 0; w < count; ++w) {
    if (!out.evaluated[w]) continue;
    const ExtendedCost c = scenario_cost(out.per_scenario[w]);
    if (c.is_finite()) {
      sum += c.value;
      ++out.finite_count;
    } else {
      ++out.infeasible_count;
    }
  }
  if (out.finite_count > 0) {
    out.mean_cost = sum / static_cast<double>(out.finite_count);
  }
  return out;
}

}  // namespace scendp
