#include "scendp/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scendp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SplitWork {
  SplitPrefixes pre;
  std::vector<double> fval;
  std::vector<int> dq;
  std::vector<ExtendedCost> values;
  std::vector<std::int32_t> cuts;
  std::vector<std::uint32_t> demand;
};

void fill_prefixes(const RoutingInstance& inst, const GiantTour& tour,
                   std::span<const std::uint32_t> demand, SplitPrefixes& pre) {
  const int n = inst.n;
  pre.dist.resize(n + 1);
  pre.load.resize(n + 1);
  pre.dist[0] = 0.0;
  pre.load[0] = 0;
  if (n >= 1) pre.dist[1] = 0.0;
  for (int i = 1; i <= n; ++i) {
    pre.load[i] = pre.load[i - 1] + demand[tour.order[i - 1] - 1];
    if (i >= 2) {
      pre.dist[i] =
          pre.dist[i - 1] + inst.cost(tour.order[i - 2], tour.order[i - 1]);
    }
  }
}

// Both DP forms evaluate a candidate predecessor through the same expression
//   f(p)    = (V(p) + c(0, s_{p+1})) - dist[p+1]
//   cand    = (f(p) + dist[i]) + c(s_i, n+1)
// so their V vectors agree bitwise, not just within rounding.
double split_core_quadratic(const RoutingInstance& inst, const GiantTour& tour,
                            const SplitPrefixes& pre, ExtendedCost* v,
                            std::int32_t* cuts) {
  const int n = inst.n;
  v[0] = ExtendedCost::zero();
  cuts[0] = 0;
  for (int i = 1; i <= n; ++i) {
    const double di = pre.dist[i];
    const double ret = inst.cost(tour.order[i - 1], inst.depot_in());
    double best = kInf;
    std::int32_t bestp = -1;
    for (int p = 0; p < i; ++p) {
      const double vp = v[p].value;
      if (!(vp < kInf)) continue;
      const std::int64_t excess = pre.load[i] - pre.load[p] - inst.capacity;
      const double fp = (vp + inst.cost(0, tour.order[p])) - pre.dist[p + 1];
      double cand = (fp + di) + ret;
      if (excess > 0) {
        if (inst.hard) continue;
        cand += inst.penalty_beta * static_cast<double>(excess);
      }
      if (cand < best) {
        best = cand;
        bestp = p;
      }
    }
    v[i] = ExtendedCost{best};
    cuts[i] = bestp;
  }
  return v[n].value;
}

double split_core_linear(const RoutingInstance& inst, const GiantTour& tour,
                         const SplitPrefixes& pre, ExtendedCost* v,
                         std::int32_t* cuts, std::vector<double>& fval,
                         std::vector<int>& dq) {
  const int n = inst.n;
  fval.resize(n);
  dq.clear();
  std::size_t head = 0;

  v[0] = ExtendedCost::zero();
  cuts[0] = 0;
  fval[0] = (0.0 + inst.cost(0, tour.order[0])) - pre.dist[1];
  dq.push_back(0);

  for (int i = 1; i <= n; ++i) {
    // loads are nondecreasing in the candidate index, so predecessors that
    // fall out of the capacity window form a prefix of the queue
    while (head < dq.size() &&
           pre.load[i] - pre.load[dq[head]] > inst.capacity) {
      ++head;
    }
    if (head >= dq.size()) {
      v[i] = ExtendedCost::infinity();
      cuts[i] = -1;
    } else {
      const int p = dq[head];
      const double cand =
          (fval[p] + pre.dist[i]) + inst.cost(tour.order[i - 1], inst.depot_in());
      v[i] = ExtendedCost{cand};
      cuts[i] = (cand < kInf) ? p : -1;
    }
    if (i < n) {
      const double fi = (v[i].value + inst.cost(0, tour.order[i])) - pre.dist[i + 1];
      // strict pop keeps earlier candidates ahead on f ties, matching the
      // smallest-predecessor argmin of the quadratic form
      while (dq.size() > head && fval[dq.back()] > fi) dq.pop_back();
      dq.push_back(i);
      fval[i] = fi;
    }
  }
  return v[n].value;
}

void finalize_solution(SplitSolution& s, int n) {
  s.total = s.values.values[n];
  s.feasible = s.total.is_finite();
  s.route_count = 0;
  if (!s.feasible) return;
  for (int i = n; i > 0; i = s.cuts[i]) ++s.route_count;
}

void check_inputs(const RoutingInstance& inst, const GiantTour& tour,
                  std::size_t demand_size) {
  inst.validate();
  tour.validate(inst.n);
  if (demand_size != static_cast<std::size_t>(inst.n)) {
    throw std::invalid_argument("demand column has " +
                                std::to_string(demand_size) +
                                " entries, instance has " +
                                std::to_string(inst.n) + " customers");
  }
}

}  // namespace

void RoutingInstance::validate() const {
  if (n < 1) throw std::invalid_argument("instance needs at least one customer");
  if (capacity <= 0) throw std::invalid_argument("capacity Q must be > 0");
  const std::size_t side = static_cast<std::size_t>(n) + 2;
  if (costs.size() != side * side) {
    throw std::invalid_argument("cost matrix must be (n+2) x (n+2)");
  }
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t b = 0; b < side; ++b) {
      const double c = costs[a * side + b];
      if (!(std::isfinite(c)) || c < 0.0) {
        throw std::invalid_argument("cost matrix entries must be finite and >= 0");
      }
      if (a == b && c != 0.0) {
        throw std::invalid_argument("cost matrix diagonal must be 0");
      }
    }
  }
  if (!hard && !(penalty_beta >= 0.0)) {
    throw std::invalid_argument("penalty beta must be >= 0");
  }
}

void GiantTour::validate(int n) const {
  if (order.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("tour must visit all " + std::to_string(n) +
                                " customers");
  }
  std::vector<char> seen(n + 1, 0);
  for (int c : order) {
    if (c < 1 || c > n || seen[c]) {
      throw std::invalid_argument("tour is not a permutation of 1.." +
                                  std::to_string(n));
    }
    seen[c] = 1;
  }
}

SplitPrefixes build_split_inputs(const RoutingInstance& instance,
                                 const GiantTour& tour,
                                 std::span<const std::uint32_t> demand) {
  check_inputs(instance, tour, demand.size());
  SplitPrefixes pre;
  fill_prefixes(instance, tour, demand, pre);
  return pre;
}

double subroute_cost(const RoutingInstance& instance, const GiantTour& tour,
                     const SplitPrefixes& pre, int p, int i) {
  return instance.cost(0, tour.order[p]) + pre.dist[i] - pre.dist[p + 1] +
         instance.cost(tour.order[i - 1], instance.depot_in());
}

std::vector<std::pair<int, int>> recover_routes(const SplitSolution& solution) {
  std::vector<std::pair<int, int>> routes;
  if (!solution.feasible) return routes;
  const int n = static_cast<int>(solution.cuts.size()) - 1;
  for (int i = n; i > 0;) {
    const int p = solution.cuts[i];
    routes.emplace_back(p, i);
    i = p;
  }
  std::reverse(routes.begin(), routes.end());
  return routes;
}

SplitSolution split_scenario_quadratic(const RoutingInstance& instance,
                                       const GiantTour& tour,
                                       std::span<const std::uint32_t> demand) {
  check_inputs(instance, tour, demand.size());
  SplitPrefixes pre;
  fill_prefixes(instance, tour, demand, pre);
  SplitSolution s;
  s.values.stage = 1;
  s.values.values.resize(instance.n + 1);
  s.cuts.resize(instance.n + 1);
  split_core_quadratic(instance, tour, pre, s.values.values.data(),
                       s.cuts.data());
  finalize_solution(s, instance.n);
  return s;
}

SplitSolution split_scenario_linear(const RoutingInstance& instance,
                                    const GiantTour& tour,
                                    std::span<const std::uint32_t> demand) {
  if (!instance.hard) {
    throw std::invalid_argument(
        "linear split handles hard capacities only; use the quadratic form "
        "for penalized instances");
  }
  check_inputs(instance, tour, demand.size());
  SplitPrefixes pre;
  fill_prefixes(instance, tour, demand, pre);
  SplitSolution s;
  s.values.stage = 1;
  s.values.values.resize(instance.n + 1);
  s.cuts.resize(instance.n + 1);
  std::vector<double> fval;
  std::vector<int> dq;
  split_core_linear(instance, tour, pre, s.values.values.data(), s.cuts.data(),
                    fval, dq);
  finalize_solution(s, instance.n);
  return s;
}

ExtendedCost brute_force_split(const RoutingInstance& instance,
                               const GiantTour& tour,
                               std::span<const std::uint32_t> demand) {
  check_inputs(instance, tour, demand.size());
  const int n = instance.n;
  if (n > 20) {
    throw std::invalid_argument("brute-force split is limited to n <= 20");
  }
  double best = kInf;
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double total = 0.0;
    bool ok = true;
    int start = 1;
    for (int i = 1; i <= n && ok; ++i) {
      const bool route_ends = (i == n) || ((mask >> (i - 1)) & 1);
      if (!route_ends) continue;
      double c = instance.cost(0, tour.order[start - 1]);
      std::int64_t load = 0;
      for (int k = start; k <= i; ++k) {
        load += demand[tour.order[k - 1] - 1];
        if (k > start) c += instance.cost(tour.order[k - 2], tour.order[k - 1]);
      }
      c += instance.cost(tour.order[i - 1], instance.depot_in());
      if (load > instance.capacity) {
        if (instance.hard) {
          ok = false;
          break;
        }
        c += instance.penalty_beta *
             static_cast<double>(load - instance.capacity);
      }
      total += c;
      start = i + 1;
    }
    if (ok && total < best) best = total;
  }
  return ExtendedCost{best};
}

std::uint64_t split_per_scenario_bytes(int n) {
  const std::uint64_t states = static_cast<std::uint64_t>(n) + 1;
  // stored solution payload: V values + cut pointers + record bookkeeping,
  // plus the scenario's demand column
  return states * sizeof(ExtendedCost) + states * sizeof(std::int32_t) +
         static_cast<std::uint64_t>(n) * sizeof(std::uint32_t) + 96;
}

FootprintModel split_footprint_model(const RoutingInstance& instance) {
  const std::uint64_t side = static_cast<std::uint64_t>(instance.n) + 2;
  FootprintModel model;
  model.fixed_bytes = side * side * sizeof(double) + (std::uint64_t{1} << 20);
  model.per_scenario_bytes = split_per_scenario_bytes(instance.n);
  return model;
}

BatchResultSet<SplitSolution> batched_expected_split(
    const RoutingInstance& instance, const GiantTour& tour,
    const ScenarioBatch& scenarios, const BackendConfig& config) {
  check_inputs(instance, tour, scenarios.rows);
  const int n = instance.n;
  auto factory = [&](unsigned) {
    return [&instance, &tour, &scenarios, n,
            work = SplitWork{}](std::size_t w) mutable -> SplitSolution {
      fill_prefixes(instance, tour, scenarios.column(w), work.pre);
      SplitSolution s;
      s.values.stage = 1;
      s.values.values.resize(n + 1);
      s.cuts.resize(n + 1);
      if (instance.hard) {
        split_core_linear(instance, tour, work.pre, s.values.values.data(),
                          s.cuts.data(), work.fval, work.dq);
      } else {
        split_core_quadratic(instance, tour, work.pre, s.values.values.data(),
                             s.cuts.data());
      }
      finalize_solution(s, n);
      return s;
    };
  };
  return run_batched<SplitSolution>(scenarios.count, factory, config,
                                    split_per_scenario_bytes(n));
}

namespace {

template <typename ColumnSource>
BatchResultSet<ExtendedCost> split_costs_impl(const RoutingInstance& instance,
                                              const GiantTour& tour,
                                              std::size_t count,
                                              ColumnSource&& column_of,
                                              const BackendConfig& config) {
  const int n = instance.n;
  auto factory = [&](unsigned) {
    return [&instance, &tour, column_of, n,
            work = SplitWork{}](std::size_t w) mutable -> ExtendedCost {
      work.values.resize(n + 1);
      work.cuts.resize(n + 1);
      fill_prefixes(instance, tour, column_of(w, work.demand), work.pre);
      double total;
      if (instance.hard) {
        total = split_core_linear(instance, tour, work.pre, work.values.data(),
                                  work.cuts.data(), work.fval, work.dq);
      } else {
        total = split_core_quadratic(instance, tour, work.pre,
                                     work.values.data(), work.cuts.data());
      }
      return ExtendedCost{total};
    };
  };
  // cost-only evaluation keeps no per-scenario payload beyond the total
  return run_batched<ExtendedCost>(count, factory, config, sizeof(ExtendedCost));
}

}  // namespace

BatchResultSet<ExtendedCost> batched_split_costs(const RoutingInstance& instance,
                                                 const GiantTour& tour,
                                                 const ScenarioBatch& scenarios,
                                                 const BackendConfig& config) {
  check_inputs(instance, tour, scenarios.rows);
  auto column_of = [&scenarios](std::size_t w, std::vector<std::uint32_t>&)
      -> std::span<const std::uint32_t> { return scenarios.column(w); };
  return split_costs_impl(instance, tour, scenarios.count, column_of, config);
}

BatchResultSet<ExtendedCost> batched_split_costs_generated(
    const RoutingInstance& instance, const GiantTour& tour,
    const DistributionSpec& dist, std::size_t count,
    const BackendConfig& config) {
  instance.validate();
  tour.validate(instance.n);
  dist.validate();
  const std::size_t n = static_cast<std::size_t>(instance.n);
  auto column_of = [&dist, n](std::size_t w, std::vector<std::uint32_t>& buf)
      -> std::span<const std::uint32_t> {
    buf.resize(n);
    generate_scenario_column(dist, w, buf);
    return {buf.data(), buf.size()};
  };
  return split_costs_impl(instance, tour, count, column_of, config);
}

RoutingInstance make_random_instance(int n, std::uint64_t seed,
                                     std::int64_t capacity, bool hard,
                                     double penalty_beta) {
  RoutingInstance inst;
  inst.n = n;
  inst.capacity = capacity;
  inst.hard = hard;
  inst.penalty_beta = penalty_beta;
  const int side = n + 2;
  inst.costs.assign(static_cast<std::size_t>(side) * side, 0.0);
  SplitMix64 rng(derive_stream(seed, kStreamInstance, 0));
  for (int a = 0; a < side; ++a) {
    for (int b = a + 1; b < side; ++b) {
      const double c = static_cast<double>(1 + rng.next_below(20));
      inst.costs[a * side + b] = c;
      inst.costs[b * side + a] = c;
    }
  }
  return inst;
}

}  // namespace scendp
