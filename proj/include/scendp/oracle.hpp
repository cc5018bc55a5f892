#pragma once

#include <cstdint>
#include <string>

namespace scendp {

/// Outcome of a randomized cross-check run.
struct OracleOutcome {
  std::size_t trials = 0;
  std::size_t mismatches = 0;
  std::string first_failure;

  bool ok() const { return mismatches == 0; }
};

// Random small routing instances (n <= 10, integer costs and demands, hard
// and penalized modes alternating): the split DP total must equal the
// 2^(n-1) partition enumeration exactly, recovered routes must respect the
// capacity mask, and the linear form must match the quadratic one bitwise on
// hard instances.
OracleOutcome run_split_oracle_trials(std::size_t trials, std::uint64_t seed);

// Random hard-capacity instances up to max_n customers with non-integral
// costs: the linear and quadratic splits must produce bitwise-equal V vectors
// and identical cut choices.
OracleOutcome run_split_agreement_trials(std::size_t trials, std::uint64_t seed,
                                         int max_n);

// Random inventory instances (H <= 10, U <= 8, R <= 3, integer costs): the
// forward DP total must equal the 2^H schedule enumeration exactly and every
// recovered schedule must re-simulate to its reported total.
OracleOutcome run_dsirp_oracle_trials(std::size_t trials, std::uint64_t seed);

}  // namespace scendp
