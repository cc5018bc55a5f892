#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scendp/cost.hpp"

namespace scendp {

/// Cost-to-go vector over one stage's state space. Entry s is the minimum
/// cumulative cost of reaching state s at this stage; unreachable states hold
/// exactly +inf.
struct ValueFrontier {
  int stage = 1;
  std::vector<ExtendedCost> values;

  std::size_t size() const { return values.size(); }

  /// Frontier with cost zero at `start_state` and +inf everywhere else.
  static ValueFrontier initial(int stage, std::size_t state_count,
                               std::size_t start_state);
};

/// Dense stage-transition cost matrix A(i, j) with +inf masking infeasible
/// moves. An option depth R > 1 keeps per-option slices A(i, j; r); the
/// effective cost of a transition is the minimum over its R slices.
class MaskedTransition {
 public:
  MaskedTransition(std::size_t rows, std::size_t cols,
                   std::size_t option_depth = 1);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t option_depth() const { return depth_; }

  ExtendedCost& at(std::size_t i, std::size_t j, std::size_t r = 0) {
    return entries_[(r * rows_ + i) * cols_ + j];
  }
  ExtendedCost at(std::size_t i, std::size_t j, std::size_t r = 0) const {
    return entries_[(r * rows_ + i) * cols_ + j];
  }

  /// Collapses the option axis: entry (i, j) becomes min_r A(i, j; r).
  MaskedTransition collapse_options() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t depth_;
  std::vector<ExtendedCost> entries_;  // slice-major: [r][i][j]
};

// out[j] = min_i { A(i, j) + J[i] }. Requires option depth 1 and
// A.rows == J.size; violations are rejected with std::invalid_argument.
ValueFrontier minplus_apply(const MaskedTransition& a, const ValueFrontier& j);

// Same update on an option-sliced matrix, reducing over r first and then over
// predecessors i. Equal to minplus_apply(a.collapse_options(), j).
ValueFrontier minplus_apply_options(const MaskedTransition& a,
                                    const ValueFrontier& j);

// Repeated min-plus updates along a chain of stage matrices. Returns every
// frontier, the initial one included, so the result has stages.size() + 1
// entries; an empty chain yields just {initial}.
std::vector<ValueFrontier> forward_sweep(std::span<const MaskedTransition> stages,
                                         const ValueFrontier& initial);

}  // namespace scendp
