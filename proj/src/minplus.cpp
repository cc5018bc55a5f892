#include "scendp/minplus.hpp"

#include <stdexcept>
#include <string>

namespace scendp {

ValueFrontier ValueFrontier::initial(int stage, std::size_t state_count,
                                     std::size_t start_state) {
  if (start_state >= state_count) {
    throw std::invalid_argument("initial frontier: start state " +
                                std::to_string(start_state) +
                                " outside state space of size " +
                                std::to_string(state_count));
  }
  ValueFrontier f;
  f.stage = stage;
  f.values.assign(state_count, ExtendedCost::infinity());
  f.values[start_state] = ExtendedCost::zero();
  return f;
}

MaskedTransition::MaskedTransition(std::size_t rows, std::size_t cols,
                                   std::size_t option_depth)
    : rows_(rows), cols_(cols), depth_(option_depth) {
  if (rows == 0 || cols == 0 || option_depth == 0) {
    throw std::invalid_argument("transition matrix dimensions must be positive");
  }
  entries_.assign(rows_ * cols_ * depth_, ExtendedCost::infinity());
}

MaskedTransition MaskedTransition::collapse_options() const {
  MaskedTransition out(rows_, cols_, 1);
  for (std::size_t r = 0; r < depth_; ++r) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        out.at(i, j) = extended_min(out.at(i, j), at(i, j, r));
      }
    }
  }
  return out;
}

namespace {

void check_dims(const MaskedTransition& a, const ValueFrontier& j) {
  if (a.rows() != j.size()) {
    throw std::invalid_argument(
        "min-plus apply: matrix has " + std::to_string(a.rows()) +
        " rows but frontier has " + std::to_string(j.size()) + " entries");
  }
}

}  // namespace

ValueFrontier minplus_apply(const MaskedTransition& a, const ValueFrontier& j) {
  if (a.option_depth() != 1) {
    throw std::invalid_argument(
        "min-plus apply: option depth > 1, use minplus_apply_options");
  }
  check_dims(a, j);
  ValueFrontier out;
  out.stage = j.stage + 1;
  out.values.assign(a.cols(), ExtendedCost::infinity());
  for (std::size_t col = 0; col < a.cols(); ++col) {
    ExtendedCost best = ExtendedCost::infinity();
    for (std::size_t i = 0; i < a.rows(); ++i) {
      best = extended_min(best, extended_add(a.at(i, col), j.values[i]));
    }
    out.values[col] = best;
  }
  return out;
}

ValueFrontier minplus_apply_options(const MaskedTransition& a,
                                    const ValueFrontier& j) {
  check_dims(a, j);
  ValueFrontier out;
  out.stage = j.stage + 1;
  out.values.assign(a.cols(), ExtendedCost::infinity());
  for (std::size_t col = 0; col < a.cols(); ++col) {
    ExtendedCost best = ExtendedCost::infinity();
    for (std::size_t r = 0; r < a.option_depth(); ++r) {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        best = extended_min(best, extended_add(a.at(i, col, r), j.values[i]));
      }
    }
    out.values[col] = best;
  }
  return out;
}

std::vector<ValueFrontier> forward_sweep(std::span<const MaskedTransition> stages,
                                         const ValueFrontier& initial) {
  std::vector<ValueFrontier> frontiers;
  frontiers.reserve(stages.size() + 1);
  frontiers.push_back(initial);
  for (const MaskedTransition& stage : stages) {
    frontiers.push_back(minplus_apply_options(stage, frontiers.back()));
  }
  return frontiers;
}

}  // namespace scendp
