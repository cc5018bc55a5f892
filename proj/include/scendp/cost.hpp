#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace scendp {

/// Element of the (min,+) cost semiring: a nonnegative finite real or +inf.
/// +inf encodes an infeasible transition / unreachable state and is absorbing
/// under extended_add. The algebra has no subtraction, so inf - inf cannot
/// occur and results are NaN-free by construction.
struct ExtendedCost {
  double value{std::numeric_limits<double>::infinity()};

  constexpr ExtendedCost() = default;
  constexpr explicit ExtendedCost(double v) : value(v) {}

  static constexpr ExtendedCost infinity() { return ExtendedCost{}; }
  static constexpr ExtendedCost zero() { return ExtendedCost{0.0}; }

  constexpr bool is_finite() const {
    return value < std::numeric_limits<double>::infinity();
  }

  friend constexpr bool operator==(ExtendedCost, ExtendedCost) = default;
  friend constexpr auto operator<=>(ExtendedCost, ExtendedCost) = default;
};

// Semiring "multiplication": saturating addition. Plain IEEE addition already
// saturates for the values ExtendedCost admits (never negative, never NaN),
// which keeps the inner loops branch-free.
constexpr ExtendedCost extended_add(ExtendedCost a, ExtendedCost b) {
  return ExtendedCost{a.value + b.value};
}

// Semiring "addition": min. Without NaN, min over doubles is associative and
// commutative, so any reduction order gives bitwise-identical results.
constexpr ExtendedCost extended_min(ExtendedCost a, ExtendedCost b) {
  return b.value < a.value ? b : a;
}

// True for any value an ExtendedCost may legally hold (+inf included).
inline bool is_valid_cost(double v) { return !std::isnan(v) && v >= 0.0; }

}  // namespace scendp
