#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "circuit_atlas/matrix.hpp"

namespace circuit_atlas {

/// eq x = eq_rhs, le x <= le_rhs, x_j >= 0 for every j with nonneg[j].
struct LinearSystem {
  explicit LinearSystem(std::size_t num_vars, bool all_nonneg = true);

  std::size_t num_vars;
  Matrix eq;
  Vector eq_rhs;
  Matrix le;
  Vector le_rhs;
  std::vector<bool> nonneg;

  void add_eq(const Vector& row, const Rational& rhs);
  void add_le(const Vector& row, const Rational& rhs);
  /// x satisfies every constraint exactly.
  bool satisfied_by(const Vector& x) const;
};

enum class LpStatus { feasible, infeasible, unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  /// A feasible point whenever status != infeasible.
  Vector witness;
  /// Set when maximize() reaches a finite optimum.
  std::optional<Rational> optimum;
  /// For unbounded outcomes: a ray r with witness + t r feasible for t >= 0
  /// and objective . r > 0.
  Vector ray;
};

/// Phase-one simplex with Bland's rule.
LpOutcome feasible(const LinearSystem& sys);

/// Two-phase simplex with Bland's rule.
LpOutcome maximize(const LinearSystem& sys, const Vector& objective);

/// A point of `sys` with x_i > 0 for every i in `vars`, if one exists. Each
/// x_i is maximized separately (with x_i <= 1 added, so the maximum is
/// finite) and the maximizers are averaged.
std::optional<Vector> strictly_positive_solution(const LinearSystem& sys, const std::vector<std::size_t>& vars);

}  // namespace circuit_atlas
