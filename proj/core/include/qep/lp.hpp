#pragma once

#include "qep/types.hpp"

#include <Eigen/Dense>

namespace qep {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector point;    // maximizer when Optimal, a feasible point after phase 1
  double value = 0.0;
};

/// Maximize <objective, x> subject to A x <= b, x free.
/// Dense two-phase tableau simplex with Bland's rule. Intended for desk-scale
/// polytopes (support values, feasibility certificates); not a general LP code.
LpResult solve_lp_max(const Vector& objective, const Eigen::MatrixXd& A,
                      const Vector& b);

/// Phase 1 only: find any x with A x <= b or report infeasibility.
LpResult find_feasible_point(const Eigen::MatrixXd& A, const Vector& b);

}  // namespace qep
