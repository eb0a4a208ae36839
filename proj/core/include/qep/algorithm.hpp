#pragma once

#include "qep/constants.hpp"
#include "qep/constraint_map.hpp"
#include "qep/ep_solver.hpp"
#include "qep/errors.hpp"
#include "qep/types.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace qep {

struct OuterConfig {
  double stop_tol = 1e-8;       // |x_{i+1} - x_i| threshold realizing the stop rule
  int max_outer_iterations = 200;
  int cycle_window = 12;
  double cycle_tol = 1e-7;
  double certify_eps = 1e-6;
  InnerConfig inner;
  /// Sample count for the contraction diagnostics attached to a run;
  /// 0 skips the estimation and leaves the report empty.
  int constants_samples = 0;
  std::uint64_t constants_seed = 0;
};

/// Full iterate record of a run: outer points x_0, x_1, ...; inner solutions
/// z_0, ...; consecutive gaps |x_{i+1} - x_i|; inner residuals per z_i.
struct IterateTrace {
  std::vector<Vector> xs;
  std::vector<Vector> zs;
  std::vector<double> gaps;
  std::vector<double> residuals;
};

/// The three certificate conditions at (x, z): z lies in Phi(x), z solves
/// the inner problem up to eps, and x is the projection of z onto C.
struct Certificate {
  Vector x;
  Vector z;
  double ep_residual = 0.0;
  double projection_gap = 0.0;  // | |x-z| - d(z,C) | + |x - P_C(z)|
  double eps = 0.0;
  bool in_constraint_set = false;  // (a)
  bool residual_ok = false;        // (b)
  bool projection_ok = false;      // (c)
  bool valid = false;
};

/// Contraction diagnostics: q = sqrt(2RL/m) from the constants, the implied
/// geometric gap bound and the Cauchy tail bound (finite only for q < 1).
struct ContractionReport {
  ProblemConstants constants;
  double q = 0.0;  // +infinity when m = 0
  bool guaranteed = false;
  double initial_gap = 0.0;  // |x_0 - z_0|

  double predicted_gap_bound(std::size_t i) const;
  /// q^m / (1 - q) * |x_0 - z_0|; requires q < 1.
  double cauchy_bound(std::size_t m) const;
};

enum class OutcomeKind { Converged, Cycling, BudgetExhausted };

struct RunResult {
  IterateTrace trace;
  OutcomeKind outcome = OutcomeKind::BudgetExhausted;
  std::optional<Certificate> certificate;  // set when Converged
  std::optional<std::size_t> cycle_period; // set when Cycling
  std::optional<ContractionReport> diagnostics;

  const Vector& final_point() const { return trace.xs.back(); }
};

/// Error escaping a run mid-iteration; carries the iteration index and the
/// trace accumulated so far.
class SolveRunError : public Error {
 public:
  SolveRunError(std::size_t iteration, IterateTrace partial, const std::string& reason)
      : Error("iteration " + std::to_string(iteration) + ": " + reason),
        iteration_(iteration),
        partial_(std::move(partial)) {}
  std::size_t iteration() const { return iteration_; }
  const IterateTrace& partial_trace() const { return partial_; }

 private:
  std::size_t iteration_;
  IterateTrace partial_;
};

/// Rebinds the bifunction to the current outer point before each inner
/// solve; a constant family reduces to the plain overload.
using BifunctionFamily = std::function<Bifunction(const Vector&)>;
using ClosedFormMap = std::function<Vector(const Vector&)>;

/// The projected-solution procedure: from x_i, solve the inner equilibrium
/// problem on Phi(x_i), pick z_i, project back onto C, stop on a vanishing
/// gap (Converged, with certificate), a detected period (Cycling) or the
/// budget (BudgetExhausted). The trace is complete up to the stopping point.
RunResult run_algorithm1(const Bifunction& f, const ConstraintMap& map,
                         const ConvexSet& C, const Vector& x0, const OuterConfig& cfg,
                         const ClosedFormMap& closed_form = nullptr);

RunResult run_algorithm1(const BifunctionFamily& family, const ConstraintMap& map,
                         const ConvexSet& C, const Vector& x0, const OuterConfig& cfg,
                         const ClosedFormMap& closed_form = nullptr);

/// Smallest period p in [2, window] such that every trailing-window iterate
/// matches its p-step predecessor within cycle_tol while the trailing gaps
/// all exceed stop_tol; p = 1 is convergence, not a cycle.
std::optional<std::size_t> detect_cycle(const IterateTrace& trace, int window,
                                        double cycle_tol, double stop_tol);

struct RegularityProfile {
  std::vector<double> gaps;
  double tail_max = 0.0;  // max of the last min(10, |gaps|) gaps
};

RegularityProfile asymptotic_regularity_profile(const IterateTrace& trace);

ContractionReport contraction_certificate(const ProblemConstants& constants,
                                          const Vector& x0, const Vector& z0);

Certificate verify_projected_solution(const Bifunction& f, const ConstraintMap& map,
                                      const ConvexSet& C, const Vector& x,
                                      const Vector& z, double eps,
                                      const InnerConfig& cfg);

/// Lattice sweep of C (dimension <= 3) reporting every grid point whose
/// composite-map displacement |x - P_C(z(x))| is at most eps plus one grid
/// pitch: an outer approximation of the projected-solution set.
std::vector<Vector> fixed_point_oracle(const Bifunction& f, const ConstraintMap& map,
                                       const ConvexSet& C, double grid_resolution,
                                       double eps, const InnerConfig& cfg);

std::vector<Vector> fixed_point_oracle(const BifunctionFamily& family,
                                       const ConstraintMap& map, const ConvexSet& C,
                                       double grid_resolution, double eps,
                                       const InnerConfig& cfg);

}  // namespace qep
