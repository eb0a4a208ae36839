#include "qep/algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qep {

namespace {

void validate_outer(const OuterConfig& cfg) {
  if (cfg.stop_tol <= 0.0 || cfg.cycle_tol <= 0.0 || cfg.certify_eps <= 0.0) {
    throw ValidationError("OuterConfig", "tolerances must be positive");
  }
  if (cfg.max_outer_iterations < 1) {
    throw ValidationError("OuterConfig", "max_outer_iterations must be at least 1");
  }
  if (cfg.cycle_window < 2 || cfg.cycle_window > cfg.max_outer_iterations) {
    throw ValidationError("OuterConfig",
                          "cycle_window must lie in [2, max_outer_iterations]");
  }
}

}  // namespace

double ContractionReport::predicted_gap_bound(std::size_t i) const {
  if (!std::isfinite(q)) return std::numeric_limits<double>::infinity();
  return std::pow(q, static_cast<double>(i)) * initial_gap;
}

double ContractionReport::cauchy_bound(std::size_t m) const {
  if (!(q < 1.0)) {
    throw NonpositiveModulusError("cauchy_bound: needs a contraction (q < 1)");
  }
  return std::pow(q, static_cast<double>(m)) / (1.0 - q) * initial_gap;
}

ContractionReport contraction_certificate(const ProblemConstants& constants,
                                          const Vector& x0, const Vector& z0) {
  ensure_same_dimension(x0, z0, "contraction_certificate");
  ContractionReport report;
  report.constants = constants;
  report.initial_gap = (x0 - z0).norm();
  const double m = constants.strong_monotonicity.value;
  if (m <= 0.0) {
    report.q = std::numeric_limits<double>::infinity();
    report.guaranteed = false;
    return report;
  }
  report.q = std::sqrt(2.0 * constants.quadratic_modulus.value *
                       constants.map_lipschitz.value / m);
  report.guaranteed = report.q < 1.0 && constants.map_lipschitz.exact &&
                      constants.strong_monotonicity.exact &&
                      constants.quadratic_modulus.exact;
  return report;
}

std::optional<std::size_t> detect_cycle(const IterateTrace& trace, int window,
                                        double cycle_tol, double stop_tol) {
  if (window < 2) throw ValidationError("detect_cycle.window", "must be at least 2");
  const std::size_t nx = trace.xs.size();
  const std::size_t w = static_cast<std::size_t>(window);
  if (trace.gaps.size() < w) return std::nullopt;
  for (std::size_t k = trace.gaps.size() - w; k < trace.gaps.size(); ++k) {
    if (!(trace.gaps[k] > stop_tol)) return std::nullopt;
  }
  for (std::size_t p = 2; p <= w; ++p) {
    if (nx < w + p) break;
    bool periodic = true;
    for (std::size_t k = nx - w; k < nx; ++k) {
      if ((trace.xs[k] - trace.xs[k - p]).norm() > cycle_tol) {
        periodic = false;
        break;
      }
    }
    if (periodic) return p;
  }
  return std::nullopt;
}

RegularityProfile asymptotic_regularity_profile(const IterateTrace& trace) {
  if (trace.xs.size() < 2) {
    throw ValidationError("asymptotic_regularity_profile", "needs at least two iterates");
  }
  RegularityProfile profile;
  profile.gaps = trace.gaps;
  const std::size_t tail = std::min<std::size_t>(10, profile.gaps.size());
  profile.tail_max = 0.0;
  for (std::size_t k = profile.gaps.size() - tail; k < profile.gaps.size(); ++k) {
    profile.tail_max = std::max(profile.tail_max, profile.gaps[k]);
  }
  return profile;
}

Certificate verify_projected_solution(const Bifunction& f, const ConstraintMap& map,
                                      const ConvexSet& C, const Vector& x,
                                      const Vector& z, double eps,
                                      const InnerConfig& cfg) {
  if (eps <= 0.0) throw ValidationError("verify_projected_solution.eps", "must be positive");
  Certificate cert;
  cert.x = x;
  cert.z = z;
  cert.eps = eps;

  const ConvexSet phi = map(x, std::max(eps, 1e-7));
  cert.in_constraint_set = contains(phi, z, eps);
  cert.ep_residual = ep_residual(f, phi, z, cfg);
  cert.residual_ok = cert.ep_residual >= -eps;

  const ProjectionResult proj = project(C, z);
  const double displacement = (x - proj.point).norm();
  cert.projection_gap = std::abs((x - z).norm() - proj.distance) + displacement;
  cert.projection_ok = displacement <= eps;

  cert.valid = cert.in_constraint_set && cert.residual_ok && cert.projection_ok;
  return cert;
}

RunResult run_algorithm1(const BifunctionFamily& family, const ConstraintMap& map,
                         const ConvexSet& C, const Vector& x0, const OuterConfig& cfg,
                         const ClosedFormMap& closed_form) {
  validate_outer(cfg);
  ensure_finite(x0, "run_algorithm1.x0");
  if (!contains(C, x0, std::max(1e-7, cfg.stop_tol))) {
    throw OutsideDomainError("run_algorithm1: starting point lies outside C");
  }

  RunResult result;
  IterateTrace& trace = result.trace;
  trace.xs.push_back(x0);

  for (int i = 0; i < cfg.max_outer_iterations; ++i) {
    const Vector& xi = trace.xs.back();
    Vector zi;
    double residual = 0.0;
    try {
      const Bifunction fi = family(xi);
      const ConvexSet phi = map(xi);
      std::optional<Vector> closed_value;
      if (closed_form) closed_value = closed_form(xi);
      const EPSolution sol = solve_ep(fi, phi, cfg.inner, closed_value);
      zi = sol.point;
      residual = sol.residual;
    } catch (const SolveRunError&) {
      throw;
    } catch (const Error& e) {
      throw SolveRunError(static_cast<std::size_t>(i), trace, e.what());
    }
    trace.zs.push_back(zi);
    trace.residuals.push_back(residual);

    Vector next;
    try {
      next = project(C, zi).point;
    } catch (const Error& e) {
      throw SolveRunError(static_cast<std::size_t>(i), trace, e.what());
    }
    const double gap = (next - xi).norm();
    trace.xs.push_back(std::move(next));
    trace.gaps.push_back(gap);

    if (gap <= cfg.stop_tol) {
      result.outcome = OutcomeKind::Converged;
      const Vector& x_final = trace.xs.back();
      result.certificate = verify_projected_solution(
          family(x_final), map, C, x_final, zi, cfg.certify_eps, cfg.inner);
      break;
    }
    if (auto period = detect_cycle(trace, cfg.cycle_window, cfg.cycle_tol, cfg.stop_tol)) {
      result.outcome = OutcomeKind::Cycling;
      result.cycle_period = *period;
      break;
    }
    result.outcome = OutcomeKind::BudgetExhausted;
  }

  if (cfg.constants_samples >= 2 && !trace.zs.empty()) {
    const ProblemConstants constants = estimate_constants(
        family(x0), map, cfg.constants_samples, cfg.constants_seed);
    result.diagnostics = contraction_certificate(constants, trace.xs.front(), trace.zs.front());
  }
  return result;
}

RunResult run_algorithm1(const Bifunction& f, const ConstraintMap& map,
                         const ConvexSet& C, const Vector& x0, const OuterConfig& cfg,
                         const ClosedFormMap& closed_form) {
  return run_algorithm1([&f](const Vector&) { return f; }, map, C, x0, cfg, closed_form);
}

std::vector<Vector> fixed_point_oracle(const BifunctionFamily& family,
                                       const ConstraintMap& map, const ConvexSet& C,
                                       double grid_resolution, double eps,
                                       const InnerConfig& cfg) {
  if (C.dimension() > 3) {
    throw DimensionTooHighError("fixed_point_oracle: capped at dimension 3");
  }
  if (grid_resolution <= 0.0 || eps <= 0.0) {
    throw ValidationError("fixed_point_oracle", "resolution and eps must be positive");
  }
  const ConvexSet::Box bb = bounding_box(C);
  std::vector<Vector> hits;

  const Index n = C.dimension();
  std::vector<long> counts(static_cast<std::size_t>(n));
  long total = 1;
  for (Index i = 0; i < n; ++i) {
    counts[static_cast<std::size_t>(i)] =
        static_cast<long>(std::floor((bb.upper[i] - bb.lower[i]) / grid_resolution + 1e-9)) + 1;
    total *= counts[static_cast<std::size_t>(i)];
  }
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  Vector x(n);
  for (long k = 0; k < total; ++k) {
    for (Index i = 0; i < n; ++i) {
      x[i] = bb.lower[i] +
             grid_resolution * static_cast<double>(idx[static_cast<std::size_t>(i)]);
    }
    if (contains(C, x, kDefaultTol)) {
      const EPSolution sol = solve_ep(family(x), map(x), cfg);
      const Vector mapped = project(C, sol.point).point;
      if ((x - mapped).norm() <= eps + grid_resolution) {
        hits.push_back(x);
      }
    }
    for (Index i = n - 1; i >= 0; --i) {
      auto& v = idx[static_cast<std::size_t>(i)];
      if (++v < counts[static_cast<std::size_t>(i)]) break;
      v = 0;
    }
  }
  return hits;
}

std::vector<Vector> fixed_point_oracle(const Bifunction& f, const ConstraintMap& map,
                                       const ConvexSet& C, double grid_resolution,
                                       double eps, const InnerConfig& cfg) {
  return fixed_point_oracle([&f](const Vector&) { return f; }, map, C, grid_resolution,
                            eps, cfg);
}

}  // namespace qep
