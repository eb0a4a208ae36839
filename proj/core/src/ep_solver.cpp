#include "qep/ep_solver.hpp"

#include "qep/errors.hpp"
#include "qep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qep {

namespace {

struct Lattice {
  Vector origin;
  double resolution = 0.0;
  std::vector<long> counts;  // points per axis
  long total = 0;
};

Lattice make_lattice(const ConvexSet& K, double resolution) {
  if (resolution <= 0.0) {
    throw ValidationError("grid_resolution", "must be positive");
  }
  const ConvexSet::Box bb = bounding_box(K);
  Lattice lat;
  lat.origin = bb.lower;
  lat.resolution = resolution;
  lat.total = 1;
  for (Index i = 0; i < bb.lower.size(); ++i) {
    const double span = bb.upper[i] - bb.lower[i];
    const long c = static_cast<long>(std::floor(span / resolution + 1e-9)) + 1;
    lat.counts.push_back(c);
    lat.total *= c;
    if (lat.total > (1L << 26)) {
      throw ValidationError("grid_resolution", "lattice exceeds 2^26 points");
    }
  }
  return lat;
}

template <typename Fn>
void for_each_lattice_point(const Lattice& lat, Fn&& fn) {
  const Index n = lat.origin.size();
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  Vector p(n);
  for (long k = 0; k < lat.total; ++k) {
    for (Index i = 0; i < n; ++i) {
      p[i] = lat.origin[i] +
             lat.resolution * static_cast<double>(idx[static_cast<std::size_t>(i)]);
    }
    fn(p);
    for (Index i = n - 1; i >= 0; --i) {
      auto& v = idx[static_cast<std::size_t>(i)];
      if (++v < lat.counts[static_cast<std::size_t>(i)]) break;
      v = 0;
    }
  }
}

double affine_residual(const Vector& gradient, const ConvexSet& K, const Vector& z) {
  if (gradient.norm() == 0.0) return 0.0;
  return -support_value(K, -gradient) - gradient.dot(z);
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

double ep_residual(const Bifunction& f, const ConvexSet& K, const Vector& z,
                   const InnerConfig& cfg) {
  ensure_finite(z, "ep_residual.z");
  if (auto g = f.affine_gradient(z)) {
    return affine_residual(*g, K, z);
  }
  if (K.dimension() > 4) {
    throw DimensionTooHighError("ep_residual: lattice evaluation capped at dimension 4");
  }
  const Lattice lat = make_lattice(K, cfg.grid_resolution);
  double best = std::numeric_limits<double>::infinity();
  long kept = 0;
  for_each_lattice_point(lat, [&](const Vector& y) {
    if (!contains(K, y, kDefaultTol)) return;
    ++kept;
    best = std::min(best, f(z, y));
  });
  if (kept == 0) throw EmptyConstraintError("ep_residual: no lattice point lies in K");
  return best;
}

EPSolution solve_vi_extragradient(const std::function<Vector(const Vector&)>& field,
                                  const ConvexSet& K, const InnerConfig& cfg) {
  if (cfg.epsilon <= 0.0 || cfg.max_iterations < 1 || cfg.step_size <= 0.0) {
    throw ValidationError("InnerConfig", "epsilon, step_size and budget must be positive");
  }
  const Index n = K.dimension();
  Vector z = project(K, Vector::Zero(n)).point;

  // Sampled Lipschitz estimate of the field over K sizes the step.
  SampleRng rng(0x51D5EEDULL);
  double lip = 0.0;
  Vector prev = sample_point(K, rng);
  for (int i = 0; i < 15; ++i) {
    const Vector next = sample_point(K, rng);
    const double d = (next - prev).norm();
    if (d > 1e-12) {
      lip = std::max(lip, (field(next) - field(prev)).norm() / d);
    }
    prev = next;
  }
  const double tau = lip > 1e-12 ? std::min(cfg.step_size, 0.9 / lip) : cfg.step_size;

  for (int k = 0; k < cfg.max_iterations; ++k) {
    const Vector y = project(K, z - tau * field(z)).point;
    const Vector zn = project(K, z - tau * field(y)).point;
    const double step = (zn - z).norm();
    z = zn;
    if (step <= cfg.epsilon / 10.0) {
      const double res = affine_residual(field(z), K, z);
      if (res >= -cfg.epsilon) {
        return EPSolution{z, res, InnerMethod::Extragradient, k + 1};
      }
    }
  }
  throw InnerBudgetExceededError("extragradient: residual target unmet within budget");
}

EPSolution grid_ep_oracle(const Bifunction& f, const ConvexSet& K,
                          double grid_resolution) {
  if (K.dimension() > 4) {
    throw DimensionTooHighError("grid_ep_oracle: capped at dimension 4");
  }
  const Lattice lat = make_lattice(K, grid_resolution);

  std::vector<Vector> candidates;
  for_each_lattice_point(lat, [&](const Vector& y) {
    if (contains(K, y, kDefaultTol)) candidates.push_back(y);
  });
  if (candidates.empty()) {
    throw EmptyConstraintError("grid_ep_oracle: no lattice point lies in K");
  }
  const bool full_lattice =
      static_cast<long>(candidates.size()) == lat.total;

  // Lattice inf of f(z, .) for one candidate z; separable shortcut when the
  // objective is affine in y and every lattice point survived the filter.
  auto lattice_inf = [&](const Vector& z) -> double {
    if (auto g = f.affine_gradient(z)) {
      double lin = 0.0;
      if (full_lattice) {
        for (Index i = 0; i < z.size(); ++i) {
          const double lo = lat.origin[i];
          const double hi =
              lat.origin[i] + lat.resolution *
                                  static_cast<double>(lat.counts[static_cast<std::size_t>(i)] - 1);
          lin += (*g)[i] > 0.0 ? (*g)[i] * lo : (*g)[i] * hi;
        }
      } else {
        lin = std::numeric_limits<double>::infinity();
        for (const Vector& y : candidates) lin = std::min(lin, g->dot(y));
      }
      return lin - g->dot(z);
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& y : candidates) best = std::min(best, f(z, y));
    return best;
  };

  const Vector* best_point = nullptr;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const Vector& z : candidates) {
    const double score = lattice_inf(z);
    if (score > best_score ||
        (score == best_score && (best_point == nullptr || lex_less(z, *best_point)))) {
      best_score = score;
      best_point = &z;
    }
  }
  return EPSolution{*best_point, best_score, InnerMethod::GridOracle,
                    static_cast<int>(candidates.size())};
}

EPSolution solve_ep(const Bifunction& f, const ConvexSet& K, const InnerConfig& cfg,
                    const std::optional<Vector>& closed_form_value) {
  if (f.dimension() != K.dimension()) {
    throw DimensionMismatchError("solve_ep: bifunction and constraint dimensions differ");
  }

  InnerMethod method = cfg.method;
  if (method == InnerMethod::Auto) {
    if (closed_form_value) {
      method = InnerMethod::ClosedForm;
    } else if (f.is_vi()) {
      method = InnerMethod::Extragradient;
    } else if (cfg.grid_resolution > 0.0) {
      method = InnerMethod::GridOracle;
    } else {
      throw NoMethodApplicableError(
          "solve_ep: no closed form, bifunction is not VI form, grid oracle disabled");
    }
  }

  switch (method) {
    case InnerMethod::ClosedForm: {
      if (!closed_form_value) {
        throw NoMethodApplicableError("solve_ep: closed form requested but none supplied");
      }
      const Vector& z = *closed_form_value;
      if (!contains(K, z, 1e-6)) {
        throw ValidationError("solve_ep.closed_form", "value lies outside the constraint set");
      }
      const double res = ep_residual(f, K, z, cfg);
      if (res < -cfg.epsilon) {
        throw InnerBudgetExceededError("solve_ep: closed-form residual target unmet");
      }
      return EPSolution{z, res, InnerMethod::ClosedForm, 0};
    }
    case InnerMethod::Extragradient: {
      if (!f.is_vi()) {
        throw NoMethodApplicableError("solve_ep: extragradient needs a VI-form bifunction");
      }
      auto field = [&f](const Vector& v) { return *f.affine_gradient(v); };
      return solve_vi_extragradient(field, K, cfg);
    }
    case InnerMethod::GridOracle: {
      if (cfg.grid_resolution <= 0.0) {
        throw NoMethodApplicableError("solve_ep: grid oracle disabled by configuration");
      }
      EPSolution sol = grid_ep_oracle(f, K, cfg.grid_resolution);
      // The lattice argmax is accepted up to the discretization error
      // grid_resolution * h; without a modulus there is nothing to hold
      // the lattice answer against.
      if (auto h = f.local_h(sol.point)) {
        if (sol.residual < -(cfg.epsilon + cfg.grid_resolution * *h)) {
          throw InnerBudgetExceededError("solve_ep: grid-oracle residual target unmet");
        }
      }
      return sol;
    }
    case InnerMethod::Auto:
      break;
  }
  throw NoMethodApplicableError("solve_ep: unresolved method");
}

}  // namespace qep
