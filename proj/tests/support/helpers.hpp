#pragma once

#include "qep/geometry.hpp"
#include "qep/rng.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qep::test {

/// Lattice points of the set's bounding box at pitch h that lie in the set.
inline std::vector<Vector> grid_points(const ConvexSet& set, double h,
                                       double membership_tol = kDefaultTol) {
  const ConvexSet::Box bb = bounding_box(set);
  const Index n = set.dimension();
  std::vector<long> counts(static_cast<std::size_t>(n));
  long total = 1;
  for (Index i = 0; i < n; ++i) {
    counts[static_cast<std::size_t>(i)] =
        static_cast<long>(std::floor((bb.upper[i] - bb.lower[i]) / h + 1e-9)) + 1;
    total *= counts[static_cast<std::size_t>(i)];
  }
  std::vector<Vector> out;
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  Vector p(n);
  for (long k = 0; k < total; ++k) {
    for (Index i = 0; i < n; ++i) {
      p[i] = bb.lower[i] + h * static_cast<double>(idx[static_cast<std::size_t>(i)]);
    }
    if (contains(set, p, membership_tol)) out.push_back(p);
    for (Index i = n - 1; i >= 0; --i) {
      auto& v = idx[static_cast<std::size_t>(i)];
      if (++v < counts[static_cast<std::size_t>(i)]) break;
      v = 0;
    }
  }
  return out;
}

/// Independent brute-force distance: min |x - z| over the lattice of the set.
inline double brute_force_distance(const ConvexSet& set, const Vector& x, double h) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& z : grid_points(set, h)) {
    best = std::min(best, (x - z).norm());
  }
  return best;
}

/// Random bounded convex set in R^2 spanning every variant.
inline ConvexSet random_set_2d(SampleRng& rng) {
  const int kind = static_cast<int>(rng.next_u64() % 7);
  auto rnd = [&](double lo, double hi) { return rng.uniform(lo, hi); };
  switch (kind) {
    case 0: {
      const double x0 = rnd(-2.0, 1.0), y0 = rnd(-2.0, 1.0);
      return ConvexSet::box(make_vector({x0, y0}),
                            make_vector({x0 + rnd(0.2, 2.0), y0 + rnd(0.2, 2.0)}));
    }
    case 1:
      return ConvexSet::ball(make_vector({rnd(-1.5, 1.5), rnd(-1.5, 1.5)}), rnd(0.2, 1.5));
    case 2:
      return ConvexSet::segment(make_vector({rnd(-2.0, 2.0), rnd(-2.0, 2.0)}),
                                make_vector({rnd(-2.0, 2.0), rnd(-2.0, 2.0)}));
    case 3: {
      // Normals at jittered angles around the circle positively span R^2,
      // so the polytope is bounded; offsets keep the center inside.
      const Vector c = make_vector({rnd(-1.0, 1.0), rnd(-1.0, 1.0)});
      const int sides = 3 + static_cast<int>(rng.next_u64() % 4);
      std::vector<Halfspace> hs;
      for (int j = 0; j < sides; ++j) {
        const double angle = 2.0 * M_PI * (j + rnd(-0.2, 0.2)) / sides;
        const Vector nrm = make_vector({std::cos(angle), std::sin(angle)});
        hs.push_back({nrm, nrm.dot(c) + rnd(0.2, 1.5)});
      }
      return ConvexSet::polytope(std::move(hs));
    }
    case 4:
      return ConvexSet::translate(random_set_2d(rng),
                                  make_vector({rnd(-1.0, 1.0), rnd(-1.0, 1.0)}));
    case 5: {
      ConvexSet base = random_set_2d(rng);
      return ConvexSet::minkowski_sum(
          std::move(base), ConvexSet::ball(make_vector({0.0, 0.0}), rnd(0.1, 0.8)));
    }
    default: {
      const double x0 = rnd(-1.0, 0.0), y0 = rnd(-1.0, 0.0);
      ConvexSet base = ConvexSet::segment(make_vector({rnd(-1.5, 1.5), rnd(-1.5, 1.5)}),
                                          make_vector({rnd(-1.5, 1.5), rnd(-1.5, 1.5)}));
      return ConvexSet::minkowski_sum(
          std::move(base),
          ConvexSet::box(make_vector({x0, y0}),
                         make_vector({x0 + rnd(0.2, 1.0), y0 + rnd(0.2, 1.0)})));
    }
  }
}

inline Vector random_point_2d(SampleRng& rng, double span = 3.0) {
  return make_vector({rng.uniform(-span, span), rng.uniform(-span, span)});
}

}  // namespace qep::test
