#include "qep/geometry.hpp"

#include "qep/errors.hpp"
#include "qep/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace qep {

namespace {

using Box = ConvexSet::Box;
using Ball = ConvexSet::Ball;
using Polytope = ConvexSet::Polytope;
using Segment = ConvexSet::Segment;
using Translate = ConvexSet::Translate;
using MinkowskiSum = ConvexSet::MinkowskiSum;
using Intersection = ConvexSet::Intersection;

Vector clamp_to_box(const Box& box, const Vector& x) {
  return x.cwiseMax(box.lower).cwiseMin(box.upper);
}

Vector project_ball(const Ball& ball, const Vector& x) {
  const Vector d = x - ball.center;
  const double nrm = d.norm();
  if (nrm <= ball.radius) return x;
  if (nrm == 0.0) return ball.center;
  return ball.center + (ball.radius / nrm) * d;
}

Vector project_segment(const Segment& seg, const Vector& x) {
  const Vector dir = seg.b - seg.a;
  const double len2 = dir.squaredNorm();
  if (len2 == 0.0) return seg.a;
  const double t = std::clamp((x - seg.a).dot(dir) / len2, 0.0, 1.0);
  return seg.a + t * dir;
}

// Dual active-set projection onto {z : <a_i, z> <= b_i} with unit normals.
// Starts from the unconstrained optimum and adds violated constraints one at
// a time while keeping the working set's multipliers nonnegative; every
// accepted point is exact up to linear-algebra conditioning.
Vector project_polytope(const Polytope& poly, const Vector& x) {
  const Index n = x.size();
  const int m = static_cast<int>(poly.halfspaces.size());
  double bmax = 0.0;
  for (const auto& h : poly.halfspaces) bmax = std::max(bmax, std::abs(h.offset));
  const double feas_eps = 1e-12 * (1.0 + x.cwiseAbs().maxCoeff() + bmax);

  Vector z = x;
  std::vector<int> active;
  std::vector<double> lambda;

  auto margin = [&](int i) {
    return poly.halfspaces[static_cast<std::size_t>(i)].normal.dot(z) -
           poly.halfspaces[static_cast<std::size_t>(i)].offset;
  };

  const long cap = 1000 + 100L * (m + 2);
  for (long iter = 0; iter < cap; ++iter) {
    int p = -1;
    double worst = feas_eps;
    for (int i = 0; i < m; ++i) {
      const double v = margin(i);
      if (v > worst) {
        worst = v;
        p = i;
      }
    }
    if (p < 0) return z;

    const Vector& ap = poly.halfspaces[static_cast<std::size_t>(p)].normal;
    double violation = worst;
    double lambda_p = 0.0;

    for (long inner = 0; inner < cap; ++inner) {
      const int w = static_cast<int>(active.size());
      Vector r;
      Vector n2 = ap;
      if (w > 0) {
        Eigen::MatrixXd AWt(n, w);
        for (int k = 0; k < w; ++k) {
          AWt.col(k) = poly.halfspaces[static_cast<std::size_t>(active[static_cast<std::size_t>(k)])].normal;
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(AWt);
        r = cod.solve(ap);
        n2 = ap - AWt * r;
      }

      const double n2sq = n2.squaredNorm();
      const bool has_primal = n2sq > 1e-20;
      const double t_full = has_primal ? violation / n2sq
                                       : std::numeric_limits<double>::infinity();

      double t_block = std::numeric_limits<double>::infinity();
      int blocker = -1;
      for (int k = 0; k < w; ++k) {
        if (r[k] > 1e-12) {
          const double ratio = lambda[static_cast<std::size_t>(k)] / r[k];
          if (ratio < t_block) {
            t_block = ratio;
            blocker = k;
          }
        }
      }

      const double t = std::min(t_full, t_block);
      if (!std::isfinite(t)) {
        throw InfeasibleSetError("polytope projection: constraints are inconsistent");
      }

      for (int k = 0; k < w; ++k) lambda[static_cast<std::size_t>(k)] -= t * r[k];
      lambda_p += t;
      if (has_primal) {
        z -= t * n2;
        violation -= t * n2sq;
      }

      if (t_full <= t_block) {
        active.push_back(p);
        lambda.push_back(lambda_p);
        break;
      }
      active.erase(active.begin() + blocker);
      lambda.erase(lambda.begin() + blocker);
    }
  }
  throw NonConvergenceError("polytope projection exceeded its iteration budget");
}

// Alternating minimization of |x - a - b| over a in base, b in addend.
Vector project_minkowski_box(const ConvexSet& base, const ConvexSet& addend,
                             const Vector& x, double tol) {
  Vector a = project(base, x, tol).point;
  Vector b = project(addend, x - a, tol).point;
  const int budget = std::max(2000, 50 * static_cast<int>(x.size()));
  Vector prev_sum = a + b;
  for (int it = 0; it < budget; ++it) {
    a = project(base, x - b, tol).point;
    b = project(addend, x - a, tol).point;
    const Vector sum = a + b;
    if ((sum - prev_sum).norm() <= 0.01 * tol) return sum;
    prev_sum = sum;
  }
  throw NonConvergenceError("Minkowski-sum projection exceeded its iteration budget");
}

const Box* box_part(const Intersection& in) {
  for (const auto& p : in.parts) {
    if (const auto* b = std::get_if<Box>(&p->variant())) return b;
  }
  return nullptr;
}

const Ball* ball_part(const Intersection& in) {
  for (const auto& p : in.parts) {
    if (const auto* b = std::get_if<Ball>(&p->variant())) return b;
  }
  return nullptr;
}

// Exact two-stage formula for the nonnegative orthant intersected with a
// centered ball: project onto the cone, then radially onto the ball.
Vector project_orthant_ball(const Intersection& in, const Vector& x) {
  const Ball* ball = ball_part(in);
  Vector p = x.cwiseMax(0.0);
  const double nrm = p.norm();
  if (nrm > ball->radius && nrm > 0.0) p *= ball->radius / nrm;
  return p;
}

Vector project_intersection(const Intersection& in, const Vector& x, double tol) {
  if (in.orthant_ball) return project_orthant_ball(in, x);
  std::vector<const ConvexSet*> parts;
  parts.reserve(in.parts.size());
  for (const auto& p : in.parts) parts.push_back(p.get());
  const int sweeps = std::max(2000, 50 * static_cast<int>(x.size()));
  return project_dykstra(parts, x, tol, sweeps).point;
}

double polytope_margin_max(const Polytope& poly, const Vector& x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : poly.halfspaces) {
    worst = std::max(worst, h.normal.dot(x) - h.offset);
  }
  return worst;
}

}  // namespace

ConvexSet::ConvexSet(Variant v, Index dim)
    : value_(std::make_shared<const Variant>(std::move(v))), dimension_(dim) {}

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  ensure_finite(lower, "Box.lower");
  ensure_finite(upper, "Box.upper");
  ensure_same_dimension(lower, upper, "Box");
  if ((lower.array() > upper.array()).any()) {
    throw ValidationError("Box", "lower must not exceed upper componentwise");
  }
  const Index n = lower.size();
  return ConvexSet(Box{std::move(lower), std::move(upper)}, n);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  ensure_finite(center, "Ball.center");
  ensure_finite(radius, "Ball.radius");
  if (radius < 0.0) throw ValidationError("Ball", "radius must be nonnegative");
  const Index n = center.size();
  return ConvexSet(Ball{std::move(center), radius}, n);
}

ConvexSet ConvexSet::polytope(std::vector<Halfspace> halfspaces) {
  if (halfspaces.empty()) {
    throw ValidationError("Polytope", "needs at least one halfspace");
  }
  const Index n = halfspaces.front().normal.size();
  for (auto& h : halfspaces) {
    ensure_finite(h.normal, "Polytope.normal");
    ensure_finite(h.offset, "Polytope.offset");
    if (h.normal.size() != n) {
      throw DimensionMismatchError("Polytope: halfspace dimensions differ");
    }
    const double nrm = h.normal.norm();
    if (nrm < 1e-14) {
      throw ValidationError("Polytope", "halfspace normal must be nonzero");
    }
    h.normal /= nrm;
    h.offset /= nrm;
  }

  const int m = static_cast<int>(halfspaces.size());
  Eigen::MatrixXd A(m, n);
  Vector b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = halfspaces[static_cast<std::size_t>(i)].normal.transpose();
    b[i] = halfspaces[static_cast<std::size_t>(i)].offset;
  }
  if (find_feasible_point(A, b).status == LpStatus::Infeasible) {
    throw InfeasibleSetError("Polytope: no point satisfies all halfspaces");
  }
  for (Index j = 0; j < n; ++j) {
    for (double sgn : {1.0, -1.0}) {
      Vector c = Vector::Zero(n);
      c[j] = sgn;
      if (solve_lp_max(c, A, b).status == LpStatus::Unbounded) {
        throw UnboundedSupportError("Polytope: unbounded along coordinate axis " +
                                    std::to_string(j));
      }
    }
  }
  return ConvexSet(Polytope{std::move(halfspaces)}, n);
}

ConvexSet ConvexSet::segment(Vector a, Vector b) {
  ensure_finite(a, "Segment.a");
  ensure_finite(b, "Segment.b");
  ensure_same_dimension(a, b, "Segment");
  const Index n = a.size();
  return ConvexSet(Segment{std::move(a), std::move(b)}, n);
}

ConvexSet ConvexSet::translate(ConvexSet base, Vector shift) {
  ensure_finite(shift, "Translate.shift");
  if (shift.size() != base.dimension()) {
    throw DimensionMismatchError("Translate: shift dimension differs from base");
  }
  const Index n = base.dimension();
  auto base_ptr = std::make_shared<const ConvexSet>(std::move(base));
  return ConvexSet(Translate{std::move(base_ptr), std::move(shift)}, n);
}

ConvexSet ConvexSet::minkowski_sum(ConvexSet base, ConvexSet addend) {
  if (base.dimension() != addend.dimension()) {
    throw DimensionMismatchError("MinkowskiSum: dimensions differ");
  }
  const bool ok = std::holds_alternative<Box>(addend.variant()) ||
                  std::holds_alternative<Ball>(addend.variant());
  if (!ok) {
    throw ValidationError("MinkowskiSum", "addend must be a Box or a Ball");
  }
  const Index n = base.dimension();
  auto base_ptr = std::make_shared<const ConvexSet>(std::move(base));
  auto add_ptr = std::make_shared<const ConvexSet>(std::move(addend));
  return ConvexSet(MinkowskiSum{std::move(base_ptr), std::move(add_ptr)}, n);
}

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> parts) {
  if (parts.size() < 2) {
    throw ValidationError("Intersection", "needs at least two parts");
  }
  const Index n = parts.front().dimension();
  Intersection in;
  for (auto& p : parts) {
    if (p.dimension() != n) {
      throw DimensionMismatchError("Intersection: part dimensions differ");
    }
    in.parts.push_back(std::make_shared<const ConvexSet>(std::move(p)));
  }
  if (in.parts.size() == 2) {
    const Box* bx = box_part(in);
    const Ball* bl = ball_part(in);
    if (bx != nullptr && bl != nullptr && (bx->lower.array() == 0.0).all() &&
        (bl->center.array() == 0.0).all() &&
        (bx->upper.array() >= bl->radius).all()) {
      in.orthant_ball = true;
    }
  }
  return ConvexSet(std::move(in), n);
}

ProjectionResult project(const ConvexSet& set, const Vector& x, double tol) {
  ensure_finite(x, "project.x");
  if (x.size() != set.dimension()) {
    throw DimensionMismatchError("project: point dimension differs from set");
  }
  if (tol <= 0.0) throw ValidationError("project.tol", "must be positive");

  Vector point = std::visit(
      [&](const auto& v) -> Vector {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          return clamp_to_box(v, x);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return project_ball(v, x);
        } else if constexpr (std::is_same_v<T, Polytope>) {
          return project_polytope(v, x);
        } else if constexpr (std::is_same_v<T, Segment>) {
          return project_segment(v, x);
        } else if constexpr (std::is_same_v<T, Translate>) {
          return project(*v.base, x - v.shift, tol).point + v.shift;
        } else if constexpr (std::is_same_v<T, MinkowskiSum>) {
          if (const auto* ball = std::get_if<Ball>(&v.addend->variant())) {
            // base + Ball(c, r) is the r-enlargement of the translated base.
            const Vector q = project(*v.base, x - ball->center, tol).point + ball->center;
            const Vector gap = x - q;
            const double d = gap.norm();
            if (d <= ball->radius) return x;
            return q + (ball->radius / d) * gap;
          }
          return project_minkowski_box(*v.base, *v.addend, x, tol);
        } else {
          return project_intersection(v, x, tol);
        }
      },
      set.variant());

  ProjectionResult out;
  out.distance = (x - point).norm();
  out.point = std::move(point);
  return out;
}

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  ensure_finite(x, "contains.x");
  if (x.size() != set.dimension()) {
    throw DimensionMismatchError("contains: point dimension differs from set");
  }
  if (tol < 0.0) throw ValidationError("contains.tol", "must be nonnegative");

  // Cheap exact pre-checks where membership is decidable without projecting.
  if (const auto* poly = std::get_if<Polytope>(&set.variant())) {
    if (polytope_margin_max(*poly, x) <= 0.0) return true;
  }
  const double inner_tol = std::max(tol, kDefaultTol);
  return project(set, x, inner_tol).distance <= tol;
}

double support_value(const ConvexSet& set, const Vector& direction) {
  ensure_finite(direction, "support_value.direction");
  if (direction.size() != set.dimension()) {
    throw DimensionMismatchError("support_value: direction dimension differs from set");
  }
  if (direction.norm() == 0.0) return 0.0;

  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          double s = 0.0;
          for (Index i = 0; i < direction.size(); ++i) {
            s += direction[i] > 0.0 ? direction[i] * v.upper[i]
                                    : direction[i] * v.lower[i];
          }
          return s;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return v.center.dot(direction) + v.radius * direction.norm();
        } else if constexpr (std::is_same_v<T, Polytope>) {
          const Index n = direction.size();
          const int m = static_cast<int>(v.halfspaces.size());
          Eigen::MatrixXd A(m, n);
          Vector b(m);
          for (int i = 0; i < m; ++i) {
            A.row(i) = v.halfspaces[static_cast<std::size_t>(i)].normal.transpose();
            b[i] = v.halfspaces[static_cast<std::size_t>(i)].offset;
          }
          const LpResult lp = solve_lp_max(direction, A, b);
          if (lp.status == LpStatus::Unbounded) {
            throw UnboundedSupportError("support_value: polytope unbounded in direction");
          }
          if (lp.status == LpStatus::Infeasible) {
            throw InfeasibleSetError("support_value: empty polytope");
          }
          return lp.value;
        } else if constexpr (std::is_same_v<T, Segment>) {
          return std::max(direction.dot(v.a), direction.dot(v.b));
        } else if constexpr (std::is_same_v<T, Translate>) {
          return support_value(*v.base, direction) + direction.dot(v.shift);
        } else if constexpr (std::is_same_v<T, MinkowskiSum>) {
          return support_value(*v.base, direction) + support_value(*v.addend, direction);
        } else {
          // Push a far anchor along the direction and read off the support
          // of the projected point; doubling stops once the value settles.
          const Box bb = bounding_box(set);
          const double scale =
              1.0 + bb.lower.cwiseAbs().maxCoeff() + bb.upper.cwiseAbs().maxCoeff();
          const Vector anchor = project(set, Vector::Zero(direction.size())).point;
          double t = 16.0 * scale / direction.norm();
          double s = direction.dot(project(set, anchor + t * direction).point);
          for (int it = 0; it < 24; ++it) {
            t *= 2.0;
            const double next = direction.dot(project(set, anchor + t * direction).point);
            if (std::abs(next - s) <= 1e-9 * (1.0 + std::abs(next))) return next;
            s = next;
          }
          return s;
        }
      },
      set.variant());
}

ConvexSet::Box bounding_box(const ConvexSet& set) {
  return std::visit(
      [&](const auto& v) -> Box {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          return v;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return Box{v.center.array() - v.radius, v.center.array() + v.radius};
        } else if constexpr (std::is_same_v<T, Polytope>) {
          const Index n = set.dimension();
          Box out{Vector(n), Vector(n)};
          for (Index j = 0; j < n; ++j) {
            Vector c = Vector::Zero(n);
            c[j] = 1.0;
            out.upper[j] = support_value(set, c);
            c[j] = -1.0;
            out.lower[j] = -support_value(set, c);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Segment>) {
          return Box{v.a.cwiseMin(v.b), v.a.cwiseMax(v.b)};
        } else if constexpr (std::is_same_v<T, Translate>) {
          Box base = bounding_box(*v.base);
          return Box{base.lower + v.shift, base.upper + v.shift};
        } else if constexpr (std::is_same_v<T, MinkowskiSum>) {
          Box base = bounding_box(*v.base);
          Box add = bounding_box(*v.addend);
          return Box{base.lower + add.lower, base.upper + add.upper};
        } else {
          Box out = bounding_box(*v.parts.front());
          for (std::size_t k = 1; k < v.parts.size(); ++k) {
            Box pb = bounding_box(*v.parts[k]);
            out.lower = out.lower.cwiseMax(pb.lower);
            out.upper = out.upper.cwiseMin(pb.upper);
          }
          // An outer box of the intersection; clip crossed axes.
          out.upper = out.upper.cwiseMax(out.lower);
          return out;
        }
      },
      set.variant());
}

double norm_upper_bound(const ConvexSet& set) {
  if (const auto* ball = std::get_if<Ball>(&set.variant())) {
    return ball->center.norm() + ball->radius;
  }
  if (const auto* seg = std::get_if<Segment>(&set.variant())) {
    return std::max(seg->a.norm(), seg->b.norm());
  }
  const Box bb = bounding_box(set);
  return bb.lower.cwiseAbs().cwiseMax(bb.upper.cwiseAbs()).norm();
}

std::optional<Vector> as_singleton(const ConvexSet& set) {
  return std::visit(
      [&](const auto& v) -> std::optional<Vector> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          if (v.lower == v.upper) return v.lower;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Ball>) {
          if (v.radius == 0.0) return v.center;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Segment>) {
          if (v.a == v.b) return v.a;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Translate>) {
          auto s = as_singleton(*v.base);
          if (s) return *s + v.shift;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, MinkowskiSum>) {
          auto s = as_singleton(*v.base);
          auto t = as_singleton(*v.addend);
          if (s && t) return *s + *t;
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      set.variant());
}

Vector sample_point(const ConvexSet& set, SampleRng& rng) {
  return std::visit(
      [&](const auto& v) -> Vector {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          Vector p(v.lower.size());
          for (Index i = 0; i < p.size(); ++i) {
            p[i] = rng.uniform(v.lower[i], v.upper[i]);
          }
          return p;
        } else if constexpr (std::is_same_v<T, Ball>) {
          const Index n = v.center.size();
          Vector g(n);
          double nrm = 0.0;
          do {
            for (Index i = 0; i < n; ++i) g[i] = rng.gaussian();
            nrm = g.norm();
          } while (nrm < 1e-12);
          const double u = rng.uniform01();
          const double rad =
              v.radius * std::pow(u, 1.0 / static_cast<double>(n));
          return v.center + (rad / nrm) * g;
        } else if constexpr (std::is_same_v<T, Segment>) {
          return v.a + rng.uniform01() * (v.b - v.a);
        } else if constexpr (std::is_same_v<T, Translate>) {
          return sample_point(*v.base, rng) + v.shift;
        } else if constexpr (std::is_same_v<T, MinkowskiSum>) {
          Vector p = sample_point(*v.base, rng);
          return p + sample_point(*v.addend, rng);
        } else {
          const Box bb = bounding_box(set);
          const ConvexSet box_set = ConvexSet::box(bb.lower, bb.upper);
          Vector draw;
          for (int attempt = 0; attempt < 64; ++attempt) {
            draw = sample_point(box_set, rng);
            if (contains(set, draw, kDefaultTol)) return draw;
          }
          return project(set, draw).point;
        }
      },
      set.variant());
}

ProjectionResult project_dykstra(const std::vector<const ConvexSet*>& parts,
                                 const Vector& x, double tol, int max_sweeps) {
  if (parts.empty()) throw ValidationError("project_dykstra", "no parts");
  Vector z = x;
  std::vector<Vector> corrections(parts.size(), Vector::Zero(x.size()));
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const Vector z_before = z;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Vector w = z + corrections[i];
      const Vector y = project(*parts[i], w, tol).point;
      corrections[i] = w - y;
      z = y;
    }
    if ((z - z_before).norm() <= 0.01 * tol) {
      bool ok = true;
      for (const ConvexSet* p : parts) {
        if (!contains(*p, z, tol)) {
          ok = false;
          break;
        }
      }
      if (ok) return ProjectionResult{z, (x - z).norm()};
    }
  }
  throw NonConvergenceError("Dykstra alternating projection exceeded its sweep budget");
}

}  // namespace qep
