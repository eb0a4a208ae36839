#pragma once

#include "qep/rng.hpp"
#include "qep/types.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace qep {

/// One closed halfspace <normal, x> <= offset.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

/// Tagged description of a closed, convex, bounded subset of R^n.
///
/// Every variant is closed and convex by construction; the factory functions
/// validate the variant-specific invariants (box ordering, polytope
/// nonemptiness and boundedness, addend class of a Minkowski sum) and throw
/// on violation. Values are immutable after construction and safe to share
/// across threads.
class ConvexSet {
 public:
  struct Box {
    Vector lower;
    Vector upper;
  };
  struct Ball {
    Vector center;
    double radius = 0.0;
  };
  struct Polytope {
    std::vector<Halfspace> halfspaces;  // rows normalized to unit normals
  };
  struct Segment {
    Vector a;
    Vector b;
  };
  struct Translate {
    std::shared_ptr<const ConvexSet> base;
    Vector shift;
  };
  struct MinkowskiSum {
    std::shared_ptr<const ConvexSet> base;
    std::shared_ptr<const ConvexSet> addend;  // Box or Ball
  };
  struct Intersection {
    std::vector<std::shared_ptr<const ConvexSet>> parts;
    bool orthant_ball = false;  // parts are {Box(0,u), Ball(0,r)} with u >= r
  };

  using Variant =
      std::variant<Box, Ball, Polytope, Segment, Translate, MinkowskiSum, Intersection>;

  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet ball(Vector center, double radius);
  /// Validates nonemptiness (phase-1 solve) and boundedness (support values
  /// along every signed axis must be finite).
  static ConvexSet polytope(std::vector<Halfspace> halfspaces);
  static ConvexSet segment(Vector a, Vector b);
  static ConvexSet translate(ConvexSet base, Vector shift);
  static ConvexSet minkowski_sum(ConvexSet base, ConvexSet addend);
  static ConvexSet intersection(std::vector<ConvexSet> parts);

  Index dimension() const { return dimension_; }
  const Variant& variant() const { return *value_; }

 private:
  ConvexSet(Variant v, Index dim);

  std::shared_ptr<const Variant> value_;
  Index dimension_ = 0;
};

struct ProjectionResult {
  Vector point;
  double distance = 0.0;
};

/// Nearest point of the set in the Euclidean norm. Exact for boxes, balls,
/// segments and translates; polytopes use a dual active-set solve; Minkowski
/// sums with a box addend and general intersections run an alternating scheme
/// that stops once the iterate is within tol of optimal (NonConvergenceError
/// past the internal budget).
ProjectionResult project(const ConvexSet& set, const Vector& x, double tol = kDefaultTol);

/// True iff the Euclidean distance from x to the set is <= tol.
bool contains(const ConvexSet& set, const Vector& x, double tol = kDefaultTol);

/// sup over the set of <direction, z>. Exact per variant (componentwise for
/// boxes, center/radius formula for balls, endpoint max for segments, an LP
/// solve for polytopes, the sum rule for translates and Minkowski sums).
/// Intersections are evaluated by a projection-based ascent and are accurate
/// to roughly 1e-6 relative; the direction 0 always yields exactly 0.
double support_value(const ConvexSet& set, const Vector& direction);

/// Axis-aligned bounding box: exact for all variants except Intersection,
/// where it is the (outer) intersection of the parts' boxes.
ConvexSet::Box bounding_box(const ConvexSet& set);

/// Upper bound on sup {|z| : z in set}, from support values along the axes.
double norm_upper_bound(const ConvexSet& set);

/// The single point of a degenerate set (zero-radius ball, collapsed box or
/// segment, their translates/sums), or nullopt.
std::optional<Vector> as_singleton(const ConvexSet& set);

/// Deterministic point sample. Uniform for boxes, balls and segments;
/// rejection from the bounding box for polytopes and intersections, falling
/// back to projecting the rejected draw after 64 misses.
Vector sample_point(const ConvexSet& set, SampleRng& rng);

/// Dykstra's alternating projection onto an intersection of convex sets,
/// each projected exactly. Exposed for cross-checking the direct paths.
ProjectionResult project_dykstra(const std::vector<const ConvexSet*>& parts,
                                 const Vector& x, double tol, int max_sweeps);

}  // namespace qep
