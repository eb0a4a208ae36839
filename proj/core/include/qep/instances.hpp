#pragma once

#include "qep/algorithm.hpp"
#include "qep/bifunction.hpp"
#include "qep/constraint_map.hpp"
#include "qep/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qep {

/// Ground-truth behavior of a fixture from a given start.
struct ExpectedBehavior {
  enum class Kind { ConvergedTo, Cycling };
  Vector x0;
  Kind kind = Kind::ConvergedTo;
  Vector target;          // ConvergedTo
  std::size_t period = 0; // Cycling
  int max_steps = 0;      // 0 = default budget
};

/// A problem bundle: the projection target C, the constraint map, the
/// bifunction (possibly rebound per outer point), an optional closed-form
/// solution map and the known ground truth.
struct ProblemInstance {
  std::string name;
  ConvexSet C;
  ConstraintMap map;
  Bifunction f;
  BifunctionFamily bifunction_family;  // null when f is position-independent
  ClosedFormMap closed_form;           // null when no closed form exists
  std::vector<Vector> known_projected_solutions;
  std::vector<ExpectedBehavior> known_behaviors;

  Bifunction bifunction_at(const Vector& x) const {
    return bifunction_family ? bifunction_family(x) : f;
  }
  BifunctionFamily family() const;

  RunResult run(const Vector& x0, const OuterConfig& cfg,
                bool use_closed_form = true) const;
};

/// Segment C on the first axis, constraint segments hovering above it with a
/// flipped abscissa, second-coordinate-difference bifunction; the procedure
/// 2-cycles from every nonzero start and the only projected solution is the
/// origin.
ProblemInstance make_counterexample();

/// The alternative reading of the counterexample bifunction with squared
/// second coordinates; identical inner solutions on every constraint value.
Bifunction counterexample_bifunction_squared();

/// Unit-square corner region with the moving-square constraint map
/// Q + (2/|x|) x and the VI-identity bifunction.
ProblemInstance make_moving_square();

/// The piecewise composite map P_C(S(x)) of the moving-square instance
/// (branch thresholds x2 = x1/sqrt(3) and x2 = sqrt(3) x1, boundaries in the
/// middle branch).
Vector moving_square_composite(const Vector& x);

/// Closed k-step formula for starts in the lower branch.
Vector moving_square_kstep(const Vector& x0, int k);

/// Truncation of the sequence-space example to R^n (2 <= n <= 100):
/// C = nonnegative orthant within the unit ball, constraint map
/// (3-|x|) xt + boxes, VI-identity bifunction, xt = (1, 1/2, ..., 1/n).
ProblemInstance make_l2_truncated(int n);

/// Reference vector (1, 1/2, ..., 1/n).
Vector l2_reference_vector(int n);

/// Synthetic fixture whose solution map is the affine contraction
/// S(x) = q x + c0 with c0 = (1+q) e1 outside C = [-1,1]^n; the unique fixed
/// point of the composite map is e1, on the boundary of C.
ProblemInstance make_contraction_fixture(double q, int dimension);

/// Instances addressable by name: counterexample, moving_square,
/// l2_truncated:<n>, contraction:<q>[:<dim>].
ProblemInstance instance_by_name(const std::string& name);
std::vector<std::string> instance_names();

}  // namespace qep
