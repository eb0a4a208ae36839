#pragma once

#include "qep/geometry.hpp"
#include "qep/types.hpp"

#include <functional>
#include <optional>
#include <span>

namespace qep {

/// Set-valued operator T: its values are bounded convex sets; singletons are
/// expressed as zero-radius balls or collapsed boxes.
struct SetValuedOperator {
  std::function<ConvexSet(const Vector&)> eval_set;
};

/// sup over T(x) of <x*, y - x>, the bifunction attached to a set-valued
/// variational inequality. Exact per supported set variant; zero on the
/// diagonal by construction.
double gt_eval(const SetValuedOperator& op, const Vector& x, const Vector& y);

/// Evaluable bifunction f(x, y) with optional declared structure. The VI
/// form is <F(x), y-x>; OperatorSup delegates to gt_eval; the coordinate
/// form is y[k] - x[k]; Custom wraps an arbitrary evaluation.
class Bifunction {
 public:
  static Bifunction vi(std::function<Vector(const Vector&)> field, Index dimension);
  /// VI form with F = identity; strong monotonicity modulus 1 is exact.
  static Bifunction vi_identity(Index dimension);
  static Bifunction operator_sup(SetValuedOperator op, Index dimension);
  /// 0-based coordinate index.
  static Bifunction coordinate_difference(Index coordinate, Index dimension);
  static Bifunction custom(std::function<double(const Vector&, const Vector&)> eval,
                           Index dimension);

  double operator()(const Vector& x, const Vector& y) const;

  Index dimension() const { return dimension_; }
  bool is_vi() const { return form_ == Form::Vi; }
  bool is_coordinate() const { return form_ == Form::Coordinate; }
  bool is_operator_sup() const { return form_ == Form::OperatorSup; }

  /// F(x) for the VI form, the coordinate axis for the coordinate form, the
  /// singleton operator value when T(x) collapses; nullopt otherwise. When
  /// set, f(x, .) = <gradient, . - x> exactly.
  std::optional<Vector> affine_gradient(const Vector& x) const;

  /// Modulus h(x) with |f(x,y) - f(x,z)| <= h(x) |y - z| where one is
  /// available: the gradient norm for affine forms, the support-based
  /// sup-norm of T(x) for the operator form; nullopt for Custom.
  std::optional<double> local_h(const Vector& x) const;

  /// Declared-exact strong monotonicity modulus m with
  /// f(x,y) + f(y,x) <= -m |x-y|^2, when known by construction.
  std::optional<double> declared_strong_monotonicity() const { return strong_m_; }
  Bifunction& declare_strong_monotonicity(double m);

 private:
  enum class Form { Vi, OperatorSup, Coordinate, Custom };

  Bifunction(Form f, Index dim) : form_(f), dimension_(dim) {}

  Form form_;
  Index dimension_;
  std::function<Vector(const Vector&)> field_;
  std::optional<SetValuedOperator> op_;
  Index coordinate_ = 0;
  std::function<double(const Vector&, const Vector&)> eval_;
  std::optional<double> strong_m_;
};

double bifunction_eval(const Bifunction& f, const Vector& x, const Vector& y);

/// Registration check: |f(u, u)| <= tol on every sample; throws
/// ValidationError on the first violation.
void check_diagonal_zero(const Bifunction& f, std::span<const Vector> samples,
                         double tol = 1e-9);

}  // namespace qep
