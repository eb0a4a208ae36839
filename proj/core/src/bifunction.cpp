#include "qep/bifunction.hpp"

#include "qep/errors.hpp"

#include <cmath>
#include <utility>

namespace qep {

double gt_eval(const SetValuedOperator& op, const Vector& x, const Vector& y) {
  ensure_same_dimension(x, y, "gt_eval");
  if (x == y) return 0.0;
  const ConvexSet values = op.eval_set(x);
  if (values.dimension() != x.size()) {
    throw DimensionMismatchError("gt_eval: operator value dimension differs");
  }
  return support_value(values, y - x);
}

Bifunction Bifunction::vi(std::function<Vector(const Vector&)> field, Index dimension) {
  Bifunction f(Form::Vi, dimension);
  f.field_ = std::move(field);
  return f;
}

Bifunction Bifunction::vi_identity(Index dimension) {
  Bifunction f = vi([](const Vector& x) { return x; }, dimension);
  // f(x,y) + f(y,x) = -|x-y|^2 identically.
  f.strong_m_ = 1.0;
  return f;
}

Bifunction Bifunction::operator_sup(SetValuedOperator op, Index dimension) {
  Bifunction f(Form::OperatorSup, dimension);
  f.op_ = std::move(op);
  return f;
}

Bifunction Bifunction::coordinate_difference(Index coordinate, Index dimension) {
  if (coordinate < 0 || coordinate >= dimension) {
    throw ValidationError("Bifunction.coordinate", "index out of range");
  }
  Bifunction f(Form::Coordinate, dimension);
  f.coordinate_ = coordinate;
  return f;
}

Bifunction Bifunction::custom(std::function<double(const Vector&, const Vector&)> eval,
                              Index dimension) {
  Bifunction f(Form::Custom, dimension);
  f.eval_ = std::move(eval);
  return f;
}

Bifunction& Bifunction::declare_strong_monotonicity(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw ValidationError("Bifunction.strong_monotonicity", "must be finite and nonnegative");
  }
  strong_m_ = m;
  return *this;
}

double Bifunction::operator()(const Vector& x, const Vector& y) const {
  ensure_same_dimension(x, y, "Bifunction");
  if (x.size() != dimension_) {
    throw DimensionMismatchError("Bifunction: argument dimension differs from declared");
  }
  switch (form_) {
    case Form::Vi:
      return field_(x).dot(y - x);
    case Form::OperatorSup:
      return gt_eval(*op_, x, y);
    case Form::Coordinate:
      return y[coordinate_] - x[coordinate_];
    case Form::Custom:
      return eval_(x, y);
  }
  return 0.0;
}

std::optional<Vector> Bifunction::affine_gradient(const Vector& x) const {
  switch (form_) {
    case Form::Vi:
      return field_(x);
    case Form::Coordinate: {
      Vector e = Vector::Zero(dimension_);
      e[coordinate_] = 1.0;
      return e;
    }
    case Form::OperatorSup:
      return as_singleton(op_->eval_set(x));
    case Form::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> Bifunction::local_h(const Vector& x) const {
  switch (form_) {
    case Form::Vi:
      return field_(x).norm();
    case Form::Coordinate:
      return 1.0;
    case Form::OperatorSup:
      return norm_upper_bound(op_->eval_set(x));
    case Form::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

double bifunction_eval(const Bifunction& f, const Vector& x, const Vector& y) {
  return f(x, y);
}

void check_diagonal_zero(const Bifunction& f, std::span<const Vector> samples,
                         double tol) {
  for (const Vector& u : samples) {
    const double v = f(u, u);
    if (std::abs(v) > tol) {
      throw ValidationError("Bifunction.diagonal",
                            "f(x,x) deviates from zero by " + std::to_string(v));
    }
  }
}

}  // namespace qep
