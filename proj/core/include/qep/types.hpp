#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace qep {

/// Ambient point type: a dense real coordinate vector with Euclidean norm.
using Vector = Eigen::VectorXd;

using Index = Eigen::Index;

/// Geometry-wide default distance tolerance.
inline constexpr double kDefaultTol = 1e-9;

Vector make_vector(std::initializer_list<double> coords);

/// Throws ValidationError if v contains NaN or infinity, or is empty.
void ensure_finite(const Vector& v, std::string_view what);
void ensure_finite(double x, std::string_view what);

/// Throws DimensionMismatchError unless both vectors share dimension n > 0.
void ensure_same_dimension(const Vector& a, const Vector& b, std::string_view what);

}  // namespace qep
