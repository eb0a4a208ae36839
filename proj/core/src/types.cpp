#include "qep/types.hpp"

#include "qep/errors.hpp"

#include <cmath>
#include <string>

namespace qep {

Vector make_vector(std::initializer_list<double> coords) {
  Vector v(static_cast<Index>(coords.size()));
  Index i = 0;
  for (double c : coords) v[i++] = c;
  return v;
}

void ensure_finite(const Vector& v, std::string_view what) {
  if (v.size() == 0) {
    throw ValidationError(std::string(what), "dimension must be at least 1");
  }
  if (!v.allFinite()) {
    throw ValidationError(std::string(what), "entries must be finite");
  }
}

void ensure_finite(double x, std::string_view what) {
  if (!std::isfinite(x)) {
    throw ValidationError(std::string(what), "value must be finite");
  }
}

void ensure_same_dimension(const Vector& a, const Vector& b, std::string_view what) {
  if (a.size() == 0 || a.size() != b.size()) {
    throw DimensionMismatchError(std::string(what) + ": dimensions " +
                                 std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
}

}  // namespace qep
