#include "qep/constraint_map.hpp"

#include "qep/errors.hpp"

#include <utility>

namespace qep {

ConstraintMap::ConstraintMap(std::function<ConvexSet(const Vector&)> eval_set,
                             ConvexSet domain)
    : eval_set_(std::move(eval_set)), domain_(std::move(domain)) {}

ConvexSet ConstraintMap::operator()(const Vector& x, double domain_tol) const {
  ensure_finite(x, "ConstraintMap.x");
  if (x.size() != domain_.dimension()) {
    throw DimensionMismatchError("ConstraintMap: point dimension differs from domain");
  }
  ConvexSet value = eval_set_(x);
  if (!contains(domain_, x, domain_tol)) {
    throw OutsideDomainError("constraint map evaluated outside its domain");
  }
  return value;
}

ConvexSet constraint_eval(const ConstraintMap& map, const Vector& x, double domain_tol) {
  return map(x, domain_tol);
}

}  // namespace qep
