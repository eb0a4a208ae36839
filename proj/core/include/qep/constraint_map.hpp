#pragma once

#include "qep/geometry.hpp"
#include "qep/types.hpp"

#include <functional>

namespace qep {

/// Parametric constraint map x -> Phi(x). Values are validated ConvexSets;
/// the map need not send points of the domain back into the domain.
class ConstraintMap {
 public:
  ConstraintMap(std::function<ConvexSet(const Vector&)> eval_set, ConvexSet domain);

  const ConvexSet& domain() const { return domain_; }

  /// Evaluates Phi(x). The user formula runs first (it may throw
  /// UndefinedAtPointError, e.g. at a norm singularity); the domain check
  /// follows and raises OutsideDomainError.
  ConvexSet operator()(const Vector& x, double domain_tol = 1e-7) const;

 private:
  std::function<ConvexSet(const Vector&)> eval_set_;
  ConvexSet domain_;
};

ConvexSet constraint_eval(const ConstraintMap& map, const Vector& x,
                          double domain_tol = 1e-7);

}  // namespace qep
