#include "qep/instances.hpp"

#include "qep/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qep {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Vector vec2(double a, double b) { return make_vector({a, b}); }

}  // namespace

BifunctionFamily ProblemInstance::family() const {
  if (bifunction_family) return bifunction_family;
  Bifunction fixed = f;
  return [fixed](const Vector&) { return fixed; };
}

RunResult ProblemInstance::run(const Vector& x0, const OuterConfig& cfg,
                               bool use_closed_form) const {
  return run_algorithm1(family(), map, C, x0, cfg,
                        use_closed_form ? closed_form : ClosedFormMap{});
}

ProblemInstance make_counterexample() {
  ConvexSet C = ConvexSet::segment(vec2(-1.0, 0.0), vec2(1.0, 0.0));
  ConstraintMap map(
      [](const Vector& x) {
        return ConvexSet::segment(vec2(-x[0], 1.0), vec2(-x[0], 2.0));
      },
      C);
  Bifunction f = Bifunction::coordinate_difference(1, 2);

  ProblemInstance inst{
      "counterexample",
      std::move(C),
      std::move(map),
      std::move(f),
      nullptr,
      [](const Vector& x) { return vec2(-x[0], 1.0); },
      {vec2(0.0, 0.0)},
      {},
  };
  inst.known_behaviors.push_back(
      {vec2(0.5, 0.0), ExpectedBehavior::Kind::Cycling, Vector(), 2, 0});
  inst.known_behaviors.push_back(
      {vec2(0.0, 0.0), ExpectedBehavior::Kind::ConvergedTo, vec2(0.0, 0.0), 0, 1});
  return inst;
}

Bifunction counterexample_bifunction_squared() {
  return Bifunction::custom(
      [](const Vector& x, const Vector& y) { return y[1] * y[1] - x[1] * x[1]; }, 2);
}

ProblemInstance make_moving_square() {
  std::vector<Halfspace> hs;
  hs.push_back({vec2(-1.0, 0.0), 0.0});   // x1 >= 0
  hs.push_back({vec2(1.0, 0.0), 1.0});    // x1 <= 1
  hs.push_back({vec2(0.0, -1.0), 0.0});   // x2 >= 0
  hs.push_back({vec2(0.0, 1.0), 1.0});    // x2 <= 1
  hs.push_back({vec2(-1.0, -1.0), -1.0}); // x1 + x2 >= 1
  ConvexSet C = ConvexSet::polytope(std::move(hs));

  ConvexSet unit_square = ConvexSet::box(vec2(0.0, 0.0), vec2(1.0, 1.0));
  ConstraintMap map(
      [unit_square](const Vector& x) {
        const double nrm = x.norm();
        if (nrm == 0.0) {
          throw UndefinedAtPointError("moving-square map undefined at the origin");
        }
        return ConvexSet::translate(unit_square, (2.0 / nrm) * x);
      },
      C);

  ProblemInstance inst{
      "moving_square",
      std::move(C),
      std::move(map),
      Bifunction::vi_identity(2),
      nullptr,
      [](const Vector& x) {
        const double nrm = x.norm();
        if (nrm == 0.0) {
          throw UndefinedAtPointError("moving-square map undefined at the origin");
        }
        return Vector((2.0 / nrm) * x);
      },
      {vec2(1.0, 0.0), vec2(1.0, 1.0), vec2(0.0, 1.0)},
      {},
  };
  inst.known_behaviors.push_back(
      {vec2(1.0, 0.0), ExpectedBehavior::Kind::ConvergedTo, vec2(1.0, 0.0), 0, 1});
  inst.known_behaviors.push_back(
      {vec2(1.0, 1.0), ExpectedBehavior::Kind::ConvergedTo, vec2(1.0, 1.0), 0, 1});
  inst.known_behaviors.push_back(
      {vec2(0.0, 1.0), ExpectedBehavior::Kind::ConvergedTo, vec2(0.0, 1.0), 0, 1});
  inst.known_behaviors.push_back(
      {vec2(1.0, 0.2), ExpectedBehavior::Kind::ConvergedTo, vec2(1.0, 1.0), 0, 8});
  return inst;
}

Vector moving_square_composite(const Vector& x) {
  if (x.size() != 2) throw DimensionMismatchError("moving_square_composite: needs R^2");
  const double nrm = x.norm();
  if (nrm == 0.0) {
    throw UndefinedAtPointError("moving-square composite undefined at the origin");
  }
  // Boundaries belong to the middle branch.
  if (x[1] < x[0] / kSqrt3) return vec2(1.0, 2.0 * x[1] / nrm);
  if (x[1] <= kSqrt3 * x[0]) return vec2(1.0, 1.0);
  return vec2(2.0 * x[0] / nrm, 1.0);
}

Vector moving_square_kstep(const Vector& x0, int k) {
  if (x0.size() != 2) throw DimensionMismatchError("moving_square_kstep: needs R^2");
  if (k < 1) throw ValidationError("moving_square_kstep.k", "must be at least 1");
  const double pow2 = std::pow(2.0, k);
  const double pow4 = std::pow(4.0, k);
  const double denom =
      std::sqrt(x0[0] * x0[0] + (pow4 - 1.0) / 3.0 * x0[1] * x0[1]);
  return vec2(1.0, pow2 * x0[1] / denom);
}

Vector l2_reference_vector(int n) {
  Vector xt(n);
  for (int k = 0; k < n; ++k) xt[k] = 1.0 / static_cast<double>(k + 1);
  return xt;
}

ProblemInstance make_l2_truncated(int n) {
  if (n < 2 || n > 100) {
    throw ValidationError("make_l2_truncated.n", "supported range is [2, 100]");
  }
  const Vector xt = l2_reference_vector(n);
  ConvexSet C = ConvexSet::intersection(
      {ConvexSet::box(Vector::Zero(n), Vector::Ones(n)),
       ConvexSet::ball(Vector::Zero(n), 1.0)});

  ConstraintMap map(
      [xt, n](const Vector& x) {
        const double nrm = x.norm();
        ConvexSet cell =
            ConvexSet::box(Vector::Zero(n), Vector((1.0 + nrm) * xt));
        return ConvexSet::translate(std::move(cell), (3.0 - nrm) * xt);
      },
      C);

  Vector solution = xt / xt.norm();
  ProblemInstance inst{
      "l2_truncated:" + std::to_string(n),
      std::move(C),
      std::move(map),
      Bifunction::vi_identity(n),
      nullptr,
      [xt](const Vector& x) { return Vector((3.0 - x.norm()) * xt); },
      {solution},
      {},
  };
  inst.known_behaviors.push_back(
      {solution, ExpectedBehavior::Kind::ConvergedTo, solution, 0, 2});
  return inst;
}

ProblemInstance make_contraction_fixture(double q, int dimension) {
  if (!(q > 0.0 && q < 1.0)) {
    throw InvalidModulusError("make_contraction_fixture: q must lie in (0, 1)");
  }
  if (dimension < 1) {
    throw ValidationError("make_contraction_fixture.dimension", "must be at least 1");
  }
  const Index n = dimension;
  Vector c0 = Vector::Zero(n);
  c0[0] = 1.0 + q;  // outside C; the composite map then fixes e1 on the boundary

  ConvexSet C = ConvexSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0));
  auto center_of = [q, c0](const Vector& x) { return Vector(q * x + c0); };

  ConstraintMap map(
      [center_of](const Vector& x) { return ConvexSet::ball(center_of(x), 0.1); }, C);

  // The inner field is rebound per outer point so that the equilibrium on
  // Phi(x) sits exactly at the ball's center q x + c0.
  BifunctionFamily family = [center_of, n](const Vector& x) {
    const Vector a = center_of(x);
    Bifunction f = Bifunction::vi([a](const Vector& z) { return Vector(z - a); }, n);
    f.declare_strong_monotonicity(1.0);
    return f;
  };

  Vector fixed_point = Vector::Zero(n);
  fixed_point[0] = 1.0;

  ProblemInstance inst{
      "contraction:" + std::to_string(q),
      std::move(C),
      std::move(map),
      family(fixed_point),
      family,
      center_of,
      {fixed_point},
      {},
  };
  inst.known_behaviors.push_back(
      {fixed_point, ExpectedBehavior::Kind::ConvergedTo, fixed_point, 0, 1});
  return inst;
}

ProblemInstance instance_by_name(const std::string& name) {
  if (name == "counterexample") return make_counterexample();
  if (name == "moving_square") return make_moving_square();
  const auto parse_tail = [&](const std::string& prefix) -> std::optional<std::string> {
    if (name.rfind(prefix, 0) == 0) return name.substr(prefix.size());
    return std::nullopt;
  };
  if (auto tail = parse_tail("l2_truncated:")) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(*tail, &used);
      if (used != tail->size()) throw std::invalid_argument("trailing characters");
      return make_l2_truncated(n);
    } catch (const std::logic_error&) {
      throw ValidationError("instance", "bad l2_truncated parameter: " + *tail);
    }
  }
  if (auto tail = parse_tail("contraction:")) {
    try {
      std::size_t used = 0;
      const double q = std::stod(*tail, &used);
      int dim = 2;
      if (used != tail->size()) {
        if ((*tail)[used] != ':') throw std::invalid_argument("trailing characters");
        std::size_t used2 = 0;
        const std::string rest = tail->substr(used + 1);
        dim = std::stoi(rest, &used2);
        if (used2 != rest.size()) throw std::invalid_argument("trailing characters");
      }
      return make_contraction_fixture(q, dim);
    } catch (const std::logic_error&) {
      throw ValidationError("instance", "bad contraction parameter: " + *tail);
    }
  }
  throw ValidationError("instance", "unknown instance name: " + name);
}

std::vector<std::string> instance_names() {
  return {"counterexample", "moving_square", "l2_truncated:<n>", "contraction:<q>[:<dim>]"};
}

}  // namespace qep
