#include "qep/errors.hpp"
#include "qep/lp.hpp"

#include <doctest.h>

using namespace qep;

namespace {

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> data) {
  const int m = static_cast<int>(data.size());
  const int n = static_cast<int>(data.begin()->size());
  Eigen::MatrixXd A(m, n);
  int i = 0;
  for (const auto& row : data) {
    int j = 0;
    for (double v : row) A(i, j++) = v;
    ++i;
  }
  return A;
}

}  // namespace

TEST_CASE("simplex finds the maximizing vertex of a square") {
  const auto A = rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  const Vector b = make_vector({1, 0, 1, 0});
  const LpResult r = solve_lp_max(make_vector({1, -1}), A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.point[0] == doctest::Approx(1.0));
  CHECK(r.point[1] == doctest::Approx(0.0));
}

TEST_CASE("simplex handles negative right-hand sides via phase 1") {
  // x1 >= 1 and x1 <= 2, maximize -x1: optimum at the lower face.
  const auto A = rows({{-1, 0}, {1, 0}, {0, 1}, {0, -1}});
  const Vector b = make_vector({-1, 2, 1, 1});
  const LpResult r = solve_lp_max(make_vector({-1, 0}), A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("simplex reports infeasible systems") {
  const auto A = rows({{1, 0}, {-1, 0}});
  const Vector b = make_vector({0, -1});  // x1 <= 0 and x1 >= 1
  CHECK(solve_lp_max(make_vector({1, 0}), A, b).status == LpStatus::Infeasible);
  CHECK(find_feasible_point(A, b).status == LpStatus::Infeasible);
}

TEST_CASE("simplex reports unbounded directions") {
  const auto A = rows({{-1, 0}, {0, -1}});  // the nonnegative quadrant
  const Vector b = make_vector({0, 0});
  CHECK(solve_lp_max(make_vector({1, 1}), A, b).status == LpStatus::Unbounded);
  // Bounded direction over the same cone.
  const LpResult r = solve_lp_max(make_vector({-1, -1}), A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(0.0));
}

TEST_CASE("simplex survives a degenerate vertex") {
  // Three constraints meet at (1, 0).
  const auto A = rows({{1, 0}, {1, 1}, {1, -1}, {-1, 0}, {0, 1}, {0, -1}});
  const Vector b = make_vector({1, 1, 1, 0, 1, 1});
  const LpResult r = solve_lp_max(make_vector({1, 0}), A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("feasible point satisfies all constraints") {
  const auto A = rows({{-1, -1}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const Vector b = make_vector({-1, 1, 1, 0, 0});  // x1 + x2 >= 1 in the unit box
  const LpResult r = find_feasible_point(A, b);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(((A * r.point - b).array() <= 1e-9).all());
}
