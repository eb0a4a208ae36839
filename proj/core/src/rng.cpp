#include "qep/rng.hpp"

#include "qep/errors.hpp"

#include <cmath>

namespace qep {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double standard_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}
}  // namespace

double SampleRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  // Guard the log; u1 == 0 occurs with probability 2^-53 per draw.
  while (u1 <= 0.0) u1 = uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return mag * std::cos(2.0 * kPi * u2);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("inverse_normal_cdf", "p must lie strictly in (0,1)");
  }
  // Crude tail-aware initial guess, then Newton; the CDF is smooth and
  // monotone, so this converges in a handful of steps for p in (1e-300, 1).
  const double q = std::min(p, 1.0 - p);
  double x = std::sqrt(-2.0 * std::log(q));
  if (p < 0.5) x = -x;
  for (int it = 0; it < 100; ++it) {
    const double err = standard_normal_cdf(x) - p;
    const double d = standard_normal_pdf(x);
    if (d <= 0.0) break;
    const double step = err / d;
    x -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
  }
  return x;
}

std::vector<Vector> direction_net(Index dimension, std::size_t count) {
  if (dimension < 1) {
    throw ValidationError("direction_net", "dimension must be at least 1");
  }
  std::vector<Vector> net;
  if (dimension == 1) {
    net.push_back(make_vector({1.0}));
    net.push_back(make_vector({-1.0}));
    return net;
  }
  net.reserve(count + 2 * static_cast<std::size_t>(dimension));

  // Additive recurrence with the generalized golden ratio: the unique root
  // g > 1 of g^(n+1) = g + 1 yields alphas 1/g, 1/g^2, ... (Kronecker
  // sequence), a standard low-discrepancy construction.
  double g = 1.5;
  for (int it = 0; it < 64; ++it) {
    g = std::pow(1.0 + g, 1.0 / (static_cast<double>(dimension) + 1.0));
  }
  Vector alpha(dimension);
  double a = 1.0;
  for (Index i = 0; i < dimension; ++i) {
    a /= g;
    alpha[i] = a;
  }

  Vector u = Vector::Constant(dimension, 0.5);
  for (std::size_t k = 0; k < count; ++k) {
    Vector dir(dimension);
    for (Index i = 0; i < dimension; ++i) {
      u[i] += alpha[i];
      u[i] -= std::floor(u[i]);
      // Keep away from the endpoints where the quantile blows up.
      const double p = 0.5 / 4096.0 + u[i] * (1.0 - 1.0 / 4096.0);
      dir[i] = inverse_normal_cdf(p);
    }
    const double nrm = dir.norm();
    if (nrm > 1e-12) net.push_back(dir / nrm);
  }
  for (Index i = 0; i < dimension; ++i) {
    Vector e = Vector::Zero(dimension);
    e[i] = 1.0;
    net.push_back(e);
    net.push_back(-e);
  }
  return net;
}

}  // namespace qep
