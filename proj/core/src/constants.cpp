#include "qep/constants.hpp"

#include "qep/errors.hpp"
#include "qep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace qep {

namespace {

constexpr double kPairEps = 1e-12;

// The net is deterministic per (dimension, count); memoized because the
// quantile mapping dominates the cost of repeated estimations.
std::shared_ptr<const std::vector<Vector>> cached_net(Index n, std::size_t count) {
  static std::mutex mu;
  static std::map<std::pair<Index, std::size_t>, std::shared_ptr<const std::vector<Vector>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, count}];
  if (!slot) {
    slot = std::make_shared<const std::vector<Vector>>(direction_net(n, count));
  }
  return slot;
}

}  // namespace

ProblemConstants estimate_constants(const Bifunction& f, const ConstraintMap& map,
                                    int sample_count, std::uint64_t seed) {
  if (sample_count < 2) {
    throw ValidationError("estimate_constants.sample_count", "must be at least 2");
  }
  const ConvexSet& domain = map.domain();
  const Index n = domain.dimension();
  SampleRng rng(seed);

  // Interleave the domain draw and the image draw so that prefixes of the
  // stream are identical across sample counts (nested estimates).
  std::vector<Vector> xs;
  std::vector<Vector> us;
  xs.reserve(static_cast<std::size_t>(sample_count));
  us.reserve(static_cast<std::size_t>(sample_count));
  for (int i = 0; i < sample_count; ++i) {
    Vector x = sample_point(domain, rng);
    ConvexSet phi = map(x, 1e-6);
    us.push_back(sample_point(phi, rng));
    xs.push_back(std::move(x));
  }

  bool distinct = false;
  for (std::size_t i = 0; i + 1 < xs.size() && !distinct; ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if ((xs[i] - xs[j]).norm() >= kPairEps) {
        distinct = true;
        break;
      }
    }
  }
  if (!distinct) {
    throw DegenerateSamplesError("estimate_constants: all sampled pairs coincide");
  }

  const auto net = cached_net(n, 64 * static_cast<std::size_t>(n));

  // Support table: one row per sample, one column per net direction.
  const std::size_t nd = net->size();
  std::vector<std::vector<double>> sup(xs.size(), std::vector<double>(nd, 0.0));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const ConvexSet phi = map(xs[i], 1e-6);
    for (std::size_t d = 0; d < nd; ++d) {
      sup[i][d] = support_value(phi, (*net)[d]);
    }
  }

  double L = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      const double dist = (xs[i] - xs[j]).norm();
      if (dist < kPairEps) continue;
      double gap = 0.0;  // one-sided: how far Phi(x_i) pokes out of Phi(x_j)
      for (std::size_t d = 0; d < nd; ++d) {
        gap = std::max(gap, sup[i][d] - sup[j][d]);
      }
      L = std::max(L, gap / dist);
    }
  }

  double worst_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    for (std::size_t j = i + 1; j < us.size(); ++j) {
      const double dist2 = (us[i] - us[j]).squaredNorm();
      if (dist2 < kPairEps * kPairEps) continue;
      worst_sum = std::max(worst_sum, (f(us[i], us[j]) + f(us[j], us[i])) / dist2);
    }
  }
  const double m_sampled =
      std::isfinite(worst_sum) ? std::max(0.0, -worst_sum) : 0.0;

  double R = 0.0;
  double h = 0.0;
  for (std::size_t j = 0; j + 1 < us.size(); ++j) {
    for (std::size_t k = j + 1; k < us.size(); ++k) {
      const double dist = (us[j] - us[k]).norm();
      if (dist < 1e-9) continue;
      for (std::size_t i = 0; i < us.size(); ++i) {
        const double num = std::abs(f(us[i], us[j]) - f(us[i], us[k]));
        R = std::max(R, num / (dist * dist));
        h = std::max(h, num / dist);
      }
    }
  }

  ProblemConstants out;
  out.map_lipschitz = {L, false};
  if (auto declared = f.declared_strong_monotonicity()) {
    out.strong_monotonicity = {*declared, true};
  } else {
    out.strong_monotonicity = {m_sampled, false};
  }
  out.quadratic_modulus = {R, false};
  out.h_sup = {h, false};
  return out;
}

}  // namespace qep
