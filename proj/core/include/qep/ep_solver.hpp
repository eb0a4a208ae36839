#pragma once

#include "qep/bifunction.hpp"
#include "qep/geometry.hpp"
#include "qep/types.hpp"

#include <functional>
#include <optional>

namespace qep {

enum class InnerMethod { Auto, ClosedForm, Extragradient, GridOracle };

struct InnerConfig {
  double epsilon = 1e-7;           // residual acceptance threshold
  int max_iterations = 2000;       // extragradient budget
  double step_size = 0.5;          // extragradient step cap
  double grid_resolution = 0.01;   // oracle lattice pitch; <= 0 disables the oracle
  InnerMethod method = InnerMethod::Auto;
};

struct EPSolution {
  Vector point;
  double residual = 0.0;  // inf over K of f(point, .); <= 0 measures violation
  InnerMethod method = InnerMethod::Auto;
  int inner_iterations = 0;
};

/// inf over y in K of f(z, y). Exact through support values whenever f(z, .)
/// is affine (VI and coordinate forms, operator form with singleton values);
/// otherwise the lattice minimum at cfg.grid_resolution, whose error is
/// bounded by grid_resolution times the local Lipschitz modulus of f(z, .).
double ep_residual(const Bifunction& f, const ConvexSet& K, const Vector& z,
                   const InnerConfig& cfg);

/// Korpelevich extragradient for the variational inequality with field F on
/// K, started from the projection of the origin. Stops once the step falls
/// below epsilon/10 and the residual clears -epsilon.
EPSolution solve_vi_extragradient(const std::function<Vector(const Vector&)>& field,
                                  const ConvexSet& K, const InnerConfig& cfg);

/// Brute-force equilibrium search over the lattice of K's bounding box
/// (dimension <= 4): returns the lattice point maximizing the lattice inf of
/// f(z, .). Ties break toward the lexicographically smallest point, so a
/// parallel reduction would be order-independent.
EPSolution grid_ep_oracle(const Bifunction& f, const ConvexSet& K,
                          double grid_resolution);

/// Step (2) solver: closed form if a value is supplied, else extragradient
/// for VI-form bifunctions, else the grid oracle; cfg.method overrides the
/// order. The accepted point lies in K with residual >= -cfg.epsilon.
EPSolution solve_ep(const Bifunction& f, const ConvexSet& K, const InnerConfig& cfg,
                    const std::optional<Vector>& closed_form_value = std::nullopt);

}  // namespace qep
