#pragma once

#include "qep/bifunction.hpp"
#include "qep/constraint_map.hpp"
#include "qep/types.hpp"

#include <cstdint>

namespace qep {

/// A nonnegative constant with its provenance: exact when it follows from
/// declared structure, sampled when it was estimated from finite draws.
struct Estimate {
  double value = 0.0;
  bool exact = false;
};

/// The moduli entering the contraction certificate: L for the constraint
/// map, m for strong monotonicity, R for the quadratic variation bound, and
/// the sup-norm modulus h over the sampled images.
struct ProblemConstants {
  Estimate map_lipschitz;       // L
  Estimate strong_monotonicity; // m
  Estimate quadratic_modulus;   // R
  Estimate h_sup;               // h
};

/// Sampled estimation of the constants above. Deterministic for fixed
/// (sample_count, seed); estimates over nested prefixes are monotone
/// (L, R, h nondecreasing; m nonincreasing, as it is an infimum form).
///   L: largest one-sided support gap of Phi between sampled domain points,
///      measured on a fixed direction net of 64*n low-discrepancy unit
///      vectors plus the signed axes, divided by the point distance.
///   m: max(0, -max over image pairs of (f(u,v)+f(v,u)) / |u-v|^2).
///   R: max over image triples of |f(u,v)-f(u,v')| / |v-v'|^2.
///   h: same with a first-power denominator.
ProblemConstants estimate_constants(const Bifunction& f, const ConstraintMap& map,
                                    int sample_count, std::uint64_t seed);

}  // namespace qep
