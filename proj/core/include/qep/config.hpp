#pragma once

#include "qep/ep_solver.hpp"
#include "qep/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace qep {

struct OuterOverrides {
  std::optional<double> stop_tol;
  std::optional<int> max_iterations;
  std::optional<int> cycle_window;
  std::optional<double> cycle_tol;
  std::optional<double> certify_eps;
};

struct InnerOverrides {
  std::optional<double> epsilon;
  std::optional<int> max_iterations;
  std::optional<double> step_size;
  std::optional<double> grid_resolution;
  std::optional<InnerMethod> method;
};

struct OutputSpec {
  std::optional<std::string> trace_path;
  std::optional<std::string> certificate_path;
  std::optional<std::string> summary_path;
};

/// A validated run request: instance name, start point(s), overrides and
/// output paths. Exactly one of x0 / multistart may be present.
struct RunSpec {
  std::string problem;
  std::optional<Vector> x0;
  std::optional<int> multistart;
  std::uint64_t seed = 0;
  OuterOverrides outer;
  InnerOverrides inner;
  OutputSpec output;
};

bool operator==(const RunSpec& a, const RunSpec& b);

/// Parses the key-value config format ([problem]/[start]/[outer]/[inner]/
/// [output] sections, decimal literals, bracketed comma vectors, '#'
/// comments). Unknown sections or keys are hard ValidationErrors; malformed
/// syntax raises ParseError with the line number.
RunSpec parse_config(const std::string& text);

/// Canonical text for a spec; parse_config(render_config(s)) == s.
std::string render_config(const RunSpec& spec);

/// Shortest round-trip decimal formatting used across every exported file.
std::string format_double(double v);
std::string format_vector(const Vector& v);
Vector parse_vector_literal(const std::string& text);

}  // namespace qep
