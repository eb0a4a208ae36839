#pragma once

#include "qep/config.hpp"

#include <ostream>
#include <string>

namespace qep {

/// Executes the runs described by the spec, writes trace/certificate/summary
/// files when paths are set and prints one summary line per start. Exit
/// status: 0 converged, 2 cycling, 3 budget exhausted (worst across starts);
/// errors raise and the CLI maps them to 1.
int run_command(const RunSpec& spec, std::ostream& out, bool parallel = false);

/// Sweeps the composite map over a lattice of C and writes the approximate
/// projected-solution set as CSV (to the trace path, else to `out`).
int oracle_command(const RunSpec& spec, double grid_resolution, std::ostream& out);

std::string list_instances_text();

}  // namespace qep
