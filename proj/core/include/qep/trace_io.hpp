#pragma once

#include "qep/algorithm.hpp"
#include "qep/types.hpp"

#include <string>
#include <vector>

namespace qep {

/// CSV with header iter,x1..xn,z1..zn,gap,residual; one row per outer
/// iteration plus a final row holding the last iterate. Shortest
/// round-trip decimal formatting throughout, so identical runs serialize to
/// identical bytes.
std::string trace_to_csv(const IterateTrace& trace);

/// JSON document with the outcome, final point, certificate fields and the
/// contraction diagnostics of one run.
std::string certificate_to_json(const std::string& problem, const RunResult& result);

/// JSON array of per-start certificate documents, ordered by start index.
std::string certificates_to_json(const std::string& problem,
                                 const std::vector<RunResult>& results);

/// One human line: outcome, final point, iteration count.
std::string run_summary_line(const std::string& problem, const RunResult& result);

/// CSV of points, one row per point, header x1..xn.
std::string points_to_csv(const std::vector<Vector>& points, Index dimension);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qep
