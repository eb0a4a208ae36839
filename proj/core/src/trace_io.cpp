#include "qep/trace_io.hpp"

#include "qep/config.hpp"
#include "qep/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qep {

namespace {

using json = nlohmann::ordered_json;

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Converged: return "converged";
    case OutcomeKind::Cycling: return "cycling";
    case OutcomeKind::BudgetExhausted: return "budget_exhausted";
  }
  return "budget_exhausted";
}

json one_certificate(const RunResult& result) {
  json doc;
  doc["outcome"] = outcome_name(result.outcome);
  if (result.cycle_period) doc["cycle_period"] = *result.cycle_period;
  doc["iterations"] = result.trace.zs.size();
  doc["final_x"] = vector_to_json(result.final_point());
  if (result.certificate) {
    const Certificate& c = *result.certificate;
    json cert;
    cert["x"] = vector_to_json(c.x);
    cert["z"] = vector_to_json(c.z);
    cert["ep_residual"] = c.ep_residual;
    cert["projection_gap"] = c.projection_gap;
    cert["eps"] = c.eps;
    cert["in_constraint_set"] = c.in_constraint_set;
    cert["residual_ok"] = c.residual_ok;
    cert["projection_ok"] = c.projection_ok;
    cert["valid"] = c.valid;
    doc["certificate"] = cert;
  }
  if (result.diagnostics) {
    const ContractionReport& r = *result.diagnostics;
    json diag;
    auto estimate = [](const Estimate& e) {
      json j;
      j["value"] = e.value;
      j["exact"] = e.exact;
      return j;
    };
    diag["L"] = estimate(r.constants.map_lipschitz);
    diag["m"] = estimate(r.constants.strong_monotonicity);
    diag["R"] = estimate(r.constants.quadratic_modulus);
    diag["h"] = estimate(r.constants.h_sup);
    diag["q"] = std::isfinite(r.q) ? json(r.q) : json("infinity");
    diag["guaranteed"] = r.guaranteed;
    diag["initial_gap"] = r.initial_gap;
    doc["diagnostics"] = diag;
  }
  return doc;
}

}  // namespace

std::string trace_to_csv(const IterateTrace& trace) {
  if (trace.xs.empty()) throw ValidationError("trace_to_csv", "empty trace");
  const Index n = trace.xs.front().size();
  std::string out = "iter";
  for (Index i = 0; i < n; ++i) out += ",x" + std::to_string(i + 1);
  for (Index i = 0; i < n; ++i) out += ",z" + std::to_string(i + 1);
  out += ",gap,residual\n";

  for (std::size_t row = 0; row < trace.xs.size(); ++row) {
    out += std::to_string(row);
    for (Index i = 0; i < n; ++i) out += "," + format_double(trace.xs[row][i]);
    const bool has_z = row < trace.zs.size();
    for (Index i = 0; i < n; ++i) {
      out += ",";
      if (has_z) out += format_double(trace.zs[row][i]);
    }
    out += ",";
    if (row < trace.gaps.size()) out += format_double(trace.gaps[row]);
    out += ",";
    if (row < trace.residuals.size()) out += format_double(trace.residuals[row]);
    out += "\n";
  }
  return out;
}

std::string certificate_to_json(const std::string& problem, const RunResult& result) {
  json doc = one_certificate(result);
  doc["problem"] = problem;
  return doc.dump(2) + "\n";
}

std::string certificates_to_json(const std::string& problem,
                                 const std::vector<RunResult>& results) {
  json arr = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    json doc = one_certificate(results[i]);
    doc["problem"] = problem;
    doc["start_index"] = i;
    arr.push_back(doc);
  }
  return arr.dump(2) + "\n";
}

std::string run_summary_line(const std::string& problem, const RunResult& result) {
  std::string line = problem + ": ";
  switch (result.outcome) {
    case OutcomeKind::Converged:
      line += "Converged at " + format_vector(result.final_point());
      if (result.certificate) {
        line += result.certificate->valid ? " (certificate valid)"
                                          : " (certificate INVALID)";
      }
      break;
    case OutcomeKind::Cycling:
      line += "Cycling period " + std::to_string(*result.cycle_period);
      break;
    case OutcomeKind::BudgetExhausted:
      line += "Budget exhausted at " + format_vector(result.final_point());
      break;
  }
  line += " after " + std::to_string(result.trace.zs.size()) + " iterations";
  return line;
}

std::string points_to_csv(const std::vector<Vector>& points, Index dimension) {
  std::string out;
  for (Index i = 0; i < dimension; ++i) {
    if (i > 0) out += ",";
    out += "x" + std::to_string(i + 1);
  }
  out += "\n";
  for (const Vector& p : points) {
    for (Index i = 0; i < dimension; ++i) {
      if (i > 0) out += ",";
      out += format_double(p[i]);
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path);
  f << content;
  if (!f) throw Error("write failed: " + path);
}

}  // namespace qep
