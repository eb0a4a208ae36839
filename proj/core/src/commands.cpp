#include "qep/commands.hpp"

#include "qep/errors.hpp"
#include "qep/instances.hpp"
#include "qep/rng.hpp"
#include "qep/trace_io.hpp"

#include <future>
#include <vector>

namespace qep {

namespace {

OuterConfig outer_config_from(const RunSpec& spec) {
  OuterConfig cfg;
  cfg.constants_samples = 32;  // certificates report q and the guarantee flag
  if (spec.outer.stop_tol) cfg.stop_tol = *spec.outer.stop_tol;
  if (spec.outer.max_iterations) cfg.max_outer_iterations = *spec.outer.max_iterations;
  if (spec.outer.cycle_window) cfg.cycle_window = *spec.outer.cycle_window;
  if (spec.outer.cycle_tol) cfg.cycle_tol = *spec.outer.cycle_tol;
  if (spec.outer.certify_eps) cfg.certify_eps = *spec.outer.certify_eps;
  if (spec.inner.epsilon) cfg.inner.epsilon = *spec.inner.epsilon;
  if (spec.inner.max_iterations) cfg.inner.max_iterations = *spec.inner.max_iterations;
  if (spec.inner.step_size) cfg.inner.step_size = *spec.inner.step_size;
  if (spec.inner.grid_resolution) cfg.inner.grid_resolution = *spec.inner.grid_resolution;
  if (spec.inner.method) cfg.inner.method = *spec.inner.method;
  return cfg;
}

std::vector<Vector> resolve_starts(const RunSpec& spec, const ProblemInstance& inst) {
  std::vector<Vector> starts;
  if (spec.x0) {
    if (spec.x0->size() != inst.C.dimension()) {
      throw ValidationError("start.x0", "dimension differs from the instance");
    }
    starts.push_back(*spec.x0);
  } else if (spec.multistart) {
    SampleRng rng(spec.seed);
    for (int i = 0; i < *spec.multistart; ++i) {
      starts.push_back(sample_point(inst.C, rng));
    }
  } else {
    throw ValidationError("start", "either x0 or multistart is required");
  }
  return starts;
}

int exit_code_for(const std::vector<RunResult>& results) {
  int code = 0;
  for (const RunResult& r : results) {
    if (r.outcome == OutcomeKind::BudgetExhausted) code = std::max(code, 3);
    if (r.outcome == OutcomeKind::Cycling) code = std::max(code, 2);
  }
  return code;
}

}  // namespace

int run_command(const RunSpec& spec, std::ostream& out, bool parallel) {
  const ProblemInstance inst = instance_by_name(spec.problem);
  const OuterConfig cfg = outer_config_from(spec);
  const std::vector<Vector> starts = resolve_starts(spec, inst);

  std::vector<RunResult> results;
  results.reserve(starts.size());
  if (parallel && starts.size() > 1) {
    std::vector<std::future<RunResult>> futures;
    futures.reserve(starts.size());
    for (const Vector& x0 : starts) {
      futures.push_back(std::async(std::launch::async,
                                   [&inst, &cfg, x0] { return inst.run(x0, cfg); }));
    }
    for (auto& fut : futures) results.push_back(fut.get());
  } else {
    for (const Vector& x0 : starts) results.push_back(inst.run(x0, cfg));
  }

  // Merged deterministically by start index.
  if (spec.output.trace_path) {
    if (results.size() == 1) {
      write_text_file(*spec.output.trace_path, trace_to_csv(results[0].trace));
    } else {
      std::string merged;
      for (std::size_t i = 0; i < results.size(); ++i) {
        const std::string csv = trace_to_csv(results[i].trace);
        std::size_t pos = 0;
        bool header = true;
        while (pos < csv.size()) {
          const std::size_t nl = csv.find('\n', pos);
          const std::string row = csv.substr(pos, nl - pos);
          if (header) {
            if (i == 0) merged += "start," + row + "\n";
            header = false;
          } else {
            merged += std::to_string(i) + "," + row + "\n";
          }
          pos = nl + 1;
        }
      }
      write_text_file(*spec.output.trace_path, merged);
    }
  }

  if (spec.output.certificate_path) {
    const std::string doc = results.size() == 1
                                ? certificate_to_json(spec.problem, results[0])
                                : certificates_to_json(spec.problem, results);
    write_text_file(*spec.output.certificate_path, doc);
  }

  std::string summary;
  for (const RunResult& r : results) summary += run_summary_line(spec.problem, r) + "\n";
  if (spec.output.summary_path) write_text_file(*spec.output.summary_path, summary);
  out << summary;

  return exit_code_for(results);
}

int oracle_command(const RunSpec& spec, double grid_resolution, std::ostream& out) {
  const ProblemInstance inst = instance_by_name(spec.problem);
  const OuterConfig cfg = outer_config_from(spec);
  const std::vector<Vector> hits = fixed_point_oracle(
      inst.family(), inst.map, inst.C, grid_resolution, cfg.certify_eps, cfg.inner);
  const std::string csv = points_to_csv(hits, inst.C.dimension());
  if (spec.output.trace_path) {
    write_text_file(*spec.output.trace_path, csv);
  } else {
    out << csv;
  }
  out << "oracle: " << hits.size() << " candidate grid points\n";
  return 0;
}

std::string list_instances_text() {
  std::string out;
  out += "counterexample            2-cycling fixture; unique projected solution (0,0)\n";
  out += "moving_square             unit-square constraint drift; solutions (1,0),(1,1),(0,1)\n";
  out += "l2_truncated:<n>          truncated sequence-space instance, 2 <= n <= 100\n";
  out += "contraction:<q>[:<dim>]   synthetic affine contraction with modulus q in (0,1)\n";
  return out;
}

}  // namespace qep
