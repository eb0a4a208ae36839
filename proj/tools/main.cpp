#include "qep/commands.hpp"
#include "qep/config.hpp"
#include "qep/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw qep::Error("cannot open config: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected-solution procedure for quasi equilibrium problems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string x0_text;
  std::optional<double> stop_tol;
  std::optional<int> max_iter;
  std::string trace_path;
  std::string cert_path;
  bool parallel = false;

  CLI::App* solve = app.add_subcommand("solve", "run the procedure per config");
  solve->add_option("config", config_path, "config file path")->required();
  solve->add_option("--x0", x0_text, "start point override, e.g. [0.5, 0]");
  solve->add_option("--stop-tol", stop_tol, "outer stop tolerance override");
  solve->add_option("--max-iter", max_iter, "outer iteration budget override");
  solve->add_option("--trace", trace_path, "trace CSV output path override");
  solve->add_option("--cert", cert_path, "certificate JSON output path override");
  solve->add_flag("--parallel", parallel, "run multistart points concurrently");

  double resolution = 0.05;
  CLI::App* oracle = app.add_subcommand("oracle", "grid sweep for projected solutions");
  oracle->add_option("config", config_path, "config file path")->required();
  oracle->add_option("--resolution", resolution, "grid pitch over C")->required();

  CLI::App* list = app.add_subcommand("list-instances", "print the named instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      std::cout << qep::list_instances_text();
      return 0;
    }
    qep::RunSpec spec = qep::parse_config(read_file(config_path));
    if (!x0_text.empty()) {
      spec.x0 = qep::parse_vector_literal(x0_text);
      spec.multistart.reset();
    }
    if (stop_tol) spec.outer.stop_tol = *stop_tol;
    if (max_iter) spec.outer.max_iterations = *max_iter;
    if (!trace_path.empty()) spec.output.trace_path = trace_path;
    if (!cert_path.empty()) spec.output.certificate_path = cert_path;

    if (solve->parsed()) return qep::run_command(spec, std::cout, parallel);
    return qep::oracle_command(spec, resolution, std::cout);
  } catch (const qep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
