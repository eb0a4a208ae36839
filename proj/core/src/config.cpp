#include "qep/config.hpp"

#include "qep/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace qep {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "malformed number: '" + t + "'");
  }
  return v;
}

long parse_integer(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  long v = 0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "malformed integer: '" + t + "'");
  }
  return v;
}

Vector parse_vector(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw ParseError(line, "vector literal must be bracketed: '" + t + "'");
  }
  const std::string body = t.substr(1, t.size() - 2);
  std::vector<double> coords;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string piece =
        comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos);
    if (trim(piece).empty()) {
      throw ParseError(line, "empty vector component");
    }
    coords.push_back(parse_number(piece, line));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (coords.empty()) throw ParseError(line, "vector must have at least one component");
  Vector v(static_cast<Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Index>(i)] = coords[i];
  return v;
}

InnerMethod parse_method(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  if (t == "auto") return InnerMethod::Auto;
  if (t == "closed_form") return InnerMethod::ClosedForm;
  if (t == "extragradient") return InnerMethod::Extragradient;
  if (t == "grid") return InnerMethod::GridOracle;
  throw ParseError(line, "unknown method: '" + t + "'");
}

const char* method_name(InnerMethod m) {
  switch (m) {
    case InnerMethod::Auto: return "auto";
    case InnerMethod::ClosedForm: return "closed_form";
    case InnerMethod::Extragradient: return "extragradient";
    case InnerMethod::GridOracle: return "grid";
  }
  return "auto";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_vector(const Vector& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(v[i]);
  }
  out += "]";
  return out;
}

Vector parse_vector_literal(const std::string& text) { return parse_vector(text, 0); }

bool operator==(const RunSpec& a, const RunSpec& b) {
  const auto vec_eq = [](const std::optional<Vector>& u, const std::optional<Vector>& v) {
    if (u.has_value() != v.has_value()) return false;
    if (!u) return true;
    return u->size() == v->size() && *u == *v;
  };
  return a.problem == b.problem && vec_eq(a.x0, b.x0) && a.multistart == b.multistart &&
         a.seed == b.seed && a.outer.stop_tol == b.outer.stop_tol &&
         a.outer.max_iterations == b.outer.max_iterations &&
         a.outer.cycle_window == b.outer.cycle_window &&
         a.outer.cycle_tol == b.outer.cycle_tol &&
         a.outer.certify_eps == b.outer.certify_eps &&
         a.inner.epsilon == b.inner.epsilon &&
         a.inner.max_iterations == b.inner.max_iterations &&
         a.inner.step_size == b.inner.step_size &&
         a.inner.grid_resolution == b.inner.grid_resolution &&
         a.inner.method == b.inner.method &&
         a.output.trace_path == b.output.trace_path &&
         a.output.certificate_path == b.output.certificate_path &&
         a.output.summary_path == b.output.summary_path;
}

RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;
  bool have_problem = false;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "start" && section != "outer" &&
          section != "inner" && section != "output") {
        throw ValidationError("section", "unknown section: [" + section + "]");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for key '" + key + "'");
    if (section.empty()) {
      throw ValidationError(key, "key appears before any section header");
    }

    if (section == "problem") {
      if (key == "name") {
        spec.problem = value;
        have_problem = true;
      } else {
        throw ValidationError("problem." + key, "unknown key");
      }
    } else if (section == "start") {
      if (key == "x0") {
        spec.x0 = parse_vector(value, line_no);
      } else if (key == "multistart") {
        const long k = parse_integer(value, line_no);
        if (k < 1) throw ValidationError("start.multistart", "must be at least 1");
        spec.multistart = static_cast<int>(k);
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(parse_integer(value, line_no));
      } else {
        throw ValidationError("start." + key, "unknown key");
      }
    } else if (section == "outer") {
      if (key == "stop_tol") {
        spec.outer.stop_tol = parse_number(value, line_no);
      } else if (key == "max_iterations") {
        spec.outer.max_iterations = static_cast<int>(parse_integer(value, line_no));
      } else if (key == "cycle_window") {
        spec.outer.cycle_window = static_cast<int>(parse_integer(value, line_no));
      } else if (key == "cycle_tol") {
        spec.outer.cycle_tol = parse_number(value, line_no);
      } else if (key == "certify_eps") {
        spec.outer.certify_eps = parse_number(value, line_no);
      } else {
        throw ValidationError("outer." + key, "unknown key");
      }
    } else if (section == "inner") {
      if (key == "epsilon") {
        spec.inner.epsilon = parse_number(value, line_no);
      } else if (key == "max_iterations") {
        spec.inner.max_iterations = static_cast<int>(parse_integer(value, line_no));
      } else if (key == "step_size") {
        spec.inner.step_size = parse_number(value, line_no);
      } else if (key == "grid_resolution") {
        spec.inner.grid_resolution = parse_number(value, line_no);
      } else if (key == "method") {
        spec.inner.method = parse_method(value, line_no);
      } else {
        throw ValidationError("inner." + key, "unknown key");
      }
    } else {  // output
      if (key == "trace") {
        spec.output.trace_path = value;
      } else if (key == "certificate") {
        spec.output.certificate_path = value;
      } else if (key == "summary") {
        spec.output.summary_path = value;
      } else {
        throw ValidationError("output." + key, "unknown key");
      }
    }
  }

  if (!have_problem || spec.problem.empty()) {
    throw ValidationError("problem.name", "missing required key");
  }
  if (spec.x0 && spec.multistart) {
    throw ValidationError("start", "x0 and multistart are mutually exclusive");
  }
  const auto positive = [](const std::optional<double>& v, const char* field) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) {
      throw ValidationError(field, "must be positive and finite");
    }
  };
  positive(spec.outer.stop_tol, "outer.stop_tol");
  positive(spec.outer.cycle_tol, "outer.cycle_tol");
  positive(spec.outer.certify_eps, "outer.certify_eps");
  positive(spec.inner.epsilon, "inner.epsilon");
  positive(spec.inner.step_size, "inner.step_size");
  if (spec.outer.max_iterations && *spec.outer.max_iterations < 1) {
    throw ValidationError("outer.max_iterations", "must be at least 1");
  }
  if (spec.inner.max_iterations && *spec.inner.max_iterations < 1) {
    throw ValidationError("inner.max_iterations", "must be at least 1");
  }
  if (spec.x0) ensure_finite(*spec.x0, "start.x0");
  return spec;
}

std::string render_config(const RunSpec& spec) {
  std::string out;
  out += "[problem]\nname = " + spec.problem + "\n";

  if (spec.x0 || spec.multistart || spec.seed != 0) {
    out += "\n[start]\n";
    if (spec.x0) out += "x0 = " + format_vector(*spec.x0) + "\n";
    if (spec.multistart) out += "multistart = " + std::to_string(*spec.multistart) + "\n";
    if (spec.seed != 0) out += "seed = " + std::to_string(spec.seed) + "\n";
  }

  const auto& o = spec.outer;
  if (o.stop_tol || o.max_iterations || o.cycle_window || o.cycle_tol || o.certify_eps) {
    out += "\n[outer]\n";
    if (o.stop_tol) out += "stop_tol = " + format_double(*o.stop_tol) + "\n";
    if (o.max_iterations) out += "max_iterations = " + std::to_string(*o.max_iterations) + "\n";
    if (o.cycle_window) out += "cycle_window = " + std::to_string(*o.cycle_window) + "\n";
    if (o.cycle_tol) out += "cycle_tol = " + format_double(*o.cycle_tol) + "\n";
    if (o.certify_eps) out += "certify_eps = " + format_double(*o.certify_eps) + "\n";
  }

  const auto& in = spec.inner;
  if (in.epsilon || in.max_iterations || in.step_size || in.grid_resolution || in.method) {
    out += "\n[inner]\n";
    if (in.epsilon) out += "epsilon = " + format_double(*in.epsilon) + "\n";
    if (in.max_iterations) out += "max_iterations = " + std::to_string(*in.max_iterations) + "\n";
    if (in.step_size) out += "step_size = " + format_double(*in.step_size) + "\n";
    if (in.grid_resolution) out += "grid_resolution = " + format_double(*in.grid_resolution) + "\n";
    if (in.method) out += std::string("method = ") + method_name(*in.method) + "\n";
  }

  const auto& op = spec.output;
  if (op.trace_path || op.certificate_path || op.summary_path) {
    out += "\n[output]\n";
    if (op.trace_path) out += "trace = " + *op.trace_path + "\n";
    if (op.certificate_path) out += "certificate = " + *op.certificate_path + "\n";
    if (op.summary_path) out += "summary = " + *op.summary_path + "\n";
  }
  return out;
}

}  // namespace qep
