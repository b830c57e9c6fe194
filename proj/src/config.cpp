#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lvbec/errors.hpp"
#include "lvbec/sweep.hpp"

namespace lvbec {
namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::optional<double> to_number(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || t.empty()) {
    return std::nullopt;
  }
  return v;
}

std::optional<double> to_R(std::string_view text) {
  const std::string t = trim(text);
  if (t == "ddi") return kRDipolar;
  if (t == "contact") return 0.0;
  return to_number(t);
}

std::optional<bool> to_bool(std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  return std::nullopt;
}

class Parser {
 public:
  SweepSpec run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto hash = raw.find('#');
      const std::string line = trim(raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        section(line, line_no);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        error(line_no, "expected 'key = value'");
        continue;
      }
      assign(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
    }
    if (!have_target_) errors_.push_back("[sweep] target is required");
    if (!errors_.empty()) throw ValidationError(errors_);
    return spec_;
  }

 private:
  void error(int line, const std::string& msg) {
    errors_.push_back("line " + std::to_string(line) + ": " + msg);
  }

  void section(const std::string& line, int line_no) {
    if (line.back() != ']') {
      error(line_no, "malformed section header");
      return;
    }
    const std::string name = trim(line.substr(1, line.size() - 2));
    if (name == "sweep" || name == "fixed" || name == "quadrature") {
      section_ = name;
      return;
    }
    if (name.rfind("axis.", 0) == 0 && name.size() > 5) {
      section_ = "axis";
      Axis axis;
      axis.name = name.substr(5);
      if (std::any_of(spec_.axes.begin(), spec_.axes.end(),
                      [&](const Axis& a) { return a.name == axis.name; })) {
        error(line_no, "duplicate axis '" + axis.name + "'");
      }
      spec_.axes.push_back(axis);
      return;
    }
    section_ = "?";
    error(line_no, "unknown section [" + name + "]");
  }

  void number(const std::string& key, const std::string& value, int line_no,
              double& dst) {
    if (auto v = to_number(value)) {
      dst = *v;
    } else {
      error(line_no, key + ": not a number: '" + value + "'");
    }
  }

  void integer(const std::string& key, const std::string& value, int line_no,
               int& dst) {
    int v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      error(line_no, key + ": not an integer: '" + value + "'");
    } else {
      dst = v;
    }
  }

  void flag(const std::string& key, const std::string& value, int line_no,
            bool& dst) {
    if (auto v = to_bool(value)) {
      dst = *v;
    } else {
      error(line_no, key + ": expected true/false");
    }
  }

  void assign(const std::string& key, const std::string& value, int line_no) {
    if (!seen_.insert(section_ + "." +
                      (section_ == "axis" ? spec_.axes.back().name + "." : "") +
                      key)
             .second) {
      error(line_no, "duplicate key '" + key + "'");
    }
    if (section_.empty()) {
      error(line_no, "key '" + key + "' outside any section");
    } else if (section_ == "?") {
      // already reported
    } else if (section_ == "sweep") {
      if (key == "target") {
        if (auto t = parse_target(value)) {
          spec_.target = *t;
          have_target_ = true;
        } else {
          error(line_no, "unknown target '" + value + "'");
        }
      } else if (key == "output") {
        spec_.output_path = value;
      } else {
        error(line_no, "unknown key '" + key + "' in [sweep]");
      }
    } else if (section_ == "axis") {
      Axis& axis = spec_.axes.back();
      if (key == "start") {
        number(key, value, line_no, axis.start);
      } else if (key == "stop") {
        number(key, value, line_no, axis.stop);
      } else if (key == "count") {
        integer(key, value, line_no, axis.count);
      } else if (key == "scale") {
        if (value == "linear") {
          axis.scale = AxisScale::Linear;
        } else if (value == "log") {
          axis.scale = AxisScale::Log;
        } else {
          error(line_no, "scale must be linear or log");
        }
      } else {
        error(line_no, "unknown key '" + key + "' in [axis." + axis.name + "]");
      }
    } else if (section_ == "fixed") {
      FixedParams& fx = spec_.fixed;
      if (key == "A") {
        fx.A.clear();
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
          if (auto v = to_number(item)) {
            fx.A.push_back(*v);
          } else {
            error(line_no, "A: not a number: '" + trim(item) + "'");
          }
        }
      } else if (key == "R") {
        if (auto v = to_R(value)) {
          fx.R = *v;
        } else {
          error(line_no, "R: expected ddi, contact or a number");
        }
      } else if (key == "omega_tilde") {
        number(key, value, line_no, fx.omega_tilde);
      } else if (key == "beta") {
        number(key, value, line_no, fx.beta);
      } else if (key == "include_li") {
        flag(key, value, line_no, fx.include_li);
      } else if (key == "include_contact") {
        flag(key, value, line_no, fx.include_contact);
      } else if (key == "low_speed") {
        flag(key, value, line_no, fx.low_speed);
      } else if (key == "critical_tol") {
        number(key, value, line_no, fx.critical_tol);
      } else {
        error(line_no, "unknown key '" + key + "' in [fixed]");
      }
    } else if (section_ == "quadrature") {
      QuadratureSettings& q = spec_.fixed.quad;
      if (key == "rel_tol") {
        number(key, value, line_no, q.rel_tol);
      } else if (key == "abs_tol") {
        number(key, value, line_no, q.abs_tol);
      } else if (key == "max_refinements") {
        integer(key, value, line_no, q.max_refinements);
      } else if (key == "scan_points") {
        integer(key, value, line_no, q.scan_points);
      } else {
        error(line_no, "unknown key '" + key + "' in [quadrature]");
      }
    }
  }

  SweepSpec spec_;
  std::string section_;
  std::set<std::string> seen_;
  std::vector<std::string> errors_;
  bool have_target_ = false;
};

}  // namespace

SweepSpec parse_sweep_config(std::string_view text) {
  SweepSpec spec = Parser{}.run(text);
  spec.validate();
  return spec;
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::system_error(errno, std::generic_category(),
                            "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

std::string canonical_form(const SweepSpec& spec) {
  std::string out;
  out += "[sweep]\ntarget = " + std::string(to_string(spec.target)) + "\n";
  if (!spec.output_path.empty()) {
    out += "output = " + spec.output_path.string() + "\n";
  }
  for (const Axis& a : spec.axes) {
    out += "\n[axis." + a.name + "]\n";
    out += "start = " + format_double(a.start) + "\n";
    out += "stop = " + format_double(a.stop) + "\n";
    out += "count = " + std::to_string(a.count) + "\n";
    out += std::string("scale = ") +
           (a.scale == AxisScale::Log ? "log" : "linear") + "\n";
  }
  const FixedParams& fx = spec.fixed;
  out += "\n[fixed]\n";
  if (!fx.A.empty()) {
    out += "A = ";
    for (std::size_t i = 0; i < fx.A.size(); ++i) {
      if (i) out += ", ";
      out += format_double(fx.A[i]);
    }
    out += "\n";
  }
  out += "R = " + format_double(fx.R) + "\n";
  out += "omega_tilde = " + format_double(fx.omega_tilde) + "\n";
  out += "beta = " + format_double(fx.beta) + "\n";
  out += std::string("include_li = ") + (fx.include_li ? "true" : "false") + "\n";
  out += std::string("include_contact = ") +
         (fx.include_contact ? "true" : "false") + "\n";
  out += std::string("low_speed = ") + (fx.low_speed ? "true" : "false") + "\n";
  out += "critical_tol = " + format_double(fx.critical_tol) + "\n";
  out += "\n[quadrature]\n";
  out += "rel_tol = " + format_double(fx.quad.rel_tol) + "\n";
  out += "abs_tol = " + format_double(fx.quad.abs_tol) + "\n";
  out += "max_refinements = " + std::to_string(fx.quad.max_refinements) + "\n";
  out += "scan_points = " + std::to_string(fx.quad.scan_points) + "\n";
  return out;
}

}  // namespace lvbec
