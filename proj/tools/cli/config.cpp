#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dqpt/errors.hpp"

namespace dqpt::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ValidationError("config key '" + key + "': expected a finite number, got '" + value +
                          "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ValidationError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
}

const std::set<std::string> kKnownKeys = {
    "gamma",       "lambda1_initial", "lambda2_initial", "d_initial", "lambda1_final",
    "lambda2_final", "d_final",       "n_modes",         "t_max",     "dt",
    "eps_crit",    "tau",             "size",            "engine",    "threads",
    "plane",       "fixed",           "x_min",           "x_max",     "x_count",
    "y_min",       "y_max",           "y_count",         "out",       "format",
};

int axis_of(const std::string& name, const std::string& key) {
  if (name == "lambda1") return 0;
  if (name == "lambda2") return 1;
  if (name == "d") return 2;
  throw ValidationError("config key '" + key + "': axis must be lambda1, lambda2 or d");
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    kv.emplace_back(key, value);
  }
  return kv;
}

KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config file '" + path + "' cannot be opened");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {
      "phase-diagram",  "rate-function", "critical-times", "dqpt-scan",
      "entanglement-dynamics", "ggm-scan", "oracle-check",
  };
  return cmds;
}

int RunConfig::effective_size() const {
  if (size > 0) return size;
  if (command == "oracle-check") return 8;
  return engine == "ed" ? 12 : 96;
}

RunConfig build_run_config(const std::string& command, const KeyValues& kv) {
  const auto& cmds = known_commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) {
    throw ValidationError("unknown command '" + command + "'");
  }

  RunConfig cfg;
  cfg.command = command;

  std::set<std::string> seen;
  for (const auto& [key, value] : kv) {
    if (!kKnownKeys.count(key)) throw ValidationError("unknown config key '" + key + "'");
    seen.insert(key);
    if (key == "gamma") cfg.gamma = parse_double(key, value);
    else if (key == "lambda1_initial") cfg.initial.lambda1 = parse_double(key, value);
    else if (key == "lambda2_initial") cfg.initial.lambda2 = parse_double(key, value);
    else if (key == "d_initial") cfg.initial.dm = parse_double(key, value);
    else if (key == "lambda1_final") cfg.quench_final.lambda1 = parse_double(key, value);
    else if (key == "lambda2_final") cfg.quench_final.lambda2 = parse_double(key, value);
    else if (key == "d_final") cfg.quench_final.dm = parse_double(key, value);
    else if (key == "n_modes") cfg.n_modes = static_cast<std::size_t>(parse_int(key, value));
    else if (key == "t_max") cfg.t_max = parse_double(key, value);
    else if (key == "dt") cfg.dt = parse_double(key, value);
    else if (key == "eps_crit") cfg.eps_crit = parse_double(key, value);
    else if (key == "tau") cfg.tau = parse_double(key, value);
    else if (key == "size") cfg.size = static_cast<int>(parse_int(key, value));
    else if (key == "engine") cfg.engine = value;
    else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_int(key, value));
    else if (key == "plane") cfg.plane_str = value;
    else if (key == "fixed") cfg.plane.fixed_value = parse_double(key, value);
    else if (key == "x_min") cfg.grid2d.x0 = parse_double(key, value);
    else if (key == "x_max") cfg.grid2d.x1 = parse_double(key, value);
    else if (key == "x_count") cfg.grid2d.nx = static_cast<int>(parse_int(key, value));
    else if (key == "y_min") cfg.grid2d.y0 = parse_double(key, value);
    else if (key == "y_max") cfg.grid2d.y1 = parse_double(key, value);
    else if (key == "y_count") cfg.grid2d.ny = static_cast<int>(parse_int(key, value));
    else if (key == "out") cfg.out_path = value;
    else if (key == "format") cfg.format = value;
  }

  // Track presence of model points for per-command requirements.
  cfg.has_initial = seen.count("lambda1_initial") || seen.count("lambda2_initial") ||
                    seen.count("d_initial");
  cfg.has_final = seen.count("lambda1_final") || seen.count("lambda2_final") ||
                  seen.count("d_final");
  cfg.initial.gamma = cfg.gamma;
  cfg.quench_final.gamma = cfg.gamma;

  // Bounds.
  if (cfg.gamma == 0.0 || !std::isfinite(cfg.gamma)) {
    throw ValidationError("config key 'gamma': must be nonzero and finite");
  }
  if (cfg.n_modes < 4 || cfg.n_modes > 10'000'000) {
    throw ValidationError("config key 'n_modes': must lie in [4, 1e7]");
  }
  if (!(cfg.t_max > 0) || cfg.t_max > 1e6) {
    throw ValidationError("config key 't_max': must lie in (0, 1e6]");
  }
  if (!(cfg.dt > 0) || cfg.dt > cfg.t_max) {
    throw ValidationError("config key 'dt': must lie in (0, t_max]");
  }
  if (!(cfg.eps_crit > 0) || cfg.eps_crit > 1e-2) {
    throw ValidationError("config key 'eps_crit': must lie in (0, 1e-2]");
  }
  if (!(cfg.tau > 0) || cfg.tau > 1e6) {
    throw ValidationError("config key 'tau': must lie in (0, 1e6]");
  }
  if (cfg.engine != "covariance" && cfg.engine != "ed") {
    throw ValidationError("config key 'engine': must be 'covariance' or 'ed'");
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ValidationError("config key 'format': must be 'csv' or 'json'");
  }
  const int n = cfg.effective_size();
  if (cfg.engine == "ed" || command == "oracle-check") {
    if (n % 4 != 0 || n < 4 || n > 12) {
      throw ValidationError("config key 'size': ED engine needs a multiple of 4 with 4 <= N <= 12");
    }
  } else if (n % 4 != 0 || n < 8 || n > 4096) {
    throw ValidationError("config key 'size': covariance engine needs a multiple of 4 with 8 <= N <= 4096");
  }
  if (cfg.grid2d.nx < 1 || cfg.grid2d.ny < 1 || cfg.grid2d.nx > 4096 || cfg.grid2d.ny > 4096) {
    throw ValidationError("config key 'x_count'/'y_count': must lie in [1, 4096]");
  }

  // Plane string "axisx:axisy".
  const auto colon = cfg.plane_str.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("config key 'plane': expected 'axis:axis', e.g. lambda1:lambda2");
  }
  cfg.plane.axis_x = axis_of(cfg.plane_str.substr(0, colon), "plane");
  cfg.plane.axis_y = axis_of(cfg.plane_str.substr(colon + 1), "plane");
  if (cfg.plane.axis_x == cfg.plane.axis_y) {
    throw ValidationError("config key 'plane': axes must differ");
  }

  // Per-command requirements.
  const bool needs_quench = command == "rate-function" || command == "critical-times" ||
                            command == "entanglement-dynamics";
  const bool needs_initial = needs_quench || command == "dqpt-scan" || command == "ggm-scan";
  if (needs_initial && !cfg.has_initial) {
    throw ValidationError("command '" + command +
                          "' requires the initial point (lambda1_initial, ...)");
  }
  if (needs_quench && !cfg.has_final) {
    throw ValidationError("command '" + command + "' requires the final point (lambda1_final, ...)");
  }
  if (needs_initial) validate(cfg.initial);
  if (needs_quench) validate(cfg.quench());
  return cfg;
}

KeyValues canonical_config(const RunConfig& cfg) {
  auto num = [](double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  KeyValues kv;
  kv.emplace_back("gamma", num(cfg.gamma));
  if (cfg.has_initial) {
    kv.emplace_back("lambda1_initial", num(cfg.initial.lambda1));
    kv.emplace_back("lambda2_initial", num(cfg.initial.lambda2));
    kv.emplace_back("d_initial", num(cfg.initial.dm));
  }
  if (cfg.has_final) {
    kv.emplace_back("lambda1_final", num(cfg.quench_final.lambda1));
    kv.emplace_back("lambda2_final", num(cfg.quench_final.lambda2));
    kv.emplace_back("d_final", num(cfg.quench_final.dm));
  }
  kv.emplace_back("n_modes", std::to_string(cfg.n_modes));
  kv.emplace_back("t_max", num(cfg.t_max));
  kv.emplace_back("dt", num(cfg.dt));
  kv.emplace_back("eps_crit", num(cfg.eps_crit));
  kv.emplace_back("tau", num(cfg.tau));
  kv.emplace_back("size", std::to_string(cfg.effective_size()));
  kv.emplace_back("engine", cfg.engine);
  kv.emplace_back("threads", std::to_string(cfg.threads));
  if (cfg.command == "phase-diagram" || cfg.command == "dqpt-scan" || cfg.command == "ggm-scan") {
    kv.emplace_back("plane", cfg.plane_str);
    kv.emplace_back("fixed", num(cfg.plane.fixed_value));
    kv.emplace_back("x_min", num(cfg.grid2d.x0));
    kv.emplace_back("x_max", num(cfg.grid2d.x1));
    kv.emplace_back("x_count", std::to_string(cfg.grid2d.nx));
    kv.emplace_back("y_min", num(cfg.grid2d.y0));
    kv.emplace_back("y_max", num(cfg.grid2d.y1));
    kv.emplace_back("y_count", std::to_string(cfg.grid2d.ny));
  }
  kv.emplace_back("format", cfg.format);
  return kv;
}

}  // namespace dqpt::cli
