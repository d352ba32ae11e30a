#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dqpt/loschmidt.hpp"
#include "dqpt/model.hpp"

namespace dqpt::cli {

// Flat key = value pairs, file order preserved. '#' starts a comment.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);

// Later occurrences of a key override earlier ones (command-line overrides
// are appended).
struct RunConfig {
  std::string command;

  double gamma = 0.8;
  CouplingSet initial;
  CouplingSet quench_final;
  bool has_initial = false;
  bool has_final = false;

  std::size_t n_modes = 2048;
  double t_max = 20.0;
  double dt = 0.01;
  double eps_crit = 1e-6;
  double tau = 20.0;
  int size = 0;  // 0 = per-command default
  std::string engine = "covariance";
  unsigned threads = 0;

  PlaneSpec plane{0, 1, 0.0};
  Grid2D grid2d;
  std::string plane_str = "lambda1:lambda2";

  std::string out_path;        // empty = stdout
  std::string format = "csv";  // csv | json

  QuenchSpec quench() const { return {initial, quench_final}; }
  int effective_size() const;
};

// Validates keys and bounds; unknown keys and malformed values are rejected
// with the offending key named. Throws ValidationError.
RunConfig build_run_config(const std::string& command, const KeyValues& kv);

// Effective configuration echo; parsing it back reproduces the run.
KeyValues canonical_config(const RunConfig& cfg);

const std::vector<std::string>& known_commands();

}  // namespace dqpt::cli
