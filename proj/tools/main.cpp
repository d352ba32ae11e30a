#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/envelope.hpp"
#include "cli/run.hpp"
#include "dqpt/errors.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format;
  long long threads = -1;
  double t_max = -1.0;
  long long n_modes = -1;
  double tau = -1.0;
  double eps_crit = -1.0;
  long long size = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "flat key = value configuration file");
  cmd->add_option("--out", opts.out_path, "output path (stdout when omitted)");
  cmd->add_option("--format", opts.format, "csv or json");
  cmd->add_option("--threads", opts.threads, "worker count (0 = auto, env DQPT_LAB_THREADS)");
  cmd->add_option("--t-max", opts.t_max, "time window length, units hbar/J");
  cmd->add_option("--n-modes", opts.n_modes, "momentum quadrature size");
  cmd->add_option("--tau", opts.tau, "fluctuation averaging window");
  cmd->add_option("--eps-crit", opts.eps_crit, "critical-time residual threshold");
  cmd->add_option("--size", opts.size, "chain length N");
}

int run_command(const std::string& command, const CommonOpts& opts) {
  using namespace dqpt::cli;
  KeyValues kv;
  if (!opts.config_path.empty()) kv = load_config_file(opts.config_path);
  if (!opts.out_path.empty()) kv.emplace_back("out", opts.out_path);
  if (!opts.format.empty()) kv.emplace_back("format", opts.format);
  if (opts.threads >= 0) kv.emplace_back("threads", std::to_string(opts.threads));
  if (opts.t_max >= 0) kv.emplace_back("t_max", format_double(opts.t_max));
  if (opts.n_modes >= 0) kv.emplace_back("n_modes", std::to_string(opts.n_modes));
  if (opts.tau >= 0) kv.emplace_back("tau", format_double(opts.tau));
  if (opts.eps_crit >= 0) kv.emplace_back("eps_crit", format_double(opts.eps_crit));
  if (opts.size >= 0) kv.emplace_back("size", std::to_string(opts.size));

  const RunConfig cfg = build_run_config(command, kv);

  const auto t0 = std::chrono::steady_clock::now();
  const RunResult result = run(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text =
      cfg.format == "json" ? to_json(result.envelope) : to_csv(result.envelope);
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw dqpt::Error("cannot open output file '" + cfg.out_path + "'");
    out << text;
  }
  std::fprintf(stderr, "%s: %zu rows in %.2fs%s\n", command.c_str(), result.envelope.rows.size(),
               wall, result.numerical_failure ? " [FAILED CHECKS]" : "");
  return result.numerical_failure ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dqpt-lab: quench dynamics of the alternating-field XY chain with DM interaction"};
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, CommonOpts>> cmds;
  cmds.reserve(dqpt::cli::known_commands().size());
  for (const auto& name : dqpt::cli::known_commands()) {
    cmds.emplace_back(app.add_subcommand(name), CommonOpts{});
    add_common(cmds.back().first, cmds.back().second);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [cmd, opts] : cmds) {
      if (cmd->parsed()) return run_command(cmd->get_name(), opts);
    }
    std::cerr << "no command given\n";
    return 2;
  } catch (const dqpt::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
