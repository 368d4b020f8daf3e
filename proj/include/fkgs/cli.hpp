// SPDX-License-Identifier: Apache-2.0
//
// Command line front end.
//
// Subcommands:
//   run            evolve one configuration; writes diagnostics.csv (and
//                  fields.csv with --save-fields), prints a summary
//   invariants     conservation study; diagnostics.csv + max-drift summary
//   converge-time  E(tau) table over --taus; writes errors_time.csv
//   converge-space E(N) table over --ns; writes errors_space.csv
//   bench          wall time / iteration comparison of the four schemes
//
// Flags mirror RunConfig; a --config file holds the same keys as flat
// key=value lines, with command-line values taking precedence.

#pragma once

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fkgs/harness.hpp"

namespace fkgs {

namespace detail {

struct CliOptions {
  std::string example = "ex41";
  std::string scheme = "fpavf-c";
  std::string u0_variant = "exact";
  std::string config_file;
  std::vector<double> box;
  std::vector<int> n;
  RunConfig cfg;
  std::vector<double> taus;
  std::vector<int> ns;
  bool save_fields = false;
};

inline void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--example", opt.example, "ex41 | ex42 | ex43 | custom")
      ->capture_default_str();
  cmd->add_option("--scheme", opt.scheme,
                  "favf | fpavf | fpavf-adj | fpavf-c | fpavf-p")
      ->capture_default_str();
  cmd->add_option("--alpha", opt.cfg.alpha, "fractional order, 1 < alpha <= 2")
      ->capture_default_str();
  cmd->add_option("--beta", opt.cfg.beta, "fractional order, 1 < beta <= 2")
      ->capture_default_str();
  cmd->add_option("--n", opt.n, "points per axis (one value per axis)");
  cmd->add_option("--box", opt.box,
                  "domain edges: x_a,x_b or x_a,x_b,y_a,y_b")
      ->delimiter(',');
  cmd->add_option("--tau", opt.cfg.tau, "time step")->capture_default_str();
  cmd->add_option("--t-final", opt.cfg.t_final, "horizon")
      ->capture_default_str();
  cmd->add_option("--tol", opt.cfg.tol, "fixed-point tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iter", opt.cfg.max_iter, "fixed-point iteration cap")
      ->capture_default_str();
  cmd->add_option("--sample-every", opt.cfg.sample_every,
                  "diagnostics stride in steps")
      ->capture_default_str();
  cmd->add_option("--out", opt.cfg.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--r", opt.cfg.r, "soliton speed, |r| < 1 (ex41)")
      ->capture_default_str();
  cmd->add_option("--x0", opt.cfg.x0, "soliton phase (ex41)")
      ->capture_default_str();
  cmd->add_option("--u0-variant", opt.u0_variant,
                  "printed | exact initial u data (ex41)")
      ->capture_default_str();
  cmd->add_option("--config", opt.config_file,
                  "flat key=value configuration file; flags override it");
}

/// Applies key=value lines from a config file to every option the command
/// line did not set. Keys are the flag names without the leading dashes.
inline void apply_config_file(const CLI::App* cmd, CliOptions& opt) {
  std::ifstream in(opt.config_file);
  if (!in)
    throw std::runtime_error("cannot open config file " + opt.config_file);

  auto split_list = [](const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    return vals;
  };
  auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(opt.config_file + ":" +
                               std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(first, eq - first);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string value = line.substr(eq + 1);
    const auto vb = value.find_first_not_of(" \t");
    value = vb == std::string::npos ? "" : value.substr(vb);
    value.erase(value.find_last_not_of(" \t\r") + 1);

    if (key == "example") { if (unset("--example")) opt.example = value; }
    else if (key == "scheme") { if (unset("--scheme")) opt.scheme = value; }
    else if (key == "alpha") { if (unset("--alpha")) opt.cfg.alpha = std::stod(value); }
    else if (key == "beta") { if (unset("--beta")) opt.cfg.beta = std::stod(value); }
    else if (key == "n") {
      if (unset("--n")) {
        opt.n.clear();
        for (double v : split_list(value)) opt.n.push_back(static_cast<int>(v));
      }
    }
    else if (key == "box") { if (unset("--box")) opt.box = split_list(value); }
    else if (key == "tau") { if (unset("--tau")) opt.cfg.tau = std::stod(value); }
    else if (key == "t-final") { if (unset("--t-final")) opt.cfg.t_final = std::stod(value); }
    else if (key == "tol") { if (unset("--tol")) opt.cfg.tol = std::stod(value); }
    else if (key == "max-iter") { if (unset("--max-iter")) opt.cfg.max_iter = std::stoi(value); }
    else if (key == "sample-every") { if (unset("--sample-every")) opt.cfg.sample_every = std::stol(value); }
    else if (key == "out") { if (unset("--out")) opt.cfg.out_dir = value; }
    else if (key == "r") { if (unset("--r")) opt.cfg.r = std::stod(value); }
    else if (key == "x0") { if (unset("--x0")) opt.cfg.x0 = std::stod(value); }
    else if (key == "u0-variant") { if (unset("--u0-variant")) opt.u0_variant = value; }
    else
      throw std::runtime_error(opt.config_file + ":" + std::to_string(lineno) +
                               ": unknown key " + key);
  }
}

inline RunConfig finish_config(const CLI::App* cmd, CliOptions& opt) {
  if (!opt.config_file.empty()) apply_config_file(cmd, opt);
  auto ex = parse_example(opt.example);
  if (!ex) throw CLI::ValidationError("--example", "unknown example " + opt.example);
  auto sc = parse_scheme(opt.scheme);
  if (!sc) throw CLI::ValidationError("--scheme", "unknown scheme " + opt.scheme);
  if (opt.u0_variant != "printed" && opt.u0_variant != "exact")
    throw CLI::ValidationError("--u0-variant", "use printed or exact");
  opt.cfg.example = *ex;
  opt.cfg.scheme = *sc;
  opt.cfg.u0_variant =
      opt.u0_variant == "printed" ? U0Variant::printed : U0Variant::exact;
  if (!opt.box.empty()) {
    if (opt.box.size() != 2 && opt.box.size() != 4)
      throw CLI::ValidationError("--box", "expected 2 or 4 edge values");
    opt.cfg.box.clear();
    for (std::size_t i = 0; i + 1 < opt.box.size(); i += 2)
      opt.cfg.box.push_back({opt.box[i], opt.box[i + 1]});
  }
  if (!opt.n.empty()) opt.cfg.n = opt.n;
  return resolve(opt.cfg);
}

inline std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_meta(const std::filesystem::path& dir, const RunConfig& cfg) {
  std::ofstream out(dir / "meta.txt");
  out << "example=" << to_string(cfg.example) << '\n'
      << "scheme=" << to_string(cfg.scheme) << '\n'
      << "alpha=" << cfg.alpha << '\n'
      << "beta=" << cfg.beta << '\n'
      << "tau=" << cfg.tau << '\n'
      << "t_final=" << cfg.t_final << '\n'
      << "tol=" << cfg.tol << '\n'
      << "max_iter=" << cfg.max_iter << '\n';
  out << "n=";
  for (std::size_t i = 0; i < cfg.n.size(); ++i)
    out << (i ? "," : "") << cfg.n[i];
  out << '\n' << "box=";
  for (std::size_t i = 0; i < cfg.box.size(); ++i)
    out << (i ? "," : "") << cfg.box[i].a << ',' << cfg.box[i].b;
  out << '\n';
  if (cfg.example == ExampleId::ex41)
    out << "r=" << cfg.r << '\n'
        << "x0=" << cfg.x0 << '\n'
        << "u0_variant=" << to_string(cfg.u0_variant) << '\n';
}

inline void print_drift_summary(const std::vector<DiagnosticsRow>& rows) {
  double max_rm = 0.0, max_rh = 0.0;
  for (const auto& r : rows) {
    max_rm = std::max(max_rm, r.rm);
    max_rh = std::max(max_rh, r.rh);
  }
  const auto& last = rows.back();
  std::printf("steps %ld  t %.6g  mass %.12g  energy %.12g\n", last.step,
              last.t, last.mass, last.energy);
  std::printf("max relative drift: mass %.3e  energy %.3e\n", max_rm, max_rh);
}

}  // namespace detail

/// Parses and executes one CLI invocation; returns the process exit code.
inline int run_cli(std::vector<std::string> args) {
  CLI::App app{"Conservative Fourier pseudo-spectral solver for the "
               "space-fractional Klein-Gordon-Schroedinger system"};
  app.require_subcommand(1);

  detail::CliOptions opt;

  CLI::App* cmd_run = app.add_subcommand("run", "evolve one configuration");
  detail::add_common_flags(cmd_run, opt);
  cmd_run->add_flag("--save-fields", opt.save_fields,
                    "write the final state to fields.csv");

  CLI::App* cmd_inv =
      app.add_subcommand("invariants", "mass/energy drift study");
  detail::add_common_flags(cmd_inv, opt);

  CLI::App* cmd_time =
      app.add_subcommand("converge-time", "temporal self-convergence table");
  detail::add_common_flags(cmd_time, opt);
  cmd_time->add_option("--taus", opt.taus, "halving step sizes, largest first")
      ->delimiter(',')
      ->required();

  CLI::App* cmd_space =
      app.add_subcommand("converge-space", "spatial self-convergence table");
  detail::add_common_flags(cmd_space, opt);
  cmd_space->add_option("--ns", opt.ns, "doubling resolutions, smallest first")
      ->delimiter(',')
      ->required();

  CLI::App* cmd_bench =
      app.add_subcommand("bench", "compare scheme cost on one configuration");
  detail::add_common_flags(cmd_bench, opt);

  // CLI11 wants argv in reverse order, program name removed.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    const RunConfig cfg = detail::finish_config(active, opt);
    const auto dir = detail::prepare_out_dir(cfg);

    if (cmd_run->parsed() || cmd_inv->parsed()) {
      RunResult res = run_simulation(cfg, true);
      write_diagnostics_csv((dir / "diagnostics.csv").string(),
                            res.diagnostics);
      detail::write_meta(dir, cfg);
      if (opt.save_fields)
        write_fields_csv((dir / "fields.csv").string(), res.final_state);
      detail::print_drift_summary(res.diagnostics);
      std::printf("wall %.3f s  fixed-point sweeps %lld\n", res.wall_seconds,
                  res.total_iterations);
      std::printf("wrote %s\n", (dir / "diagnostics.csv").c_str());
    } else if (cmd_time->parsed()) {
      ErrorTable table = temporal_error_table(cfg, opt.taus);
      write_error_csv((dir / "errors_time.csv").string(), "tau", table);
      std::printf("%12s %14s %8s\n", "tau", "E(tau)", "order");
      for (const auto& r : table.rows)
        std::printf("%12.6g %14.6e %8.3f\n", r.param, r.error, r.order);
      std::printf("wrote %s\n", (dir / "errors_time.csv").c_str());
    } else if (cmd_space->parsed()) {
      ErrorTable table = spatial_error_table(cfg, opt.ns);
      write_error_csv((dir / "errors_space.csv").string(), "n", table);
      std::printf("%8s %14s %8s\n", "n", "E(N)", "order");
      for (const auto& r : table.rows)
        std::printf("%8g %14.6e %8.3f\n", r.param, r.error, r.order);
      std::printf("wrote %s\n", (dir / "errors_space.csv").c_str());
    } else if (cmd_bench->parsed()) {
      std::vector<BenchRow> rows = bench(cfg);
      std::ofstream out(dir / "bench.csv");
      out << "scheme,wall_seconds,iterations,max_rm,max_rh\n";
      std::printf("%10s %12s %12s %12s %12s\n", "scheme", "wall [s]", "sweeps",
                  "max RM", "max RH");
      for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << r.wall_seconds << ','
            << r.iterations << ',' << r.max_rm << ',' << r.max_rh << '\n';
        std::printf("%10s %12.3f %12lld %12.3e %12.3e\n", to_string(r.scheme),
                    r.wall_seconds, r.iterations, r.max_rm, r.max_rh);
      }
      std::printf("wrote %s\n", (dir / "bench.csv").c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

inline int run_cli(int argc, char** argv) {
  return run_cli(std::vector<std::string>(argv, argv + argc));
}

}  // namespace fkgs
