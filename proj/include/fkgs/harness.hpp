// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: run configurations, invariant-drift series, temporal
// and spatial self-convergence tables, a scheme benchmark, and the CSV
// formats consumed by plotting scripts.
//
// Error functions between refinements follow the usual self-difference
// recipe: E(tau) compares runs at tau and tau/2 on one grid, E(N) compares
// runs at N and 2N at one step size restricted to the shared (nested)
// nodes; both sum the max-norm differences of U, P and Q at the final time,
// and orders are log2 ratios of successive E values.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fkgs/examples.hpp"
#include "fkgs/field.hpp"
#include "fkgs/grid.hpp"
#include "fkgs/integrators.hpp"
#include "fkgs/model.hpp"
#include "fkgs/spectral.hpp"

namespace fkgs {

inline const char* to_string(ExampleId e) {
  switch (e) {
    case ExampleId::ex41: return "ex41";
    case ExampleId::ex42: return "ex42";
    case ExampleId::ex43: return "ex43";
    case ExampleId::custom: return "custom";
  }
  return "?";
}

inline std::optional<ExampleId> parse_example(std::string_view name) {
  if (name == "ex41") return ExampleId::ex41;
  if (name == "ex42") return ExampleId::ex42;
  if (name == "ex43") return ExampleId::ex43;
  if (name == "custom") return ExampleId::custom;
  return std::nullopt;
}

inline const char* to_string(U0Variant v) {
  return v == U0Variant::exact ? "exact" : "printed";
}

struct RunConfig {
  ExampleId example = ExampleId::ex41;
  SchemeKind scheme = SchemeKind::FPAVF_C;
  double alpha = 2.0;
  double beta = 2.0;
  double tau = 1e-3;
  double t_final = 1.0;
  std::vector<int> n;            // per-axis point counts
  std::vector<Interval> box;     // per-axis intervals
  double r = -0.8;               // soliton speed (ex41)
  double x0 = 0.0;               // soliton phase (ex41)
  U0Variant u0_variant = U0Variant::exact;
  double tol = 1e-12;
  int max_iter = 200;
  long sample_every = 1;
  std::string out_dir = ".";
};

/// Fills in the boxes/counts an example preset prescribes; explicit values
/// win over preset defaults.
inline RunConfig resolve(RunConfig cfg) {
  auto default_box = [&](std::vector<Interval> box) {
    if (cfg.box.empty()) cfg.box = std::move(box);
  };
  auto default_n = [&](std::vector<int> n) {
    if (cfg.n.empty()) cfg.n = std::move(n);
  };
  switch (cfg.example) {
    case ExampleId::ex41:
      default_box({{-20.0, 20.0}});
      default_n({128});
      break;
    case ExampleId::ex42:
      default_box({{0.0, 2.0 * std::numbers::pi}, {0.0, 2.0 * std::numbers::pi}});
      default_n({16, 16});
      break;
    case ExampleId::ex43:
      default_box({{-10.0, 10.0}, {-10.0, 10.0}});
      default_n({256, 256});
      break;
    case ExampleId::custom:
      if (cfg.box.empty() || cfg.n.empty())
        throw std::invalid_argument("custom runs need --box and --n");
      break;
  }
  if (cfg.n.size() == 1 && cfg.box.size() == 2) cfg.n.push_back(cfg.n[0]);
  if (cfg.n.size() != cfg.box.size())
    throw std::invalid_argument("per-axis n and box sizes disagree");
  return cfg;
}

inline GridSpec config_grid(const RunConfig& cfg) {
  if (cfg.box.size() == 1) return make_grid(cfg.box[0], cfg.n[0]);
  if (cfg.box.size() == 2)
    return make_grid(cfg.box[0], cfg.n[0], cfg.box[1], cfg.n[1]);
  throw std::invalid_argument("only 1D and 2D runs are supported");
}

inline InitialData config_initial(const RunConfig& cfg) {
  switch (cfg.example) {
    case ExampleId::ex41:
      return soliton_initial(cfg.r, cfg.x0, cfg.u0_variant);
    case ExampleId::ex42:
      return plane_wave_initial();
    case ExampleId::ex43:
      return pulse_initial_2d();
    case ExampleId::custom:
      throw std::invalid_argument("custom runs need caller-provided initial data");
  }
  throw std::invalid_argument("unknown example");
}

inline Params config_params(const RunConfig& cfg) {
  Params pr;
  pr.alpha = cfg.alpha;
  pr.beta = cfg.beta;
  pr.tau = cfg.tau;
  pr.t_final = cfg.t_final;
  pr.tol = cfg.tol;
  pr.max_iter = cfg.max_iter;
  pr.validate();
  return pr;
}

struct DiagnosticsRow {
  long step = 0;
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double rm = 0.0;
  double rh = 0.0;
  int iters = 0;
};

struct RunResult {
  State final_state;
  std::vector<DiagnosticsRow> diagnostics;
  long long total_iterations = 0;
  double wall_seconds = 0.0;
};

/// Runs a configuration, sampling mass/energy every `sample_every` steps.
/// Row 0 always holds the initial invariants, so rm = rh = 0 there by
/// definition.
inline RunResult run_simulation(const RunConfig& raw,
                                bool with_diagnostics = true) {
  const RunConfig cfg = resolve(raw);
  const GridSpec grid = config_grid(cfg);
  const Params pr = config_params(cfg);
  const SpectralMultiplier ma = make_multiplier(grid, cfg.alpha);
  const SpectralMultiplier mb = make_multiplier(grid, cfg.beta);
  State st = initialize(grid, config_initial(cfg));

  RunResult out;
  const double m0 = mass(st);
  const double h0 = energy(st, ma, mb);
  const double m_ref = std::abs(m0) > 0.0 ? std::abs(m0) : 1.0;
  const double h_ref = std::abs(h0) > 0.0 ? std::abs(h0) : 1.0;
  if (with_diagnostics)
    out.diagnostics.push_back({0, st.t, m0, h0, 0.0, 0.0, 0});

  long step_index = 0;
  auto observer = [&](const State& s, const StepReport& rep) {
    ++step_index;
    out.total_iterations += rep.iterations;
    if (!with_diagnostics) return;
    const long long nsteps = std::llround(pr.t_final / pr.tau);
    if (step_index % cfg.sample_every == 0 || step_index == nsteps) {
      const double m = mass(s);
      const double h = energy(s, ma, mb);
      out.diagnostics.push_back({step_index, s.t, m, h,
                                 std::abs((m - m0) / m_ref),
                                 std::abs((h - h0) / h_ref), rep.iterations});
    }
  };

  const auto t_start = std::chrono::steady_clock::now();
  out.final_state = evolve(std::move(st), pr, cfg.scheme, ma, mb, observer);
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

inline std::vector<DiagnosticsRow> invariant_series(const RunConfig& cfg) {
  return run_simulation(cfg, true).diagnostics;
}

struct ErrorRow {
  double param = 0.0;   // tau or N
  double error = 0.0;
  double order = std::numeric_limits<double>::quiet_NaN();  // from row 2 on
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
};

namespace detail {

inline double combined_inf_diff(const State& a, const State& b) {
  return inf_diff(a.u, b.u) + inf_diff(a.p, b.p) + inf_diff(a.q, b.q);
}

inline void require_dyadic_descending(const std::vector<double>& taus) {
  if (taus.size() < 2)
    throw std::invalid_argument("need at least two step sizes");
  for (std::size_t i = 1; i < taus.size(); ++i)
    if (std::abs(taus[i] - 0.5 * taus[i - 1]) > 1e-9 * taus[i - 1])
      throw std::invalid_argument("step sizes must halve between rows");
}

inline void require_dyadic_ascending(const std::vector<int>& ns) {
  if (ns.size() < 2)
    throw std::invalid_argument("need at least two resolutions");
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] != 2 * ns[i - 1])
      throw std::invalid_argument("resolutions must double between rows");
}

/// Restriction of a fine-grid state to a nested coarse grid (every second
/// node per axis).
inline State restrict_to(const State& fine, const GridSpec& coarse) {
  State out{RealField(coarse), RealField(coarse), RealField(coarse),
            RealField(coarse), fine.t};
  const GridSpec& fg = fine.grid();
  auto copy_at = [&](std::size_t ci, std::size_t fi) {
    out.u[ci] = fine.u[fi];
    out.v[ci] = fine.v[fi];
    out.p[ci] = fine.p[fi];
    out.q[ci] = fine.q[fi];
  };
  if (coarse.dim() == 1) {
    for (long j = 0; j < coarse.axis(0).n; ++j)
      copy_at(coarse.index(j), fg.index(2 * j));
  } else {
    for (long jx = 0; jx < coarse.axis(0).n; ++jx)
      for (long jy = 0; jy < coarse.axis(1).n; ++jy)
        copy_at(coarse.index(jx, jy), fg.index(2 * jx, 2 * jy));
  }
  return out;
}

}  // namespace detail

/// Temporal self-convergence at fixed N: E(tau) = |U_tau - U_{tau/2}|_inf
/// + |P ...| + |Q ...| at the final time.
inline ErrorTable temporal_error_table(const RunConfig& base,
                                       const std::vector<double>& taus) {
  detail::require_dyadic_descending(taus);
  std::vector<double> all = taus;
  all.push_back(taus.back() * 0.5);

  std::map<long long, State> finals;  // keyed by step count
  for (double tau : all) {
    RunConfig cfg = base;
    cfg.tau = tau;
    const long long key = std::llround(base.t_final / tau);
    finals.emplace(key, run_simulation(cfg, false).final_state);
  }

  ErrorTable table;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const State& coarse = finals.at(std::llround(base.t_final / taus[i]));
    const State& fine = finals.at(std::llround(base.t_final / (0.5 * taus[i])));
    ErrorRow row;
    row.param = taus[i];
    row.error = detail::combined_inf_diff(coarse, fine);
    if (i > 0)
      row.order = std::log2(table.rows[i - 1].error / row.error);
    table.rows.push_back(row);
  }
  return table;
}

/// Spatial self-convergence at fixed tau: E(N) compares the N and 2N runs on
/// the N-grid nodes (dyadic refinement keeps the nodes nested).
inline ErrorTable spatial_error_table(const RunConfig& base,
                                      const std::vector<int>& ns) {
  detail::require_dyadic_ascending(ns);
  const RunConfig resolved = resolve(base);
  std::vector<int> all = ns;
  all.push_back(2 * ns.back());

  std::map<int, State> finals;
  for (int n : all) {
    RunConfig cfg = resolved;
    cfg.n.assign(resolved.box.size(), n);
    finals.emplace(n, run_simulation(cfg, false).final_state);
  }

  ErrorTable table;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const State& coarse = finals.at(ns[i]);
    const State fine_on_coarse =
        detail::restrict_to(finals.at(2 * ns[i]), coarse.grid());
    ErrorRow row;
    row.param = static_cast<double>(ns[i]);
    row.error = detail::combined_inf_diff(coarse, fine_on_coarse);
    if (i > 0)
      row.order = std::log2(table.rows[i - 1].error / row.error);
    table.rows.push_back(row);
  }
  return table;
}

struct BenchRow {
  SchemeKind scheme;
  double wall_seconds = 0.0;
  long long iterations = 0;
  double max_rm = 0.0;
  double max_rh = 0.0;
};

/// Wall time and total fixed-point sweeps per scheme on one configuration.
/// Diagnostics are sampled sparsely so the wall time measures the stepping.
inline std::vector<BenchRow> bench(const RunConfig& base) {
  std::vector<BenchRow> rows;
  for (SchemeKind scheme : {SchemeKind::FPAVF, SchemeKind::FPAVF_C,
                            SchemeKind::FPAVF_P, SchemeKind::FAVF}) {
    RunConfig cfg = base;
    cfg.scheme = scheme;
    cfg.sample_every =
        std::max<long>(1, std::llround(cfg.t_final / cfg.tau) / 100);
    RunResult res = run_simulation(cfg, true);
    BenchRow row{scheme, res.wall_seconds, res.total_iterations, 0.0, 0.0};
    for (const DiagnosticsRow& d : res.diagnostics) {
      row.max_rm = std::max(row.max_rm, d.rm);
      row.max_rh = std::max(row.max_rh, d.rh);
    }
    rows.push_back(row);
  }
  return rows;
}

// --- CSV ---------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_diagnostics_csv(const std::string& path,
                                  const std::vector<DiagnosticsRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "step,t,mass,energy,rm,rh,iters\n";
  for (const auto& r : rows)
    out << r.step << ',' << detail::format_double(r.t) << ','
        << detail::format_double(r.mass) << ','
        << detail::format_double(r.energy) << ','
        << detail::format_double(r.rm) << ',' << detail::format_double(r.rh)
        << ',' << r.iters << '\n';
}

inline void write_error_csv(const std::string& path, const char* param_name,
                            const ErrorTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << param_name << ",error,order\n";
  for (const auto& r : table.rows) {
    out << detail::format_double(r.param) << ','
        << detail::format_double(r.error) << ',';
    if (std::isnan(r.order))
      out << "nan";
    else
      out << detail::format_double(r.order);
    out << '\n';
  }
}

inline void write_fields_csv(const std::string& path, const State& st) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  const GridSpec& g = st.grid();
  const RealField mag = phi_magnitude(st);
  if (g.dim() == 1) {
    out << "x,u,v,p,q,abs_phi\n";
    for (long j = 0; j < g.axis(0).n; ++j) {
      const std::size_t i = g.index(j);
      out << detail::format_double(g.node(0, j)) << ','
          << detail::format_double(st.u[i]) << ','
          << detail::format_double(st.v[i]) << ','
          << detail::format_double(st.p[i]) << ','
          << detail::format_double(st.q[i]) << ','
          << detail::format_double(mag[i]) << '\n';
    }
  } else {
    out << "x,y,u,v,p,q,abs_phi\n";
    for (long jx = 0; jx < g.axis(0).n; ++jx)
      for (long jy = 0; jy < g.axis(1).n; ++jy) {
        const std::size_t i = g.index(jx, jy);
        out << detail::format_double(g.node(0, jx)) << ','
            << detail::format_double(g.node(1, jy)) << ','
            << detail::format_double(st.u[i]) << ','
            << detail::format_double(st.v[i]) << ','
            << detail::format_double(st.p[i]) << ','
            << detail::format_double(st.q[i]) << ','
            << detail::format_double(mag[i]) << '\n';
      }
  }
}

/// Reads any CSV written by this module: header names plus cell strings.
inline std::vector<std::vector<std::string>> read_csv_raw(
    const std::string& path, std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv " + path);
  auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  header = split(line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split(line));
    if (rows.back().size() != header.size())
      throw std::runtime_error("ragged csv row in " + path);
  }
  return rows;
}

/// Numeric view of a CSV; all cells must parse as doubles.
inline std::vector<std::vector<double>> read_csv(
    const std::string& path, std::vector<std::string>& header) {
  std::vector<std::vector<double>> rows;
  for (const auto& raw : read_csv_raw(path, header)) {
    std::vector<double> row;
    row.reserve(raw.size());
    for (const std::string& cell : raw) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fkgs
