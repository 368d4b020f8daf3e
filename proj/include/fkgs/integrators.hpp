// SPDX-License-Identifier: Apache-2.0
//
// One-step maps for the semi-discrete system
//   U_t = 2V
//   V_t = (D^b U - U + P^2 + Q^2)/2
//   P_t =  D^a Q/2 + U.Q
//   Q_t = -D^a P/2 - U.P
//
// Four conservative schemes built from averaged vector fields:
//   FAVF      - all variables averaged; fully implicit; preserves energy.
//   FPAVF     - partitioned averages; the (U,V) block closes over the old
//               (P,Q) and solves in one shifted spectral solve, then the
//               (P,Q) block is a Cayley (trapezoidal) update with
//               A = D^a/2 + diag(U^{m+1}); preserves mass and energy,
//               first order.
//   FPAVF_ADJ - the adjoint map: (P,Q) first with A built on U^m, then
//               (U,V) closing over the new (P,Q).
//   FPAVF_C   - half step of FPAVF composed with half step of the adjoint;
//               symmetric, second order.
//   FPAVF_P   - single-step averaged variant: the Cayley coefficient is the
//               midpoint U^{m+1/2} and the wave source averages the old and
//               new |phi|^2; fully coupled, symmetric, second order.
//
// The (P,Q) updates are isometries of the h-weighted norm whenever the
// Cayley system is solved exactly, which is what makes the mass drift sit
// at the solver floor. Implicit couplings are resolved by fixed-point
// sweeps with the mode-diagonal part always implicit and the pointwise
// products lagged; the update norm is scaled by 1 + the input state norm.

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "fkgs/avf.hpp"
#include "fkgs/field.hpp"
#include "fkgs/model.hpp"
#include "fkgs/spectral.hpp"

namespace fkgs {

enum class SchemeKind { FAVF, FPAVF, FPAVF_ADJ, FPAVF_C, FPAVF_P };

inline const char* to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::FAVF: return "favf";
    case SchemeKind::FPAVF: return "fpavf";
    case SchemeKind::FPAVF_ADJ: return "fpavf-adj";
    case SchemeKind::FPAVF_C: return "fpavf-c";
    case SchemeKind::FPAVF_P: return "fpavf-p";
  }
  return "?";
}

inline std::optional<SchemeKind> parse_scheme(std::string_view name) {
  if (name == "favf") return SchemeKind::FAVF;
  if (name == "fpavf") return SchemeKind::FPAVF;
  if (name == "fpavf-adj") return SchemeKind::FPAVF_ADJ;
  if (name == "fpavf-c") return SchemeKind::FPAVF_C;
  if (name == "fpavf-p") return SchemeKind::FPAVF_P;
  return std::nullopt;
}

struct StepReport {
  int iterations = 0;    // fixed-point sweeps (0 for purely direct solves)
  double residual = 0.0; // last scaled update norm
  bool converged = true;
};

class StepError : public std::runtime_error {
 public:
  StepError(const std::string& msg, int iterations, double residual)
      : std::runtime_error(msg), iterations(iterations), residual(residual) {}

  int iterations;
  double residual;
};

struct StepResult {
  State state;
  StepReport report;
};

namespace detail {

inline double state_scale(const State& st) {
  return 1.0 + std::max(std::max(inf_norm(st.u), inf_norm(st.v)),
                        std::max(inf_norm(st.p), inf_norm(st.q)));
}

/// L = D^b - I applied nodewise.
inline RealField apply_wave_operator(const RealField& f,
                                     const SpectralMultiplier& mb) {
  RealField out = apply_neg_frac_laplacian(f, mb);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= f[i];
  return out;
}

/// Closed-form (U,V) block update: given the nodal source S, solve
///   (U'-U)/tau = V + V'
///   (V'-V)/tau = L (U+U')/2 + S,   L = D^b - I.
/// Eliminating U' gives ((1+tau^2/4) I - (tau^2/4) D^b) V' = rhs, a single
/// mode-diagonal solve.
struct WaveBlock {
  const RealField* u;
  const RealField* v;
  const SpectralMultiplier* mb;
  double tau;
  RealField rhs_base;  // V + (tau/2) L U + (tau^2/4) L V

  WaveBlock(const RealField& u_in, const RealField& v_in,
            const SpectralMultiplier& mb_in, double tau_in)
      : u(&u_in), v(&v_in), mb(&mb_in), tau(tau_in), rhs_base(u_in.grid()) {
    const RealField lu = apply_wave_operator(u_in, mb_in);
    const RealField lv = apply_wave_operator(v_in, mb_in);
    for (std::size_t i = 0; i < rhs_base.size(); ++i)
      rhs_base[i] = v_in[i] + 0.5 * tau * lu[i] + 0.25 * tau * tau * lv[i];
  }

  std::pair<RealField, RealField> solve(const RealField& source) const {
    RealField rhs = rhs_base;
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += tau * source[i];
    RealField v_new =
        solve_shifted(1.0 + 0.25 * tau * tau, 0.25 * tau * tau, *mb, rhs);
    RealField u_new(u->grid());
    for (std::size_t i = 0; i < u_new.size(); ++i)
      u_new[i] = (*u)[i] + tau * ((*v)[i] + v_new[i]);
    return {std::move(u_new), std::move(v_new)};
  }
};

/// Right-hand side of the Cayley system (I + i tau A/2) w' = (I - i tau A/2) w
/// with A = D^a/2 + diag(g): r = w - i (tau/4) D^a w - i (tau/2) g.w.
inline ComplexField cayley_rhs(const ComplexField& w, const ComplexField& daw,
                               const RealField& g, double tau) {
  ComplexField r(w.grid());
  const std::complex<double> ii(0.0, 1.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    r[i] = w[i] - ii * (0.25 * tau * daw[i] + 0.5 * tau * g[i] * w[i]);
  return r;
}

/// One lagged sweep: (I + i (tau/4) D^a) w' = r - i (tau/2) g.w_lag.
inline ComplexField cayley_sweep(const ComplexField& r, const RealField& g,
                                 const ComplexField& w_lag, double tau,
                                 const SpectralMultiplier& ma) {
  ComplexField rhs(r.grid());
  const std::complex<double> ii(0.0, 1.0);
  for (std::size_t i = 0; i < rhs.size(); ++i)
    rhs[i] = r[i] - ii * 0.5 * tau * g[i] * w_lag[i];
  return solve_shifted(std::complex<double>(1.0, 0.0),
                       std::complex<double>(0.0, -0.25 * tau), ma, rhs);
}

/// Full Cayley solve with fixed coefficient field g, iterated to tolerance.
inline ComplexField cayley_solve(const ComplexField& w, const RealField& g,
                                 double tau, const SpectralMultiplier& ma,
                                 const Params& pr, double scale,
                                 StepReport& rep) {
  const ComplexField daw = apply_neg_frac_laplacian(w, ma);
  const ComplexField r = cayley_rhs(w, daw, g, tau);
  ComplexField w_new = w;
  for (int it = 0; it < pr.max_iter; ++it) {
    ComplexField w_next = cayley_sweep(r, g, w_new, tau, ma);
    const double update = inf_diff(w_next, w_new) / scale;
    w_new = std::move(w_next);
    ++rep.iterations;
    rep.residual = update;
    if (update <= pr.tol) return w_new;
  }
  rep.converged = false;
  throw StepError("fixed-point iteration did not converge (residual " +
                      std::to_string(rep.residual) + ")",
                  rep.iterations, rep.residual);
}

inline RealField half_abs2(const RealField& p, const RealField& q,
                           double factor) {
  RealField s(p.grid());
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = factor * (p[i] * p[i] + q[i] * q[i]);
  return s;
}

inline void check_step_inputs(const State& st, const Params& pr,
                              const SpectralMultiplier& ma,
                              const SpectralMultiplier& mb) {
  require_same_grid(st.grid(), ma.grid(), "step");
  require_same_grid(st.grid(), mb.grid(), "step");
  if (!(pr.tau != 0.0) || !std::isfinite(pr.tau))
    throw std::invalid_argument("step size must be finite and nonzero");
  if (!(pr.tol > 0.0) || pr.max_iter < 1)
    throw std::invalid_argument("invalid solver controls");
}

}  // namespace detail

/// Partitioned scheme: (U,V) block first with the old |phi|^2, then the
/// (P,Q) Cayley update with A built on the new U.
inline StepResult step_fpavf(const State& st, const Params& pr,
                             const SpectralMultiplier& ma,
                             const SpectralMultiplier& mb) {
  detail::check_step_inputs(st, pr, ma, mb);
  const double tau = pr.tau;
  StepReport rep;
  const double scale = detail::state_scale(st);

  const RealField source = detail::half_abs2(st.p, st.q, 0.5);
  detail::WaveBlock wave(st.u, st.v, mb, tau);
  auto [u_new, v_new] = wave.solve(source);

  const ComplexField w = to_complex(st.p, st.q);
  const ComplexField w_new =
      detail::cayley_solve(w, u_new, tau, ma, pr, scale, rep);

  State out{std::move(u_new), std::move(v_new), real_part(w_new),
            imag_part(w_new), st.t + tau};
  return {std::move(out), rep};
}

/// Adjoint map: (P,Q) Cayley update with A built on the old U, then the
/// (U,V) block with the new |phi|^2.
inline StepResult step_fpavf_adjoint(const State& st, const Params& pr,
                                     const SpectralMultiplier& ma,
                                     const SpectralMultiplier& mb) {
  detail::check_step_inputs(st, pr, ma, mb);
  const double tau = pr.tau;
  StepReport rep;
  const double scale = detail::state_scale(st);

  const ComplexField w = to_complex(st.p, st.q);
  const ComplexField w_new =
      detail::cayley_solve(w, st.u, tau, ma, pr, scale, rep);
  RealField p_new = real_part(w_new);
  RealField q_new = imag_part(w_new);

  const RealField source = detail::half_abs2(p_new, q_new, 0.5);
  detail::WaveBlock wave(st.u, st.v, mb, tau);
  auto [u_new, v_new] = wave.solve(source);

  State out{std::move(u_new), std::move(v_new), std::move(p_new),
            std::move(q_new), st.t + tau};
  return {std::move(out), rep};
}

/// Composition: half step of the partitioned map, half step of its adjoint.
inline StepResult step_fpavf_c(const State& st, const Params& pr,
                               const SpectralMultiplier& ma,
                               const SpectralMultiplier& mb) {
  Params half = pr;
  half.tau = 0.5 * pr.tau;
  StepResult a = step_fpavf(st, half, ma, mb);
  StepResult b = step_fpavf_adjoint(a.state, half, ma, mb);
  b.report.iterations += a.report.iterations;
  b.report.residual = std::max(a.report.residual, b.report.residual);
  b.report.converged = a.report.converged && b.report.converged;
  return b;
}

/// Averaged single-step variant: wave source is the mean of old and new
/// |phi|^2 and the Cayley coefficient is the midpoint U; all blocks coupled,
/// resolved by one outer fixed point.
inline StepResult step_fpavf_p(const State& st, const Params& pr,
                               const SpectralMultiplier& ma,
                               const SpectralMultiplier& mb) {
  detail::check_step_inputs(st, pr, ma, mb);
  const double tau = pr.tau;
  StepReport rep;
  const double scale = detail::state_scale(st);

  detail::WaveBlock wave(st.u, st.v, mb, tau);
  const ComplexField w = to_complex(st.p, st.q);
  const ComplexField daw = apply_neg_frac_laplacian(w, ma);

  RealField u_new = st.u;
  RealField v_new = st.v;
  ComplexField w_new = w;
  RealField g(st.grid());

  for (int it = 0; it < pr.max_iter; ++it) {
    RealField source(st.grid());
    for (std::size_t i = 0; i < source.size(); ++i) {
      const double p1 = w_new[i].real(), q1 = w_new[i].imag();
      source[i] = 0.25 * (st.p[i] * st.p[i] + st.q[i] * st.q[i] + p1 * p1 +
                          q1 * q1);
    }
    auto [u_next, v_next] = wave.solve(source);
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] = 0.5 * (st.u[i] + u_next[i]);
    const ComplexField r = detail::cayley_rhs(w, daw, g, tau);
    ComplexField w_next = detail::cayley_sweep(r, g, w_new, tau, ma);

    const double update =
        std::max(std::max(inf_diff(u_next, u_new), inf_diff(v_next, v_new)),
                 inf_diff(w_next, w_new)) /
        scale;
    u_new = std::move(u_next);
    v_new = std::move(v_next);
    w_new = std::move(w_next);
    ++rep.iterations;
    rep.residual = update;
    if (update <= pr.tol) {
      State out{std::move(u_new), std::move(v_new), real_part(w_new),
                imag_part(w_new), st.t + tau};
      return {std::move(out), rep};
    }
  }
  rep.converged = false;
  throw StepError("fpavf-p fixed point did not converge (residual " +
                      std::to_string(rep.residual) + ")",
                  rep.iterations, rep.residual);
}

/// Fully averaged scheme: wave source uses the quadratic line averages of P
/// and Q, the (P,Q) update averages the U.P / U.Q products bilinearly; only
/// energy is preserved. Solved by a global fixed point with every pointwise
/// average lagged.
inline StepResult step_favf(const State& st, const Params& pr,
                            const SpectralMultiplier& ma,
                            const SpectralMultiplier& mb) {
  detail::check_step_inputs(st, pr, ma, mb);
  const double tau = pr.tau;
  StepReport rep;
  const double scale = detail::state_scale(st);

  detail::WaveBlock wave(st.u, st.v, mb, tau);
  const ComplexField w = to_complex(st.p, st.q);
  const ComplexField daw = apply_neg_frac_laplacian(w, ma);
  const std::complex<double> ii(0.0, 1.0);

  RealField u_new = st.u;
  RealField v_new = st.v;
  ComplexField w_new = w;

  for (int it = 0; it < pr.max_iter; ++it) {
    RealField source(st.grid());
    for (std::size_t i = 0; i < source.size(); ++i)
      source[i] =
          0.5 * (quadratic_mean(st.p[i], w_new[i].real()) +
                 quadratic_mean(st.q[i], w_new[i].imag()));
    auto [u_next, v_next] = wave.solve(source);

    // (w'-w)/tau = -i (D^a (w+w')/2) / 2 - i B(u, u', w, w');
    // keep the mode-diagonal half implicit, lag the bilinear average.
    ComplexField rhs(st.grid());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const std::complex<double> b =
          bilinear_mean(st.u[i], u_next[i], w[i], w_new[i]);
      rhs[i] = w[i] - ii * (0.25 * tau * daw[i] + tau * b);
    }
    ComplexField w_next =
        solve_shifted(std::complex<double>(1.0, 0.0),
                      std::complex<double>(0.0, -0.25 * tau), ma, rhs);

    const double update =
        std::max(std::max(inf_diff(u_next, u_new), inf_diff(v_next, v_new)),
                 inf_diff(w_next, w_new)) /
        scale;
    u_new = std::move(u_next);
    v_new = std::move(v_next);
    w_new = std::move(w_next);
    ++rep.iterations;
    rep.residual = update;
    if (update <= pr.tol) {
      State out{std::move(u_new), std::move(v_new), real_part(w_new),
                imag_part(w_new), st.t + tau};
      return {std::move(out), rep};
    }
  }
  rep.converged = false;
  throw StepError("favf fixed point did not converge (residual " +
                      std::to_string(rep.residual) + ")",
                  rep.iterations, rep.residual);
}

inline StepResult step(SchemeKind scheme, const State& st, const Params& pr,
                       const SpectralMultiplier& ma,
                       const SpectralMultiplier& mb) {
  switch (scheme) {
    case SchemeKind::FAVF: return step_favf(st, pr, ma, mb);
    case SchemeKind::FPAVF: return step_fpavf(st, pr, ma, mb);
    case SchemeKind::FPAVF_ADJ: return step_fpavf_adjoint(st, pr, ma, mb);
    case SchemeKind::FPAVF_C: return step_fpavf_c(st, pr, ma, mb);
    case SchemeKind::FPAVF_P: return step_fpavf_p(st, pr, ma, mb);
  }
  throw std::invalid_argument("unknown scheme");
}

using StepObserver = std::function<void(const State&, const StepReport&)>;

/// Advances the state to the horizon with round(T/tau) steps (none if the
/// horizon is shorter than a step). Time is kept as t0 + m*tau to avoid
/// accumulation drift. A step failure aborts with the step index attached.
inline State evolve(State st, const Params& pr, SchemeKind scheme,
                    const SpectralMultiplier& ma, const SpectralMultiplier& mb,
                    const StepObserver& observer = {}) {
  pr.validate();
  require_same_grid(st.grid(), ma.grid(), "evolve");
  long long nsteps = std::llround(pr.t_final / pr.tau);
  if (pr.t_final < pr.tau) nsteps = 0;
  const double t0 = st.t;
  for (long long m = 0; m < nsteps; ++m) {
    StepResult res;
    try {
      res = step(scheme, st, pr, ma, mb);
    } catch (const StepError& err) {
      throw StepError("step " + std::to_string(m + 1) + " of " +
                          std::to_string(nsteps) + " failed: " + err.what(),
                      err.iterations, err.residual);
    }
    st = std::move(res.state);
    st.t = t0 + static_cast<double>(m + 1) * pr.tau;
    if (observer) observer(st, res.report);
  }
  return st;
}

/// Instantaneous right-hand side of the semi-discrete system; the canonical
/// gradient structure ties it to the energy functional, which the gradient
/// consistency tests exercise.
struct StateDeriv {
  RealField du, dv, dp, dq;
};

inline StateDeriv semi_discrete_rhs(const State& st,
                                    const SpectralMultiplier& ma,
                                    const SpectralMultiplier& mb) {
  require_same_grid(st.grid(), ma.grid(), "semi_discrete_rhs");
  require_same_grid(st.grid(), mb.grid(), "semi_discrete_rhs");
  const RealField dbu = apply_neg_frac_laplacian(st.u, mb);
  const RealField dap = apply_neg_frac_laplacian(st.p, ma);
  const RealField daq = apply_neg_frac_laplacian(st.q, ma);
  StateDeriv d{RealField(st.grid()), RealField(st.grid()),
               RealField(st.grid()), RealField(st.grid())};
  for (std::size_t i = 0; i < st.u.size(); ++i) {
    const double u = st.u[i], v = st.v[i], p = st.p[i], q = st.q[i];
    d.du[i] = 2.0 * v;
    d.dv[i] = 0.5 * (dbu[i] - u + p * p + q * q);
    d.dp[i] = 0.5 * daq[i] + u * q;
    d.dq[i] = -0.5 * dap[i] - u * p;
  }
  return d;
}

}  // namespace fkgs
