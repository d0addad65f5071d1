#pragma once

#include <functional>
#include <vector>

#include "qgt/quench.hpp"

namespace qgt {

// Second-order central differences with optional phase alignment: each
// neighbor state is rescaled so its overlap with the center state is real
// and positive before differencing, which makes the assembled tensor
// insensitive to the phase convention of the state family.
struct FdConfig {
  double dk = 1e-4;
  double dt = 1e-4;
  bool gauge_align = true;
};

// Steps accepted by the stencils.
inline constexpr double fd_step_min = 1e-7;
inline constexpr double fd_step_max = 1e-2;

struct QgtMatrix {
  double q_kk;
  cplx q_kt, q_tk;
  double q_tt;
};

// Finite-difference tensor over (k, t) assembled from the raw evolved state:
// Q_uv = <d_u psi|d_v psi> - <d_u psi|psi><psi|d_v psi>.
// Throws StepTooLarge when cfg is out of bounds and DegenerateStencil when
// the evaluation sits within 0.05 of a gap-closing momentum.
QgtMatrix numeric_qgt(const QuenchProtocol& q, double k, double t,
                      const FdConfig& cfg = {});

// Same assembly for an arbitrary normalized state family; lets tests probe
// phase-twisted copies of the evolved state.
using StateFn = std::function<Spinor(double k, double t)>;
QgtMatrix numeric_qgt_of(const StateFn& psi, double k, double t,
                         const FdConfig& cfg = {});

// Variance of the band velocity in the evolved state, from the spectral
// weights:  |alpha|^2 v_-^2 + |beta|^2 v_+^2 - (|alpha|^2 v_- + |beta|^2 v_+)^2.
// Time independent; equals the squared secular coefficient c.
double variance_velocity(const QuenchProtocol& q, double k);  // GapClosed

// Covariance route to Q_kt: Cov(x, H_f) = <x psi|H_f psi> - <x><H_f> with the
// position operator realized as i d_k on the evolved state (H_f applied
// exactly, no time stencil).
cplx covariance_x_h(const QuenchProtocol& q, double k, double t,
                    const FdConfig& cfg = {});

// Position/velocity split of the metric growth: with the band-diagonal
// velocity D = d_k(J2 R~_f) (P_+ - P_-) and the geometric position action
// g = i d_k psi - t D psi at fixed t,
//   var_x + 2 t cov_xv + t^2 var_v == q_kk  (identically, any t),
// and var_v is time independent and equals c^2.
struct HeisenbergTerms {
  double var_x;
  double cov_xv;
  double var_v;
};
HeisenbergTerms heisenberg_metric(const QuenchProtocol& q, double k, double t,
                                  const FdConfig& cfg = {});

// Re-evaluates the finite-difference q_kk of an unquenched chain over a set
// of times; the spread certifies time independence.
struct ConstancyReport {
  double mean = 0.0;
  double spread = 0.0;        // max - min over the samples
  double static_value = 0.0;  // closed-form ground metric at this k
  bool constant = false;      // spread < tol
};
ConstancyReport no_quench_constancy(const ModelParams& p, double k,
                                    const std::vector<double>& t_samples,
                                    const FdConfig& cfg = {},
                                    double tol = 1e-8);

}  // namespace qgt
