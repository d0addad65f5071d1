#include "qgt/numeric.hpp"

#include <cmath>
#include <string>

#include "qgt/analytic.hpp"

namespace qgt {

namespace {

constexpr double kDegenerateWindow = 0.05;

void check_steps(const FdConfig& cfg) {
  const auto bad = [](double h) {
    return !(h >= fd_step_min) || !(h <= fd_step_max);
  };
  if (bad(cfg.dk) || bad(cfg.dt)) {
    throw StepTooLarge("stencil steps must lie in [" +
                       std::to_string(fd_step_min) + ", " +
                       std::to_string(fd_step_max) + "]");
  }
}

void check_stencil(const QuenchProtocol& q, double k, double dk) {
  const double window = std::max(kDegenerateWindow, 2.0 * dk);
  if (near_degenerate(q.m_i, k, window) || near_degenerate(q.m_f, k, window)) {
    throw DegenerateStencil("stencil touches the gap-closing momentum");
  }
}

// Rescale `s` so that <center|s> is real and positive.
Spinor align(const Spinor& center, const Spinor& s) {
  const cplx o = dot(center, s);
  const double a = std::abs(o);
  if (a == 0.0) return s;  // orthogonal neighbor: nothing to align
  const cplx u = std::conj(o) / a;
  return {u * s.c0, u * s.c1};
}

Spinor diff(const Spinor& p, const Spinor& m, double h) {
  const double inv = 1.0 / (2.0 * h);
  return {(p.c0 - m.c0) * inv, (p.c1 - m.c1) * inv};
}

QgtMatrix assemble(const StateFn& psi, double k, double t,
                   const FdConfig& cfg) {
  const Spinor c = psi(k, t);
  Spinor kp = psi(k + cfg.dk, t);
  Spinor km = psi(k - cfg.dk, t);
  Spinor tp = psi(k, t + cfg.dt);
  Spinor tm = psi(k, t - cfg.dt);
  if (cfg.gauge_align) {
    kp = align(c, kp);
    km = align(c, km);
    tp = align(c, tp);
    tm = align(c, tm);
  }
  const Spinor dk = diff(kp, km, cfg.dk);
  const Spinor dt = diff(tp, tm, cfg.dt);

  const cplx pk = dot(dk, c);  // <d_k psi|psi>
  const cplx pt = dot(c, dt);  // <psi|d_t psi>
  const cplx qkk = dot(dk, dk) - pk * std::conj(pk);
  const cplx qtt = dot(dt, dt) - std::conj(pt) * pt;
  const cplx qkt = dot(dk, dt) - pk * pt;
  const cplx qtk = dot(dt, dk) - std::conj(pt) * std::conj(pk);
  return {qkk.real(), qkt, qtk, qtt.real()};
}

}  // namespace

QgtMatrix numeric_qgt(const QuenchProtocol& q, double k, double t,
                      const FdConfig& cfg) {
  check_steps(cfg);
  check_stencil(q, k, cfg.dk);
  const StateFn psi = [&q](double kk, double tt) {
    return evolved_state(q, kk, tt).spinor;
  };
  return assemble(psi, k, t, cfg);
}

QgtMatrix numeric_qgt_of(const StateFn& psi, double k, double t,
                         const FdConfig& cfg) {
  check_steps(cfg);
  return assemble(psi, k, t, cfg);
}

double variance_velocity(const QuenchProtocol& q, double k) {
  const OverlapCoeffs ab = overlap_coeffs(q, k);
  const double vm = group_velocity(q.final(), k, Band::minus);
  const double vp = group_velocity(q.final(), k, Band::plus);
  const double wa = std::norm(ab.alpha);
  const double wb = std::norm(ab.beta);
  const double mean = wa * vm + wb * vp;
  return wa * vm * vm + wb * vp * vp - mean * mean;
}

cplx covariance_x_h(const QuenchProtocol& q, double k, double t,
                    const FdConfig& cfg) {
  check_steps(cfg);
  check_stencil(q, k, cfg.dk);
  const Spinor c = evolved_state(q, k, t).spinor;
  Spinor kp = evolved_state(q, k + cfg.dk, t).spinor;
  Spinor km = evolved_state(q, k - cfg.dk, t).spinor;
  if (cfg.gauge_align) {
    kp = align(c, kp);
    km = align(c, km);
  }
  const Spinor dk = diff(kp, km, cfg.dk);
  // x psi = i d_k psi, so <x psi| = -i <d_k psi|.
  const Mat2 hf = hamiltonian(q.final(), k);
  const Spinor hpsi = hf * c;
  const cplx xh = cplx(0.0, -1.0) * dot(dk, hpsi);
  const cplx x_mean = cplx(0.0, -1.0) * dot(dk, c);
  const cplx h_mean = dot(c, hpsi);
  return xh - x_mean * h_mean;
}

HeisenbergTerms heisenberg_metric(const QuenchProtocol& q, double k, double t,
                                  const FdConfig& cfg) {
  check_steps(cfg);
  check_stencil(q, k, cfg.dk);
  const Spinor c = evolved_state(q, k, t).spinor;
  Spinor kp = evolved_state(q, k + cfg.dk, t).spinor;
  Spinor km = evolved_state(q, k - cfg.dk, t).spinor;
  if (cfg.gauge_align) {
    kp = align(c, kp);
    km = align(c, km);
  }
  const Spinor dpsi = diff(kp, km, cfg.dk);

  // Band-diagonal velocity D = d_k(J2 R~_f) (P_+ - P_-).
  const EigenSystem ef = eigensystem(q.final(), k);
  const TrigK tk = trig_k(k);
  const double rf = r_tilde(q.m_f, tk.k_red);
  const double drf = -q.j2 * q.m_f * tk.s / rf;
  const cplx wp = dot(ef.u_plus, c);
  const cplx wm = dot(ef.u_minus, c);
  const Spinor dv{drf * (wp * ef.u_plus.c0 - wm * ef.u_minus.c0),
                  drf * (wp * ef.u_plus.c1 - wm * ef.u_minus.c1)};

  // Geometric position action at fixed t: g = i d_k psi - t D psi.
  const cplx i1(0.0, 1.0);
  const Spinor g{i1 * dpsi.c0 - t * dv.c0, i1 * dpsi.c1 - t * dv.c1};

  const auto perp = [&c](const Spinor& a, const Spinor& b) {
    return dot(a, b) - dot(a, c) * dot(c, b);
  };
  HeisenbergTerms h;
  h.var_x = perp(g, g).real();
  h.cov_xv = perp(g, dv).real();
  h.var_v = perp(dv, dv).real();
  return h;
}

ConstancyReport no_quench_constancy(const ModelParams& p, double k,
                                    const std::vector<double>& t_samples,
                                    const FdConfig& cfg, double tol) {
  if (t_samples.empty()) {
    throw ConfigInvalid("constancy check needs at least one time sample");
  }
  const QuenchProtocol q{p.m, p.m, p.j2};
  ConstancyReport rep;
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (double t : t_samples) {
    const double v = numeric_qgt(q, k, t, cfg).q_kk;
    rep.mean += v;
    lo = first ? v : std::min(lo, v);
    hi = first ? v : std::max(hi, v);
    first = false;
  }
  rep.mean /= static_cast<double>(t_samples.size());
  rep.spread = hi - lo;
  rep.static_value = ground_metric_kk(p, k);
  rep.constant = rep.spread < tol;
  return rep;
}

}  // namespace qgt
