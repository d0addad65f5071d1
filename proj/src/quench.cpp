#include "qgt/quench.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qgt {

void QuenchProtocol::validate() const {
  initial().validate();
  final().validate();
}

namespace {

// W = (m_i + e^{-ik})(m_f + e^{ik}); |W| = R~_i R~_f, arg W the relative
// phase between the two gauges.
cplx overlap_kernel(const QuenchProtocol& q, const TrigK& tk) {
  const cplx wi(q.m_i + tk.c, -tk.s);
  const cplx wf(q.m_f + tk.c, tk.s);
  return wi * wf;
}

void require_gapped(const QuenchProtocol& q, const TrigK& tk) {
  if (r_tilde(q.m_i, tk.k_red) <= tau_gap ||
      r_tilde(q.m_f, tk.k_red) <= tau_gap) {
    throw GapClosed("overlap undefined: band gap closes at k=" +
                    std::to_string(tk.k_red));
  }
}

}  // namespace

OverlapCoeffs overlap_coeffs(const QuenchProtocol& q, double k) {
  const TrigK tk = trig_k(k);
  require_gapped(q, tk);
  const cplx w = overlap_kernel(q, tk);
  const double aw = std::abs(w);
  return {(aw + w) / (2.0 * aw), (aw - w) / (2.0 * aw)};
}

EvolvedState evolved_state(const QuenchProtocol& q, double k, double t) {
  const TrigK tk = trig_k(k);
  const OverlapCoeffs ab = overlap_coeffs(q, tk.k_red);
  const EigenSystem ef = eigensystem(q.final(), tk.k_red);
  const double rf = q.j2 * r_tilde(q.m_f, tk.k_red);
  const cplx ph_minus = std::polar(1.0, rf * t);   // e^{-i E_- t}, E_- = -R_f
  const cplx ph_plus = std::polar(1.0, -rf * t);
  const cplx ca = ab.alpha * ph_minus;
  const cplx cb = ab.beta * ph_plus;
  Spinor s{ca * ef.u_minus.c0 + cb * ef.u_plus.c0,
           ca * ef.u_minus.c1 + cb * ef.u_plus.c1};
  return {tk.k_red, t, s};
}

double energy_variance(const QuenchProtocol& q, double k) {
  const TrigK tk = trig_k(k);
  const double ri = r_tilde(q.m_i, tk.k_red);
  if (ri <= tau_gap) {
    throw GapClosed("energy variance diverges at the initial gap closing");
  }
  const double d = q.j2 * (q.m_i - q.m_f) * tk.s / ri;
  return d * d;
}

double excitation_probability(const QuenchProtocol& q, double k) {
  const OverlapCoeffs ab = overlap_coeffs(q, k);
  return std::norm(ab.beta);
}

double volatility_timescale(const QuenchProtocol& q, double k) {
  const double var = energy_variance(q, k);
  if (var == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(var);
}

}  // namespace qgt
