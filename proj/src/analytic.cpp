#include "qgt/analytic.hpp"

#include <cmath>

namespace qgt {

QgtCoefficients coefficients(const QuenchProtocol& q, double k) {
  const TrigK tk = trig_k(k);
  const double ri = r_tilde(q.m_i, tk.k_red);
  const double rf = r_tilde(q.m_f, tk.k_red);
  if (ri <= tau_gap || rf <= tau_gap) {
    throw GapClosed("closed forms undefined at the gap closing");
  }
  QgtCoefficients co;
  co.a_i = (q.m_i * tk.c + 1.0) / (2.0 * ri * ri);
  co.a_f = (q.m_f * tk.c + 1.0) / (2.0 * rf * rf);
  // cos of the relative gauge phase: Re W / |W| with
  // W = (m_i + e^{-ik})(m_f + e^{ik}).
  const double re_w = (q.m_i + tk.c) * (q.m_f + tk.c) + tk.s * tk.s;
  const double cos_g = re_w / (ri * rf);
  co.b = -co.a_f * cos_g;
  co.c = q.j2 * q.m_f * (q.m_i - q.m_f) * tk.s * tk.s / (ri * rf * rf);
  co.d = -q.j2 * (q.m_i - q.m_f) * tk.s / ri;
  co.g_kk_i = co.a_i * co.a_i;
  return co;
}

MetricBreakdown metric_kk(const QuenchProtocol& q, double k, double t) {
  const QgtCoefficients co = coefficients(q, k);
  const double rf = q.j2 * r_tilde(q.m_f, k);
  const double s = std::sin(rf * t);
  const double s2 = s * s;
  MetricBreakdown mb;
  mb.g0 = co.g_kk_i + 4.0 * (co.b * co.b - co.a_i * co.a_f) * s2 +
          4.0 * (co.a_f * co.a_f - co.b * co.b) * s2 * s2;
  mb.g1 = 2.0 * co.b * co.c * std::sin(2.0 * rf * t);
  mb.g2 = co.c * co.c;
  mb.total = mb.g0 + mb.g1 * t + mb.g2 * t * t;
  return mb;
}

double metric_tt(const QuenchProtocol& q, double k) {
  return energy_variance(q, k);
}

cplx q_kt(const QuenchProtocol& q, double k, double t) {
  const QgtCoefficients co = coefficients(q, k);
  const double rf = q.j2 * r_tilde(q.m_f, k);
  const double s = std::sin(rf * t);
  const double re = co.d * (co.b * std::sin(2.0 * rf * t) + co.c * t);
  const double im = -co.d * (co.a_i - 2.0 * co.a_f * s * s);
  return {re, im};
}

double time_averaged_im_qkt(const QuenchProtocol& q, double k) {
  const QgtCoefficients co = coefficients(q, k);
  return co.d * (co.a_f - co.a_i);
}

double berry_curvature_kt(const QuenchProtocol& q, double k, double t) {
  return -2.0 * q_kt(q, k, t).imag();
}

QgtValue qgt_value(const QuenchProtocol& q, double k, double t) {
  const MetricBreakdown mb = metric_kk(q, k, t);
  const cplx qq = q_kt(q, k, t);
  return {mb.total, mb.g0,      mb.g1,      mb.g2,
          metric_tt(q, k), qq.real(), qq.imag()};
}

SignDiagnostic boundary_sign_diagnostic(const QuenchProtocol& q) {
  if (std::abs(q.m_i - 1.0) <= tau_gap) {
    throw AtCriticalPoint(
        "boundary connection sign undefined: initial chain sits at the "
        "critical dimerization");
  }
  if (q.is_trivial()) {
    throw AtCriticalPoint("sign analysis degenerate: nothing is quenched");
  }
  const auto cls = [](double x) {
    return x < 0.0 ? SignClass::negative : SignClass::positive;
  };
  SignDiagnostic sd;
  sd.a_i_near_pi = cls(1.0 - q.m_i);
  sd.d_negative_side = cls(q.m_i - q.m_f);
  const double product = (1.0 - q.m_i) * (q.m_i - q.m_f);
  sd.d_times_a_i = cls(product);
  sd.initial_im_qkt_negative_side = cls(-product);
  return sd;
}

}  // namespace qgt
