#pragma once

#include "qgt/quench.hpp"

namespace qgt {

// Scalar ledger behind every closed-form tensor component at fixed k.
struct QgtCoefficients {
  double a_i, a_f;  // Berry connections of the initial/final ground bands
  double b;         // oscillation modulation  -a_f (2 Re alpha - 1)
  double c;         // secular rate  J2 m_f (m_i - m_f) sin^2 k / (R~_i R~_f^2)
  double d;         // quench activation  -J2 (m_i - m_f) sin k / R~_i
  double g_kk_i;    // pre-quench metric  a_i^2
};
QgtCoefficients coefficients(const QuenchProtocol& q, double k);  // GapClosed

// g_kk(k, t) = g0(t) + g1(t) t + g2 t^2 with
//   g0(t) = g_kk_i + 4 (b^2 - a_i a_f) sin^2(R_f t) + 4 (a_f^2 - b^2) sin^4(R_f t)
//   g1(t) = 2 b c sin(2 R_f t)
//   g2    = c^2
struct MetricBreakdown {
  double total;
  double g0, g1, g2;  // g0 and g1 carry the oscillatory factors at this t
};
MetricBreakdown metric_kk(const QuenchProtocol& q, double k, double t);

// g_tt = d^2 = energy variance; time independent.
double metric_tt(const QuenchProtocol& q, double k);

// Q_kt(k, t) = d [ b sin(2 R_f t) + c t ]  -  i d [ a_i - 2 a_f sin^2(R_f t) ];
// odd in k, identically zero for a trivial quench.
cplx q_kt(const QuenchProtocol& q, double k, double t);

// Long-time mean of Im Q_kt: d (a_f - a_i).
double time_averaged_im_qkt(const QuenchProtocol& q, double k);

// Momentum-time Berry curvature -2 Im Q_kt.
double berry_curvature_kt(const QuenchProtocol& q, double k, double t);

// All closed-form components at one (k, t).
struct QgtValue {
  double g_kk, g0, g1, g2;
  double g_tt;
  double re_qkt, im_qkt;
};
QgtValue qgt_value(const QuenchProtocol& q, double k, double t);

enum class SignClass { negative, positive };

// Sign structure of Im Q_kt near the zone boundary, classified on the
// negative-k side just above -pi: a_i carries the sign of (1 - m_i) there,
// d the sign of (m_i - m_f), and the initial peaks of Im Q_kt start at
// -d a_i, i.e. opposite in sign to the product d a_i.
struct SignDiagnostic {
  SignClass a_i_near_pi;
  SignClass d_negative_side;
  SignClass d_times_a_i;
  SignClass initial_im_qkt_negative_side;
};

// Throws AtCriticalPoint when m_i = 1 (connection sign undefined at the
// boundary) or for a trivial quench (d vanishes identically).
SignDiagnostic boundary_sign_diagnostic(const QuenchProtocol& q);

}  // namespace qgt
