#pragma once

#include "qgt/model.hpp"

namespace qgt {

// Sudden switch m_i -> m_f at t = 0 with shared hopping scale J2: the chain
// is prepared in the ground band of H(m_i) and evolved under H(m_f).
struct QuenchProtocol {
  double m_i = 0.5;
  double m_f = 0.5;
  double j2 = 1.0;

  bool is_trivial() const { return m_i == m_f; }
  ModelParams initial() const { return {m_i, j2}; }
  ModelParams final() const { return {m_f, j2}; }

  void validate() const;  // throws ConfigInvalid
};

// Amplitudes of the pre-quench ground state on the post-quench bands:
// |u_i^-> = alpha |u_f^-> + beta |u_f^+>.
struct OverlapCoeffs {
  cplx alpha, beta;
};

// Built from W = (m_i + e^{-ik})(m_f + e^{ik}) as alpha = (|W| + W)/(2|W|),
// beta = (|W| - W)/(2|W|); |W| equals R~_i R~_f.  At the symmetry-locked
// momenta k in {0, pi} (W real) the coefficients are exactly 0 or 1.
OverlapCoeffs overlap_coeffs(const QuenchProtocol& q, double k);  // GapClosed

struct EvolvedState {
  double k, t;
  Spinor spinor;
};

// |psi_k(t)> = alpha e^{+i R_f t} |u_f^-> + beta e^{-i R_f t} |u_f^+> with
// R_f = J2 R~_f.  The formula extends smoothly to negative t (free evolution
// under the post-quench chain), which time stencils near t = 0 rely on.
EvolvedState evolved_state(const QuenchProtocol& q, double k, double t);

// Energy variance <H_f^2> - <H_f>^2 in the evolved state; time independent,
// equal to J2^2 (m_i - m_f)^2 sin^2 k / R~_i^2.  Needs only the initial gap.
double energy_variance(const QuenchProtocol& q, double k);  // GapClosed

// |beta|^2: weight excited across the gap; exactly 0 or 1 at k in {0, pi}.
double excitation_probability(const QuenchProtocol& q, double k);

// Minimal time for a significant state change of mode k: 1/sqrt(variance).
// Modes with zero variance never move; reported as +infinity, never as the
// silent result of a division.
double volatility_timescale(const QuenchProtocol& q, double k);

}  // namespace qgt
