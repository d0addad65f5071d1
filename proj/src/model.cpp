#include "qgt/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qgt {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ModelParams::validate() const {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw ConfigInvalid("dimerization m must be finite and >= 0, got " +
                        std::to_string(m));
  }
  if (!(j2 > 0.0) || !std::isfinite(j2)) {
    throw ConfigInvalid("hopping scale j2 must be finite and > 0, got " +
                        std::to_string(j2));
  }
}

double reduce_k(double k) {
  double r = std::remainder(k, 2.0 * kPi);
  if (r == -kPi) r = kPi;  // fold the open end of (-pi, pi]
  return r;
}

TrigK trig_k(double k) {
  const double kr = reduce_k(k);
  if (kr == kPi) return {-1.0, 0.0, kr};  // exact zone edge
  return {std::cos(kr), std::sin(kr), kr};
}

double r_tilde(double m, double k) {
  const TrigK tk = trig_k(k);
  return std::sqrt(m * m + 1.0 + 2.0 * m * tk.c);
}

double r_tilde(const ModelParams& p, double k) { return r_tilde(p.m, k); }

bool near_degenerate(double m, double k, double window) {
  if (std::abs(m - 1.0) > tau_gap) return false;
  const double kr = reduce_k(k);
  return kPi - std::abs(kr) < window;
}

BlochVector bloch_vector(const ModelParams& p, double k) {
  const TrigK tk = trig_k(k);
  return {-p.j2 * (p.m + tk.c), p.j2 * tk.s, 0.0};
}

double Spinor::norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }

cplx dot(const Spinor& a, const Spinor& b) {
  return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

Spinor Mat2::operator*(const Spinor& s) const {
  return {m00 * s.c0 + m01 * s.c1, m10 * s.c0 + m11 * s.c1};
}

Mat2 hamiltonian(const ModelParams& p, double k) {
  const TrigK tk = trig_k(k);
  const cplx off_upper = -p.j2 * cplx(p.m + tk.c, tk.s);   // -J2 (m + e^{ik})
  const cplx off_lower = -p.j2 * cplx(p.m + tk.c, -tk.s);  // -J2 (m + e^{-ik})
  return {0.0, off_upper, off_lower, 0.0};
}

EigenSystem eigensystem(const ModelParams& p, double k) {
  const TrigK tk = trig_k(k);
  const double rt = std::sqrt(p.m * p.m + 1.0 + 2.0 * p.m * tk.c);
  if (rt <= tau_gap) {
    throw GapClosed("eigenbasis degenerate at m=" + std::to_string(p.m) +
                    ", k=" + std::to_string(tk.k_red));
  }
  constexpr double inv_sqrt2 = 0.7071067811865476;
  const cplx lower(p.m + tk.c, -tk.s);  // m + e^{-ik}
  const cplx phase = lower / rt;        // unit modulus
  EigenSystem es;
  es.e_minus = -p.j2 * rt;
  es.e_plus = p.j2 * rt;
  es.u_minus = {inv_sqrt2, inv_sqrt2 * phase};
  es.u_plus = {inv_sqrt2, -inv_sqrt2 * phase};
  return es;
}

double berry_connection(const ModelParams& p, double k) {
  const TrigK tk = trig_k(k);
  const double rt2 = p.m * p.m + 1.0 + 2.0 * p.m * tk.c;
  if (rt2 <= tau_gap * tau_gap) {
    throw GapClosed("Berry connection undefined at the gap closing");
  }
  return (p.m * tk.c + 1.0) / (2.0 * rt2);
}

double group_velocity(const ModelParams& p, double k, Band band) {
  const TrigK tk = trig_k(k);
  const double rt = std::sqrt(p.m * p.m + 1.0 + 2.0 * p.m * tk.c);
  if (rt <= tau_gap) {
    throw GapClosed("group velocity undefined at the gap closing");
  }
  const double v = p.j2 * p.m * tk.s / rt;
  return band == Band::plus ? v : -v;
}

double ground_metric_kk(const ModelParams& p, double k) {
  const double a = berry_connection(p, k);
  return a * a;
}

}  // namespace qgt
