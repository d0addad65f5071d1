#pragma once

#include <complex>

#include "qgt/errors.hpp"

namespace qgt {

using cplx = std::complex<double>;

// Gap tolerance on the dimensionless band radius R~: below this the
// eigenbasis is treated as degenerate and refused.
inline constexpr double tau_gap = 1e-9;

// One SSH chain in momentum space: intra-cell hopping J1 = m * J2,
// inter-cell hopping J2.  Lattice constant and hbar are 1.
struct ModelParams {
  double m = 0.5;   // dimerization ratio J1/J2, >= 0
  double j2 = 1.0;  // hopping energy scale, > 0

  void validate() const;  // throws ConfigInvalid
};

// Reduce momentum to the fundamental interval (-pi, pi].
double reduce_k(double k);

// cos/sin of the reduced momentum.  The representable boundary value
// k == pi is treated as the exact zone edge (sin snapped to 0) so that
// high-symmetry identities hold exactly on scan grids.
struct TrigK {
  double c, s;   // cos k, sin k
  double k_red;  // reduced momentum
};
TrigK trig_k(double k);

// Dimensionless band radius sqrt(m^2 + 1 + 2 m cos k); zero only at the
// gap-closing point m = 1, k = pi.
double r_tilde(double m, double k);
double r_tilde(const ModelParams& p, double k);

// True when the model has a gap-closing point (m within tau_gap of 1) and
// the reduced k lies within `window` of the zone edge +-pi.
bool near_degenerate(double m, double k, double window);

// H(k) = R(k) . sigma with Rz identically zero for this model.
struct BlochVector {
  double rx, ry, rz;
};
BlochVector bloch_vector(const ModelParams& p, double k);

struct Spinor {
  cplx c0{}, c1{};

  double norm() const;
};

// <a|b>, conjugate-linear in the first argument.
cplx dot(const Spinor& a, const Spinor& b);

struct Mat2 {
  cplx m00, m01, m10, m11;

  Spinor operator*(const Spinor& s) const;
};

// The 2x2 Bloch Hamiltonian  -J2 [[0, m + e^{ik}], [m + e^{-ik}, 0]].
Mat2 hamiltonian(const ModelParams& p, double k);

enum class Band { minus, plus };

// Closed-form spectrum and eigenvectors in the fixed gauge where the first
// spinor component is 1/sqrt(2), real and positive:
//   u_-(k) = (1, +(m + e^{-ik})/R~)/sqrt(2),  E_- = -J2 R~
//   u_+(k) = (1, -(m + e^{-ik})/R~)/sqrt(2),  E_+ = +J2 R~
struct EigenSystem {
  double e_minus, e_plus;
  Spinor u_minus, u_plus;
};
EigenSystem eigensystem(const ModelParams& p, double k);  // throws GapClosed

// Ground-band Berry connection i<u_-|d_k u_-> in the fixed gauge:
// (m cos k + 1) / (2 R~^2).
double berry_connection(const ModelParams& p, double k);  // throws GapClosed

// Band group velocity, sign convention v^+- = +-J2 m sin k / R~ (plus band
// positive for k in (0, pi)); the two bands return opposite values.
double group_velocity(const ModelParams& p, double k, Band band);

// Quantum metric of the ground band of a static chain; equals the squared
// Berry connection for this model and gauge.
double ground_metric_kk(const ModelParams& p, double k);

}  // namespace qgt
