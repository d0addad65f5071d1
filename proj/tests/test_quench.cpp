#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "qgt/quench.hpp"

using namespace qgt;
using testutil::kPi;

namespace {

double dist(const Spinor& a, const Spinor& b) {
  return std::sqrt(std::norm(a.c0 - b.c0) + std::norm(a.c1 - b.c1));
}

}  // namespace

TEST_SUITE("quench") {

TEST_CASE("overlap is symmetry-locked at the zone center and edge") {
  const QuenchProtocol q{1.3, 0.2, 1.0};
  const OverlapCoeffs ab = overlap_coeffs(q, 0.0);
  CHECK(ab.alpha.real() == 1.0);
  CHECK(ab.alpha.imag() == 0.0);
  CHECK(std::abs(ab.beta) == 0.0);

  // both chains on the same side of the transition: same band at k = pi
  const OverlapCoeffs same = overlap_coeffs({0.5, 0.1, 1.0}, kPi);
  CHECK(std::abs(same.alpha) == 1.0);
  CHECK(std::abs(same.beta) == 0.0);

  // chains on opposite sides: fully excited at k = pi
  const OverlapCoeffs flip = overlap_coeffs({1.5, 0.1, 1.0}, kPi);
  CHECK(std::abs(flip.alpha) == 0.0);
  CHECK(std::abs(flip.beta) == 1.0);
}

TEST_CASE("overlap refuses a closed gap") {
  CHECK_THROWS_AS(overlap_coeffs({1.0, 0.5, 1.0}, kPi), GapClosed);
  CHECK_THROWS_AS(overlap_coeffs({0.5, 1.0, 1.0}, kPi), GapClosed);
}

TEST_CASE("overlap normalization and reconstruction") {
  testutil::Draw d(0x6f766572ull);
  for (int i = 0; i < 1000; ++i) {
    const QuenchProtocol q{d.m(), d.m(), 1.0};
    const double k = d.k_away(q.m_i, q.m_f, 1e-3);
    const OverlapCoeffs ab = overlap_coeffs(q, k);
    CHECK(std::norm(ab.alpha) + std::norm(ab.beta) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const EigenSystem ef = eigensystem(q.final(), k);
    const Spinor ui = eigensystem(q.initial(), k).u_minus;
    const Spinor rec{ab.alpha * ef.u_minus.c0 + ab.beta * ef.u_plus.c0,
                     ab.alpha * ef.u_minus.c1 + ab.beta * ef.u_plus.c1};
    CHECK(dist(rec, ui) < 1e-10);
  }
}

TEST_CASE("evolved state starts on the initial band and stays normalized") {
  testutil::Draw d(0x65766f6cull);
  for (int i = 0; i < 300; ++i) {
    const QuenchProtocol q{d.m(), d.m(), d.uniform(0.5, 2.0)};
    const double k = d.k_away(q.m_i, q.m_f, 1e-3);
    const Spinor ui = eigensystem(q.initial(), k).u_minus;
    CHECK(dist(evolved_state(q, k, 0.0).spinor, ui) < 1e-12);
    CHECK(evolved_state(q, k, d.uniform(0.0, 100.0)).spinor.norm() ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("evolution returns to the initial ray after half a beat") {
  const QuenchProtocol q{0.9, 2.0, 1.0};
  const double k = kPi / 2;
  const double t_star = kPi / (q.j2 * r_tilde(q.m_f, k));
  const Spinor a = evolved_state(q, k, 0.0).spinor;
  const Spinor b = evolved_state(q, k, t_star).spinor;
  CHECK(std::abs(dot(a, b)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evolved state solves the post-quench Schrodinger equation") {
  const double h = 1e-5;
  testutil::Draw d(0x73636872ull);
  for (int i = 0; i < 50; ++i) {
    const QuenchProtocol q{d.m(), d.m(), 1.0};
    const double k = d.k_away(q.m_i, q.m_f);
    const double t = d.uniform(0.1, 10.0);
    const Spinor p = evolved_state(q, k, t + h).spinor;
    const Spinor m = evolved_state(q, k, t - h).spinor;
    const Spinor c = evolved_state(q, k, t).spinor;
    const Spinor hc = hamiltonian(q.final(), k) * c;
    const cplx mi(0.0, -1.0);
    const Spinor lhs{(p.c0 - m.c0) / (2.0 * h), (p.c1 - m.c1) / (2.0 * h)};
    const Spinor rhs{mi * hc.c0, mi * hc.c1};
    CHECK(dist(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("energy variance closed form") {
  const QuenchProtocol q{0.9, 2.0, 1.0};
  CHECK(energy_variance(q, kPi / 2) ==
        doctest::Approx(0.6685082872928176).epsilon(1e-12));
  CHECK(energy_variance(q, 0.0) == 0.0);
  CHECK(energy_variance({0.7, 0.7, 1.3}, 1.1) == 0.0);
  CHECK_THROWS_AS(energy_variance({1.0, 0.5, 1.0}, kPi), GapClosed);
}

TEST_CASE("energy variance three ways") {
  testutil::Draw d(0x76617233ull);
  for (int i = 0; i < 200; ++i) {
    const QuenchProtocol q{d.m(), d.m(), d.uniform(0.5, 1.5)};
    const double k = d.k_away(q.m_i, q.m_f);
    const double t = d.uniform(0.0, 20.0);

    const double a = energy_variance(q, k);

    const OverlapCoeffs ab = overlap_coeffs(q, k);
    const double rf = q.j2 * r_tilde(q.m_f, k);
    const double b =
        4.0 * rf * rf * std::norm(ab.alpha) * std::norm(ab.beta);

    const Spinor psi = evolved_state(q, k, t).spinor;
    const Mat2 hf = hamiltonian(q.final(), k);
    const Spinor hpsi = hf * psi;
    const double h1 = dot(psi, hpsi).real();
    const double h2 = dot(hpsi, hpsi).real();
    const double c = h2 - h1 * h1;

    CHECK(std::abs(a - b) < 1e-10);
    CHECK(std::abs(a - c) < 1e-10);
  }
}

TEST_CASE("variance and excitation weight are even in k") {
  testutil::Draw d(0x6576656eull);
  for (int i = 0; i < 200; ++i) {
    const QuenchProtocol q{d.m(), d.m(), 1.0};
    const double k = d.k_away(q.m_i, q.m_f);
    CHECK(energy_variance(q, -k) == energy_variance(q, k));
    CHECK(excitation_probability(q, -k) == excitation_probability(q, k));
  }
}

TEST_CASE("excitation probability") {
  CHECK(excitation_probability({0.4, 1.7, 1.0}, 0.0) == 0.0);
  CHECK(excitation_probability({1.5, 0.1, 1.0}, kPi) == 1.0);
  testutil::Draw d(0x65786369ull);
  for (int i = 0; i < 100; ++i) {
    const double m = d.m();
    const QuenchProtocol q{m, m, 1.0};
    CHECK(excitation_probability(q, d.k_away(m, m, 1e-3)) == 0.0);
  }
  for (int i = 0; i < 100; ++i) {
    const QuenchProtocol q{d.m(), d.m(), 1.0};
    const double b2 = excitation_probability(q, d.k_away(q.m_i, q.m_f, 1e-3));
    CHECK(b2 >= 0.0);
    CHECK(b2 <= 1.0);
  }
}

TEST_CASE("volatility timescale") {
  const QuenchProtocol q{0.9, 2.0, 1.0};
  CHECK(volatility_timescale(q, kPi / 2) ==
        doctest::Approx(1.2230567315521554).epsilon(1e-12));
  CHECK(std::isinf(volatility_timescale(q, 0.0)));
  CHECK(std::isinf(volatility_timescale({0.8, 0.8, 1.0}, 2.2)));
  const double tau = volatility_timescale(q, 1.3);
  CHECK(tau * std::sqrt(energy_variance(q, 1.3)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("protocol validation") {
  CHECK_THROWS_AS((QuenchProtocol{-0.2, 0.5, 1.0}.validate()), ConfigInvalid);
  CHECK_THROWS_AS((QuenchProtocol{0.2, 0.5, 0.0}.validate()), ConfigInvalid);
  CHECK(QuenchProtocol{0.3, 0.3, 1.0}.is_trivial());
  CHECK_FALSE(QuenchProtocol{0.3, 0.4, 1.0}.is_trivial());
}

}  // TEST_SUITE
