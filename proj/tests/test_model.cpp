#include <cmath>
#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "qgt/model.hpp"

using namespace qgt;
using testutil::kPi;

namespace {

double residual(const ModelParams& p, double k, const Spinor& u, double e) {
  const Spinor hu = hamiltonian(p, k) * u;
  return std::sqrt(std::norm(hu.c0 - e * u.c0) + std::norm(hu.c1 - e * u.c1));
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("band radius closed form") {
  CHECK(r_tilde(0.5, 0.0) == 1.5);
  CHECK(r_tilde(1.0, kPi) == 0.0);
  CHECK(r_tilde(2.0, kPi / 2) == doctest::Approx(2.2360679774997896).epsilon(1e-14));
}

TEST_CASE("momentum reduction to (-pi, pi]") {
  CHECK(reduce_k(0.0) == 0.0);
  CHECK(reduce_k(kPi) == kPi);
  CHECK(reduce_k(-kPi) == kPi);
  CHECK(reduce_k(2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(reduce_k(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(reduce_k(1.0 - 6.0 * kPi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ModelParams{-0.1, 1.0}.validate()), ConfigInvalid);
  CHECK_THROWS_AS((ModelParams{0.5, 0.0}.validate()), ConfigInvalid);
  CHECK_THROWS_AS((ModelParams{0.5, -1.0}.validate()), ConfigInvalid);
  CHECK_NOTHROW(ModelParams{0.0, 2.0}.validate());
}

TEST_CASE("eigensystem in the fixed gauge") {
  const ModelParams p{0.5, 1.0};
  const EigenSystem es = eigensystem(p, 0.0);
  constexpr double inv_sqrt2 = 0.7071067811865476;
  CHECK(es.e_minus == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(es.e_plus == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(es.u_minus.c0.real() == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(es.u_minus.c0.imag() == 0.0);
  CHECK(es.u_minus.c1.real() == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(std::abs(es.u_minus.c1.imag()) == 0.0);
  CHECK(es.u_plus.c1.real() == doctest::Approx(-inv_sqrt2).epsilon(1e-15));

  const ModelParams p2{2.0, 1.0};
  const EigenSystem es2 = eigensystem(p2, kPi / 2);
  CHECK(es2.e_plus == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(residual(p2, kPi / 2, es2.u_minus, es2.e_minus) < 1e-12);
  CHECK(residual(p2, kPi / 2, es2.u_plus, es2.e_plus) < 1e-12);
}

TEST_CASE("eigensystem refuses the gap closing") {
  CHECK_THROWS_AS(eigensystem({1.0, 1.0}, kPi), GapClosed);
  CHECK_THROWS_AS(berry_connection({1.0, 1.0}, kPi), GapClosed);
  CHECK_THROWS_AS(group_velocity({1.0, 1.0}, kPi, Band::plus), GapClosed);
}

TEST_CASE("eigen residuals over random parameters") {
  testutil::Draw d(0x6d6f64656cull);
  int checked = 0;
  while (checked < 1000) {
    const ModelParams p{d.uniform(0.0, 2.5), d.uniform(0.2, 3.0)};
    const double k = d.uniform(-10.0, 10.0);
    EigenSystem es;
    try {
      es = eigensystem(p, k);
    } catch (const GapClosed&) {
      continue;
    }
    CHECK(residual(p, k, es.u_minus, es.e_minus) < 1e-10);
    CHECK(residual(p, k, es.u_plus, es.e_plus) < 1e-10);
    CHECK(std::abs(dot(es.u_minus, es.u_plus)) < 1e-12);
    CHECK(es.u_minus.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.u_plus.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.e_plus == -es.e_minus);
    ++checked;
  }
}

TEST_CASE("Bloch vector matches the assembled Hamiltonian") {
  testutil::Draw d(0x626c6f63ull);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p{d.uniform(0.0, 2.5), d.uniform(0.2, 3.0)};
    const double k = d.uniform(-kPi, kPi);
    const BlochVector r = bloch_vector(p, k);
    CHECK(r.rz == 0.0);
    CHECK(std::hypot(r.rx, r.ry) ==
          doctest::Approx(p.j2 * r_tilde(p, k)).epsilon(1e-12));
    const Mat2 h = hamiltonian(p, k);
    CHECK(h.m01 == std::conj(h.m10));
    CHECK(std::abs(h.m01 - cplx(r.rx, -r.ry)) < 1e-12 * (1.0 + std::abs(h.m01)));
  }
}

TEST_CASE("Berry connection closed form") {
  CHECK(berry_connection({0.5, 1.0}, 0.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(berry_connection({2.0, 1.0}, kPi / 2) ==
        doctest::Approx(0.1).epsilon(1e-13));
  CHECK(berry_connection({1.1, 1.0}, 0.99 * kPi) < 0.0);
  // scale-free in j2
  CHECK(berry_connection({0.7, 3.0}, 1.2) ==
        berry_connection({0.7, 1.0}, 1.2));
}

TEST_CASE("Berry connection against a finite-difference derivative") {
  const double h = 1e-5;
  testutil::Draw d(0x62657272ull);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p{d.uniform(0.1, 2.0), 1.0};
    const double k = d.k_away(p.m, p.m, 0.1);
    const Spinor up = eigensystem(p, k + h).u_minus;
    const Spinor um = eigensystem(p, k - h).u_minus;
    const Spinor u0 = eigensystem(p, k).u_minus;
    const Spinor du{(up.c0 - um.c0) / (2.0 * h), (up.c1 - um.c1) / (2.0 * h)};
    const double a_num = -(dot(u0, du)).imag();  // i<u|du> is real
    CHECK(a_num == doctest::Approx(berry_connection(p, k)).epsilon(1e-8));
  }
}

TEST_CASE("group velocity closed form and band antisymmetry") {
  CHECK(group_velocity({2.0, 1.0}, kPi / 2, Band::plus) ==
        doctest::Approx(0.8944271909999159).epsilon(1e-13));
  CHECK(group_velocity({2.0, 1.0}, kPi / 2, Band::minus) ==
        doctest::Approx(-0.8944271909999159).epsilon(1e-13));
  CHECK(group_velocity({1.3, 1.0}, 0.0, Band::plus) == 0.0);
  testutil::Draw d(0x76656c6full);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p{d.m(), d.uniform(0.5, 2.0)};
    const double k = d.k_away(p.m, p.m);
    CHECK(group_velocity(p, k, Band::plus) ==
          -group_velocity(p, k, Band::minus));
  }
}

TEST_CASE("parity in k") {
  testutil::Draw d(0x70617269ull);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p{d.m(), 1.0};
    const double k = d.k_away(p.m, p.m);
    CHECK(r_tilde(p, -k) == r_tilde(p, k));
    CHECK(berry_connection(p, -k) == berry_connection(p, k));
    CHECK(group_velocity(p, -k, Band::plus) ==
          -group_velocity(p, k, Band::plus));
  }
}

TEST_CASE("2pi periodicity") {
  testutil::Draw d(0x70657269ull);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p{d.m(), 1.0};
    const double k = d.k_away(p.m, p.m, 0.2);
    CHECK(r_tilde(p, k + 2.0 * kPi) ==
          doctest::Approx(r_tilde(p, k)).epsilon(1e-12));
    CHECK(berry_connection(p, k + 2.0 * kPi) ==
          doctest::Approx(berry_connection(p, k)).epsilon(1e-12));
    const EigenSystem a = eigensystem(p, k);
    const EigenSystem b = eigensystem(p, k + 2.0 * kPi);
    CHECK(std::abs(a.u_minus.c1 - b.u_minus.c1) < 1e-12);
  }
}

TEST_CASE("ground metric of a static chain") {
  CHECK(ground_metric_kk({0.5, 1.0}, 0.0) ==
        doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(ground_metric_kk({1.5, 1.0}, kPi) == 1.0);
  CHECK(ground_metric_kk({0.5, 1.0}, kPi / 3) ==
        doctest::Approx(0.12755102040816324).epsilon(1e-14));
}

}  // TEST_SUITE
