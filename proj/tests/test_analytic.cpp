#include <doctest.h>

#include <random>

#include "lossblockade/analytic.hpp"
#include "lossblockade/error.hpp"
#include "oracles.hpp"

using namespace lossblockade;

TEST_CASE("closed-form amplitudes solve the equations of motion") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = oracle::random_params(rng);
    p.omega_drive = 0.01;
    p.drive_phase = 0.37 * trial;
    const auto amps = steady_amplitudes(p);
    const auto ref = oracle::amplitudes_by_linear_solve(p);
    for (const auto& [mn, c] : ref) {
      const auto got = amps.amplitude(mn.first, mn.second);
      CHECK(std::abs(got - c) <= 1e-9 * std::abs(c) + 1e-300);
    }
  }
}

TEST_CASE("chi = 0 gives coherent statistics") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = oracle::random_params(rng);
    p.chi = 0.0;
    p.omega_drive = 0.01;
    const auto o = analytic_observables(steady_amplitudes(p));
    CHECK(o.g2_approx == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("single Kerr cavity limit") {
  SystemParams p;
  p.chi = 2.0;
  p.delta = -0.3;
  p.omega_drive = 1e-3;
  const auto o = analytic_observables(steady_amplitudes(p));
  CHECK(o.g2_approx == doctest::Approx(oracle::single_kerr_g2(p.delta, p.chi, 1.0)).epsilon(1e-10));
  CHECK(o.N1 == doctest::Approx(oracle::linear_cavity_n(p.delta, p.omega_drive, 1.0)).epsilon(1e-5));
  CHECK(o.N2 == 0.0);
}

TEST_CASE("approximate g2 converges to the full one at weak drive") {
  SystemParams p;
  p.J = 2.0;
  p.chi = 2.17;
  p.gamma_2 = 0.1;
  p.gamma_tip = 6.0;
  p.delta = -1.2;
  p.omega_drive = 1e-3;
  const auto o = analytic_observables(steady_amplitudes(p));
  CHECK(std::abs(o.g2_approx / o.g2 - 1.0) < 1e-3);
}

TEST_CASE("amplitude scaling with the drive") {
  SystemParams p;
  p.J = 1.0;
  p.chi = 1.0;
  p.omega_drive = 0.01;
  const auto a = steady_amplitudes(p);
  p.omega_drive = 0.02;
  const auto b = steady_amplitudes(p);
  CHECK(std::abs(b.C10 / a.C10) == doctest::Approx(2.0));
  CHECK(std::abs(b.C20 / a.C20) == doctest::Approx(4.0));
  CHECK(std::abs(b.C21 / a.C21) == doctest::Approx(8.0));
  CHECK_FALSE(a.weak_drive_warning);
  p.omega_drive = 0.5;
  CHECK(steady_amplitudes(p).weak_drive_warning);
}

TEST_CASE("singular denominators are reported by name") {
  // eta1 = D1 D2 - J^2 vanishes for lossless resonators at Delta = J.
  SystemParams p;
  p.gamma_1 = p.gamma_ex = p.gamma_2 = 0.0;
  p.J = 1.0;
  p.delta = 1.0;
  p.omega_drive = 0.01;
  try {
    steady_amplitudes(p);
    FAIL("expected SingularParameter");
  } catch (const SingularParameter& e) {
    CHECK(e.factor() == "eta1");
  }
}

TEST_CASE("no drive gives undefined correlations") {
  SystemParams p;
  p.J = 1.0;
  CHECK_THROWS_AS(analytic_observables(steady_amplitudes(p)), UndefinedCorrelation);
}

TEST_CASE("loss-label swap symmetry of the intermediates at chi = 0") {
  SystemParams a;
  a.J = 1.5;
  a.gamma_1 = 0.3;
  a.gamma_ex = 0.4;
  a.gamma_2 = 2.0;
  a.delta = 0.25;
  a.omega_drive = 0.01;
  SystemParams b = a;
  b.gamma_1 = 2.0;
  b.gamma_ex = 0.0;
  b.gamma_2 = 0.7;
  const auto x = steady_amplitudes(a);
  const auto y = steady_amplitudes(b);
  CHECK(std::abs(x.D1 - y.D2) < 1e-15);
  CHECK(std::abs(x.D2 - y.D1) < 1e-15);
  CHECK(std::abs(x.eta1 - y.eta1) < 1e-14);
}
