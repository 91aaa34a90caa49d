#include <doctest.h>

#include <cmath>

#include "lossblockade/error.hpp"
#include "lossblockade/experiments.hpp"
#include "lossblockade/observables.hpp"
#include "oracles.hpp"

using namespace lossblockade;

namespace {

SystemParams preset_like(double gamma_tip) {
  SystemParams p;
  p.J = 2.0;
  p.chi = 2.17;
  p.gamma_2 = 0.1;
  p.gamma_tip = gamma_tip;
  p.omega_drive = 0.113;
  return p;
}

}  // namespace

TEST_CASE("vacuum has no defined correlations") {
  const auto b = build_basis(PerModeTruncation{3, 3});
  const auto s = photon_statistics(DensityMatrix::fock(b, 0, 0));
  CHECK(s.N1 == 0.0);
  CHECK(s.N2 == 0.0);
  CHECK_FALSE(s.correlations_defined());
  CHECK_THROWS_AS(s.g2(), UndefinedCorrelation);
  CHECK_THROWS_AS(s.g3(), UndefinedCorrelation);
}

TEST_CASE("Fock state |2> in mode 1") {
  const auto b = build_basis(PerModeTruncation{4, 1});
  const auto s = photon_statistics(DensityMatrix::fock(b, 2, 0));
  CHECK(s.N1 == doctest::Approx(2.0));
  CHECK(s.g2() == doctest::Approx(0.5));
  CHECK(s.g3() == 0.0);
  CHECK(s.marginal[2] == doctest::Approx(1.0));
  CHECK(s.P(2, 0) == doctest::Approx(1.0));
}

TEST_CASE("moment consistency and diagonal sufficiency on a steady state") {
  const auto b = build_basis(PerModeTruncation{5, 5});
  const auto rho = steady_state(build_liouvillian(preset_like(6.0), b, true)).rho;
  const auto s = photon_statistics(rho);
  double total = 0.0, n1 = 0.0, n2 = 0.0;
  for (std::size_t k = 0; k < s.joint.size(); ++k) {
    total += s.joint[k];
    n1 += s.states[k].m * s.joint[k];
    n2 += s.states[k].n * s.joint[k];
    CHECK(s.joint[k] >= -1e-10);
  }
  CHECK(std::abs(total - 1.0) < 1e-8);
  CHECK(std::abs(s.N1 - n1) < 1e-10 * s.N1);
  CHECK(std::abs(s.N2 - n2) < 1e-10 * s.N2);
  double fact = 0.0;
  for (std::size_t m = 0; m < s.marginal.size(); ++m) fact += double(m) * (double(m) - 1.0) * s.marginal[m];
  CHECK(std::abs(s.g2() - fact / (s.N1 * s.N1)) < 1e-10);
}

TEST_CASE("Poisson self-comparison") {
  const double mu = 0.7;
  std::vector<double> p;
  for (int m = 0; m < 30; ++m) p.push_back(std::exp(-mu) * std::pow(mu, m) / std::tgamma(m + 1.0));
  for (const auto& row : poisson_comparison(p)) {
    CHECK(std::abs(row.deviation) < 1e-10);
    if (row.poisson > 1e-300) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("Poisson reference uses the distribution's own mean") {
  const auto rows = poisson_comparison({0.5, 0.5});
  CHECK(rows[0].poisson == doctest::Approx(std::exp(-0.5)));
  CHECK(rows[1].poisson == doctest::Approx(0.5 * std::exp(-0.5)));
  CHECK(rows[1].deviation == doctest::Approx(0.5 - 0.5 * std::exp(-0.5)));
}

TEST_CASE("linear single cavity spectrum is the closed-form Lorentzian") {
  // Weak enough that the two-photon correction to N1 (relative 4 Omega^2) is below 1e-6.
  SystemParams p;
  p.omega_drive = 1e-4;
  const auto grid = linspace(-3.0, 3.0, 61);
  const auto s = excitation_spectrum(p, grid, Backend::Analytic);
  const double n0 = p.omega_drive * p.omega_drive / std::pow(p.gamma1_prime() + p.gamma2_prime(), 2);
  REQUIRE(s.peaks.size() == 1);
  CHECK(s.delta[s.peaks[0]] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.s1[s.peaks[0]] == doctest::Approx(4.0 * p.omega_drive * p.omega_drive / n0).epsilon(1e-6));
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK(s.s1[k] == doctest::Approx(oracle::linear_cavity_n(grid[k], p.omega_drive, 1.0) / n0).epsilon(1e-6));
}

TEST_CASE("spectrum peak count: split below the EP, merged above") {
  const auto grid = linspace(-6.0, 6.0, 1001);
  CHECK(excitation_spectrum(preset_like(0.0), grid, Backend::Analytic).peaks.size() == 2);
  CHECK(excitation_spectrum(preset_like(8.9), grid, Backend::Analytic).peaks.size() == 1);
  CHECK(excitation_spectrum(preset_like(12.0), grid, Backend::Analytic).peaks.size() == 1);
  const auto lind = excitation_spectrum(preset_like(0.0), linspace(-6.0, 6.0, 121), Backend::Lindblad);
  CHECK(lind.peaks.size() == 2);
}

TEST_CASE("peak detection is resolution independent") {
  for (double g : {0.0, 3.0, 6.5, 8.9, 11.0}) {
    const auto a = excitation_spectrum(preset_like(g), linspace(-6.0, 6.0, 501), Backend::Analytic);
    const auto b = excitation_spectrum(preset_like(g), linspace(-6.0, 6.0, 1001), Backend::Analytic);
    CHECK(a.peaks.size() == b.peaks.size());
  }
}

TEST_CASE("spectrum normalization cancels the drive") {
  auto p = preset_like(2.0);
  p.chi = 0.0;
  p.omega_drive = 1e-4;
  const auto grid = linspace(-4.0, 4.0, 41);
  const auto a = excitation_spectrum(p, grid, Backend::Analytic);
  p.omega_drive = 5e-4;
  const auto b = excitation_spectrum(p, grid, Backend::Analytic);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(a.s1[k] - b.s1[k]) <= 1e-5 * a.s1[k]);
  auto q = preset_like(2.0);
  q.omega_drive = 0.01;
  const auto c = excitation_spectrum(q, grid, Backend::Analytic);
  q.omega_drive = 0.02;
  const auto d = excitation_spectrum(q, grid, Backend::Analytic);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(c.s1[k] - d.s1[k]) < 1e-2 * c.s1[k]);
}

TEST_CASE("invalid points never become peaks") {
  const std::vector<double> values{0.0, 1.0, std::nan(""), 2.0, 0.5, 0.0};
  const std::vector<bool> valid{true, true, false, true, true, true};
  CHECK(detect_peaks(values, valid).empty());
  SystemParams p;
  p.omega_drive = 0.01;
  CHECK_THROWS_AS(excitation_spectrum(p, {}, Backend::Analytic), InvalidArgument);
}

TEST_CASE("peak merging rule") {
  // Two maxima separated by a shallow saddle merge into the higher one.
  const std::vector<double> shallow{0.0, 1.0, 0.99, 1.02, 0.0};
  const std::vector<bool> ok(5, true);
  CHECK(detect_peaks(shallow, ok) == std::vector<std::size_t>{3});
  const std::vector<double> deep{0.0, 1.0, 0.5, 0.2, 0.5, 1.1, 0.0};
  CHECK(detect_peaks(deep, std::vector<bool>(7, true)) == std::vector<std::size_t>{1, 5});
  CHECK(backend_from_string("lindblad") == Backend::Lindblad);
  CHECK_THROWS_AS(backend_from_string("qutip"), InvalidArgument);
}
