#include <doctest.h>

#include "lossblockade/error.hpp"
#include "lossblockade/model.hpp"

using namespace lossblockade;

namespace {
SystemParams sample() {
  SystemParams p;
  p.omega_c = 0.7;
  p.delta = -0.4;
  p.chi = 2.0;
  p.J = 1.3;
  p.gamma_tip = 2.5;
  p.omega_drive = 0.2;
  p.drive_phase = 0.3;
  return p;
}
}  // namespace

TEST_CASE("rotating-frame driven Hamiltonian is Hermitian") {
  const auto b = build_basis(PerModeTruncation{4, 4});
  const auto h = build_hamiltonian(sample(), b, HamiltonianVariant::RotatingDriven).data();
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const auto h0 = build_hamiltonian(sample(), b, HamiltonianVariant::Isolated).data();
  CHECK((h0 - h0.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Kerr term is chi m(m-1) on the diagonal only") {
  const auto b = build_basis(PerModeTruncation{4, 2});
  SystemParams p;
  p.chi = 1.7;
  const auto h = build_hamiltonian(p, b, HamiltonianVariant::Isolated).data();
  for (std::size_t i = 0; i < b->size(); ++i)
    for (std::size_t j = 0; j < b->size(); ++j) {
      const double m = (*b)[i].m;
      const cplx expected = i == j ? cplx(1.7 * m * (m - 1.0)) : cplx(0.0);
      CHECK(std::abs(h(Eigen::Index(i), Eigen::Index(j)) - expected) < 1e-14);
    }
}

TEST_CASE("excitation-conserving non-Hermitian Hamiltonian is block diagonal") {
  const auto b = build_basis(TotalTruncation{3});
  const auto h = build_hamiltonian(sample(), b, HamiltonianVariant::ExcitationConservingNonHermitian).data();
  for (std::size_t i = 0; i < b->size(); ++i)
    for (std::size_t j = 0; j < b->size(); ++j)
      if ((*b)[i].total() != (*b)[j].total()) CHECK(h(Eigen::Index(i), Eigen::Index(j)) == cplx(0.0));
  // Loss enters as -i gamma'/2 on the diagonal.
  const auto k = Eigen::Index(b->index_of_checked(1, 0));
  CHECK(h(k, k).imag() == doctest::Approx(-0.5 * sample().gamma1_prime()));
}

TEST_CASE("effective Hamiltonian adds the drive to the excitation-conserving one") {
  const auto b = build_basis(TotalTruncation{2});
  auto p = sample();
  const auto heff = build_hamiltonian(p, b, HamiltonianVariant::EffectiveNonHermitian).data();
  const auto k0 = Eigen::Index(b->index_of_checked(0, 0));
  const auto k1 = Eigen::Index(b->index_of_checked(1, 0));
  CHECK(std::abs(heff(k1, k0) - p.omega_drive * std::polar(1.0, p.drive_phase)) < 1e-15);
  CHECK(std::abs(heff(k0, k1) - p.omega_drive * std::polar(1.0, -p.drive_phase)) < 1e-15);
}

TEST_CASE("parameter validation") {
  SystemParams p;
  p.gamma_tip = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  SystemParams q;
  q.gamma_1 = q.gamma_ex = 0.0;
  CHECK_NOTHROW(q.validate());
  CHECK_THROWS_AS(q.validate_lossy(), InvalidArgument);
  SystemParams r;
  r.J = std::nan("");
  CHECK_THROWS_AS(r.validate(), InvalidArgument);
}

TEST_CASE("JSON round trip and strict keys") {
  const auto p = sample();
  CHECK(params_from_json(to_json(p)) == p);
  CHECK_THROWS_AS(params_from_json(nlohmann::json{{"kappa", 1.0}}), InvalidArgument);
  SystemParams q;
  set_param(q, "chi", 4.0);
  CHECK(q.chi == 4.0);
  CHECK_THROWS_AS(set_param(q, "nope", 1.0), InvalidArgument);
}

TEST_CASE("derived rates") {
  SystemParams p;
  p.gamma_tip = 3.0;
  const auto r = derived_rates(p);
  CHECK(r.gamma1_prime == doctest::Approx(1.0));
  CHECK(r.gamma2_prime == doctest::Approx(3.1));
  CHECK(r.Gamma == doctest::Approx(4.1 / 4.0));
  CHECK(r.beta == doctest::Approx(2.1 / 4.0));
}

TEST_CASE("SI conversions") {
  // omega = 2 pi c / lambda.
  CHECK(si::angular_frequency(1550e-9) == doctest::Approx(2.0 * M_PI * 299792458.0 / 1550e-9));
  const double w = si::angular_frequency(1550e-9);
  CHECK(loss_rate_from_quality(w, 2e9, LinewidthConvention::FullWidth) == doctest::Approx(w / 2e9));
  CHECK(loss_rate_from_quality(w, 2e9, LinewidthConvention::HalfWidth) == doctest::Approx(2.0 * w / 2e9));
  // chi = 3 hbar w^2 chi3 / (4 eps0 V).
  const double chi = kerr_coefficient(1550e-9, 2e-17, 100e-18);
  CHECK(chi == doctest::Approx(3.0 * si::hbar * w * w * 2e-17 / (4.0 * si::vacuum_permittivity * 100e-18)));
  CHECK(drive_amplitude(4e-15, 1e5, 1550e-9) == doctest::Approx(std::sqrt(1e5 * 4e-15 / (si::hbar * w))));
  CHECK_THROWS_AS(kerr_coefficient(-1.0, 2e-17, 1e-16), InvalidArgument);
}

TEST_CASE("device normalization: half width doubles the loss so chi/gamma1' halves") {
  DeviceSpec full;
  full.convention = LinewidthConvention::FullWidth;
  DeviceSpec half;
  const auto pf = normalized_from_device(full);
  const auto ph = normalized_from_device(half);
  CHECK(pf.chi == doctest::Approx(2.0 * ph.chi));
  CHECK(ph.chi == doctest::Approx(2.17).epsilon(0.01));
  CHECK(ph.omega_drive == doctest::Approx(0.113).epsilon(0.01));
  CHECK(ph.gamma1_prime() == doctest::Approx(1.0));
  CHECK(ph.J == 2.0);
  CHECK(ph.gamma_2 == doctest::Approx(0.1));
}
