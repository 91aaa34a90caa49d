#include <doctest.h>

#include <random>

#include "lossblockade/error.hpp"
#include "lossblockade/liouvillian.hpp"
#include "lossblockade/observables.hpp"
#include "lossblockade/spectral.hpp"
#include "oracles.hpp"

using namespace lossblockade;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

SystemParams driven(double gamma_tip) {
  SystemParams p;
  p.J = 2.0;
  p.chi = 2.17;
  p.gamma_2 = 0.1;
  p.gamma_tip = gamma_tip;
  p.delta = -1.5;
  p.omega_drive = 0.11;
  return p;
}

/// Lindblad right-hand side written directly with matrix products.
Eigen::MatrixXcd lindblad_direct(const SystemParams& p, const BasisPtr& b, const Eigen::MatrixXcd& rho) {
  const auto h = build_hamiltonian(p, b, HamiltonianVariant::RotatingDriven).data();
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd out = -I * (h * rho - rho * h);
  for (auto [mode, rate] : {std::pair{Mode::One, p.gamma1_prime()}, std::pair{Mode::Two, p.gamma2_prime()}}) {
    const auto a = mode_operator(b, mode, LadderKind::Annihilate).data();
    const Eigen::MatrixXcd ad = a.adjoint();
    out += rate * (a * rho * ad - 0.5 * (ad * a * rho + rho * ad * a));
  }
  return out;
}

}  // namespace

TEST_CASE("column-stacking vectorization identity") {
  std::mt19937_64 rng(1);
  const auto A = random_matrix(rng, 4), X = random_matrix(rng, 4), B = random_matrix(rng, 4);
  const Eigen::VectorXcd lhs = vectorize(A * X * B);
  CHECK((sandwich(A, B) * vectorize(X) - lhs).norm() < 1e-12 * lhs.norm());
  CHECK((left_multiplication(A) * vectorize(X) - vectorize(A * X)).norm() < 1e-12);
  CHECK((right_multiplication(B) * vectorize(X) - vectorize(X * B)).norm() < 1e-12);
  CHECK((unvectorize(vectorize(X), 4) - X).norm() == 0.0);
  CHECK_THROWS_AS(unvectorize(vectorize(X), 3), InvalidArgument);
}

TEST_CASE("superoperator matches the directly evaluated master equation") {
  std::mt19937_64 rng(2);
  const auto b = build_basis(PerModeTruncation{3, 2});
  const auto p = driven(3.0);
  const auto L = build_liouvillian(p, b, true);
  const auto rho = random_matrix(rng, Eigen::Index(b->size()));
  CHECK((L.apply(rho) - lindblad_direct(p, b, rho)).norm() < 1e-12 * rho.norm());
}

TEST_CASE("generator preserves the trace") {
  const auto b = build_basis(PerModeTruncation{3, 3});
  const auto L = build_liouvillian(driven(2.0), b, true);
  const auto d = L.dim();
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) tr(k * (d + 1)) = 1.0;
  CHECK((tr * L.data()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("steady state is a valid null vector") {
  const auto b = build_basis(PerModeTruncation{5, 5});
  for (double g : {0.0, 6.0, 8.9}) {
    const auto ss = steady_state(build_liouvillian(driven(g), b, true));
    CHECK(ss.residual < 1e-10);
    CHECK(ss.rcond > 1e-13);
    CHECK(ss.rho.hermiticity_error() < 1e-10);
    CHECK(ss.rho.trace_error() < 1e-10);
    CHECK(ss.rho.min_eigenvalue() > -1e-8);
  }
}

TEST_CASE("linear cavity relaxes to the coherent state") {
  SystemParams p;
  p.delta = 0.4;
  p.omega_drive = 0.3;
  const auto b = build_basis(PerModeTruncation{12, 0});
  const auto s = photon_statistics(steady_state(build_liouvillian(p, b, true)).rho);
  CHECK(s.N1 == doctest::Approx(oracle::linear_cavity_n(p.delta, p.omega_drive, p.gamma1_prime())).epsilon(1e-9));
  CHECK(s.g2() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("single Kerr cavity matches the weak-drive g2 formula") {
  SystemParams p;
  p.chi = 1.3;
  p.delta = 0.2;
  p.omega_drive = 1e-3;
  const auto b = build_basis(PerModeTruncation{5, 0});
  const auto s = photon_statistics(steady_state(build_liouvillian(p, b, true)).rho);
  CHECK(s.g2() == doctest::Approx(oracle::single_kerr_g2(p.delta, p.chi, p.gamma1_prime())).epsilon(1e-4));
}

TEST_CASE("lossless system has no unique steady state") {
  SystemParams p;
  p.gamma_1 = p.gamma_ex = p.gamma_2 = 0.0;
  p.J = 1.0;
  p.omega_drive = 0.1;
  CHECK_THROWS_AS(steady_state(build_liouvillian(p, build_basis(PerModeTruncation{2, 2}), true)), DegenerateSteadyState);
}

TEST_CASE("dense size cap") {
  CHECK_THROWS_AS(build_liouvillian(driven(0.0), build_basis(PerModeTruncation{8, 8}), true), ResourceLimit);
  CHECK_NOTHROW(build_liouvillian(driven(0.0), build_basis(PerModeTruncation{8, 8}), true, 100));
}

TEST_CASE("global drive phase does not change observables") {
  const auto b = build_basis(PerModeTruncation{5, 5});
  auto p = driven(6.0);
  const auto a = photon_statistics(steady_state(build_liouvillian(p, b, true)).rho);
  p.drive_phase = 1.1;
  const auto c = photon_statistics(steady_state(build_liouvillian(p, b, true)).rho);
  CHECK(std::abs(a.N1 - c.N1) / a.N1 < 1e-10);
  CHECK(std::abs(a.g2() - c.g2()) / a.g2() < 1e-10);
  CHECK(std::abs(a.g3() - c.g3()) / a.g3() < 1e-10);
}

TEST_CASE("time evolution approaches the steady state and keeps the trace") {
  const auto b = build_basis(PerModeTruncation{3, 3});
  const auto L = build_liouvillian(driven(1.0), b, true);
  const auto states = time_evolve(L, DensityMatrix::fock(b, 0, 0), {0.0, 1.0, 80.0});
  REQUIRE(states.size() == 3);
  CHECK(states[0].population(0, 0) == doctest::Approx(1.0));
  for (const auto& s : states) CHECK(s.trace_error() < 1e-8);
  const auto ss = steady_state(L);
  CHECK((states[2].data() - ss.rho.data()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK_THROWS_AS(time_evolve(L, DensityMatrix::fock(b, 0, 0), {1.0, 0.5}), InvalidArgument);
}

TEST_CASE("Liouvillian spectrum is conjugation closed and stable") {
  const auto b = build_basis(PerModeTruncation{2, 2});
  const auto spec = liouvillian_spectrum(build_liouvillian(driven(3.0), b, true), 81, false);
  CHECK(spec.eigenvalues.size() == 81);
  CHECK(conjugation_closed(spec.eigenvalues, 1e-8));
  CHECK(std::abs(spec.eigenvalues.front()) < 1e-10);
  for (const auto& l : spec.eigenvalues) CHECK(l.real() <= 1e-10);
}

TEST_CASE("single-photon coherence pair equals -i lambda_1 of the effective Hamiltonian") {
  const auto b = build_basis(TotalTruncation{2});
  for (double g : {0.0, 4.0, 12.0}) {
    SystemParams p = driven(g);
    p.omega_c = 0.3;
    const auto pair = single_photon_coherence_pair(p, b);
    const auto eig = one_photon_eigensystem_closed(p);
    std::vector<cplx> expected;
    for (const auto& l : eig.eigenvalues) expected.push_back(cplx(0.0, -1.0) * l);
    CHECK(max_relative_mismatch({pair.eigenvalues[0], pair.eigenvalues[1]}, expected, 1.0) < 1e-10);
  }
}

TEST_CASE("LEP coincides with the HEP") {
  const auto p = driven(0.0);
  const auto lep = lep_locate(p, 6.0, 11.0);
  CHECK(lep.confirmed);
  CHECK(lep.gamma_tip == doctest::Approx(8.9).epsilon(1e-4));
  CHECK(lep.gap < 1e-3);
  CHECK(lep.overlap > 0.99);
  CHECK(lep.track.size() == 41);
  CHECK_THROWS_AS(lep_locate(p, 1.0, 3.0), NotFound);
}

TEST_CASE("density matrix validation") {
  const auto b = build_basis(TotalTruncation{1});
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3) / 3.0;
  m(0, 1) = 0.2;
  CHECK_THROWS_AS(DensityMatrix(b, m).check(), NumericalFailure);
  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(3, 3);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(b, neg).check(), NumericalFailure);
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(b).check());
  const auto j = DensityMatrix::fock(b, 1, 0).to_json();
  CHECK(j.at("basis").dump() == "[[0,0],[0,1],[1,0]]");
}
