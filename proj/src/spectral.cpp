#include "lossblockade/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lossblockade/error.hpp"

namespace lossblockade {

namespace {

constexpr double kDegenerateFraction = 1e-6;

Eigen::MatrixXcd block_of(const ComplexOperator& h, const std::vector<std::size_t>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = h.data()(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c]));
  return out;
}

Eigen::MatrixXcd excitation_block_matrix(const SystemParams& p, int excitations, std::vector<FockState>* states) {
  auto basis = build_basis(TotalTruncation{excitations});
  const auto h = build_hamiltonian(p, basis, HamiltonianVariant::ExcitationConservingNonHermitian);
  const auto idx = basis->excitation_block(excitations);
  if (states) {
    states->clear();
    for (auto i : idx) states->push_back((*basis)[i]);
  }
  return block_of(h, idx);
}

Eigen::VectorXcd dense_eigenvector_near(const Eigen::MatrixXcd& h, cplx lambda) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericalFailure("dense eigensolve of excitation block did not converge");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - lambda) < std::abs(es.eigenvalues()(best) - lambda)) best = i;
  }
  return es.eigenvectors().col(best).normalized();
}

}  // namespace

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Plus:
      return "+";
    case Branch::Minus:
      return "-";
    case Branch::Zero:
      return "0";
    case Branch::Unlabeled:
      break;
  }
  return "?";
}

std::vector<double> SubspaceEigensystem::frequencies() const {
  std::vector<double> out;
  for (auto l : eigenvalues) out.push_back(l.real());
  return out;
}

std::vector<double> SubspaceEigensystem::linewidths() const {
  std::vector<double> out;
  for (auto l : eigenvalues) out.push_back(-2.0 * l.imag());
  return out;
}

std::size_t SubspaceEigensystem::index_of(Branch b) const {
  auto it = std::find(labels.begin(), labels.end(), b);
  if (it == labels.end()) throw NotFound("no eigenpair labelled " + std::string(to_string(b)));
  return static_cast<std::size_t>(it - labels.begin());
}

SubspaceEigensystem one_photon_eigensystem_closed(const SystemParams& p) {
  p.validate();
  const auto r = derived_rates(p);
  const double J = p.J;
  // (J - beta)(J + beta) keeps the discriminant accurate next to the EP.
  const cplx root = std::sqrt(cplx((J - r.beta) * (J + r.beta), 0.0));
  const cplx centre(p.omega_c, -r.Gamma);

  SubspaceEigensystem eig;
  eig.excitations = 1;
  eig.states = {{0, 1}, {1, 0}};
  eig.labels = {Branch::Plus, Branch::Minus};
  eig.eigenvalues = {centre + root, centre - root};
  eig.degenerate = std::abs(root) < kDegenerateFraction * J || (J == 0.0 && r.beta == 0.0);

  for (double sign : {+1.0, -1.0}) {
    Eigen::VectorXcd v(2);
    if (J == 0.0) {
      // Decoupled resonators: lambda_+ is the less lossy bare mode.
      const bool plus_is_kerr = r.beta >= 0.0;
      const bool kerr = (sign > 0) == plus_is_kerr;
      v << (kerr ? 0.0 : 1.0), (kerr ? 1.0 : 0.0);
    } else {
      const cplx shift = cplx(0.0, r.beta) - sign * root;
      const double norm = 1.0 / std::sqrt(J * J + std::norm(shift));
      v << -shift * norm, J * norm;  // (C01, C10)
    }
    eig.eigenvectors.push_back(v);
  }
  return eig;
}

HepLocation hep_location(double J, double gamma1_prime, double gamma2) {
  if (J < 0.0 || gamma1_prime < 0.0 || gamma2 < 0.0) throw InvalidArgument("hep_location inputs must be >= 0");
  const double value = 4.0 * J + gamma1_prime - gamma2;
  return {value, value >= 0.0};
}

SubspaceEigensystem two_photon_eigensystem_closed(const SystemParams& p) {
  p.validate();
  const double g1 = p.gamma1_prime();
  const double g2 = p.gamma2_prime();
  const double chi = p.chi;
  const double J = p.J;
  const double w = p.omega_c;
  const double dg = g1 - g2;
  const cplx i(0.0, 1.0);

  const cplx A = 2.0 * w + 2.0 * chi - i * g1;
  const cplx B = 2.0 * w - i * (g1 + g2) / 2.0;
  const cplx C = 2.0 * w - i * g2;
  const cplx D = 36.0 * J * J * chi + 4.5 * chi * dg * dg - 16.0 * chi * chi * chi + i * 18.0 * chi * chi * dg;
  const cplx E = -12.0 * J * J + 0.75 * dg * dg - 4.0 * chi * chi + i * 3.0 * chi * dg;
  const cplx F = std::pow(D + std::sqrt(4.0 * E * E * E + D * D), 1.0 / 3.0);
  const cplx G = (A + B + C) / 3.0;

  const double s3 = std::sqrt(3.0);
  const double c13 = std::cbrt(2.0);
  const double c23 = c13 * c13;

  std::vector<FockState> states;
  const Eigen::MatrixXcd h = excitation_block_matrix(p, 2, &states);  // order |0,2>, |1,1>, |2,0>

  SubspaceEigensystem eig;
  eig.excitations = 2;
  eig.states = states;
  eig.labels = {Branch::Zero, Branch::Plus, Branch::Minus};

  const double scale = std::max({std::abs(chi), J, g1, g2, 1e-300});
  if (std::abs(F) < 1e-6 * scale) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw NumericalFailure("dense 3x3 eigensolve did not converge");
    eig.used_dense_fallback = true;
    // Keep a deterministic order; labels cannot follow the Cardano roots here.
    std::vector<Eigen::Index> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      const auto la = es.eigenvalues()(a), lb = es.eigenvalues()(b);
      return la.real() != lb.real() ? la.real() < lb.real() : la.imag() < lb.imag();
    });
    for (auto k : order) {
      eig.eigenvalues.push_back(es.eigenvalues()(k));
      eig.eigenvectors.push_back(es.eigenvectors().col(k).normalized());
    }
    eig.labels = {Branch::Unlabeled, Branch::Unlabeled, Branch::Unlabeled};
    return eig;
  }

  eig.eigenvalues = {
      G - (1.0 - i * s3) * E / (3.0 * c23 * F) + (1.0 + i * s3) * F / (6.0 * c13),
      G - (1.0 + i * s3) * E / (3.0 * c23 * F) + (1.0 - i * s3) * F / (6.0 * c13),
      G + c13 * E / (3.0 * F) - F / (3.0 * c13),
  };

  const double sq2J = std::sqrt(2.0) * J;
  for (auto lambda : eig.eigenvalues) {
    // Components (C02, C11, C20) solve rows |2,0> and |0,2> of (H - lambda) psi = 0.
    Eigen::VectorXcd v(3);
    v << sq2J * (A - lambda), -(C - lambda) * (A - lambda), sq2J * (C - lambda);
    const double norm = v.norm();
    if (norm < 1e-9 * scale * scale) {
      v = dense_eigenvector_near(h, lambda);
      eig.used_dense_fallback = true;
    } else {
      v /= norm;
    }
    eig.eigenvectors.push_back(v);
  }

  const double gap = std::min({std::abs(eig.eigenvalues[0] - eig.eigenvalues[1]), std::abs(eig.eigenvalues[1] - eig.eigenvalues[2]),
                               std::abs(eig.eigenvalues[0] - eig.eigenvalues[2])});
  eig.degenerate = gap < kDegenerateFraction * std::max(J, 1e-300);
  return eig;
}

SubspaceEigensystem subspace_eigensystem_numeric(const SystemParams& p, int excitations) {
  if (excitations < 0) throw InvalidArgument("excitation number must be >= 0");
  p.validate();
  SubspaceEigensystem eig;
  eig.excitations = excitations;
  const Eigen::MatrixXcd h = excitation_block_matrix(p, excitations, &eig.states);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("eigensolve of the " + std::to_string(excitations) + "-excitation block (dim " +
                           std::to_string(h.rows()) + ") did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(h.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto la = es.eigenvalues()(a), lb = es.eigenvalues()(b);
    return la.real() != lb.real() ? la.real() < lb.real() : la.imag() < lb.imag();
  });
  for (auto k : order) {
    eig.eigenvalues.push_back(es.eigenvalues()(k));
    eig.eigenvectors.push_back(es.eigenvectors().col(k).normalized());
    eig.labels.push_back(Branch::Unlabeled);
  }
  return eig;
}

std::vector<std::vector<double>> localization(const SubspaceEigensystem& eig) {
  std::vector<std::vector<double>> out;
  for (const auto& v : eig.eigenvectors) {
    const double total = v.squaredNorm();
    std::vector<double> row;
    for (Eigen::Index k = 0; k < v.size(); ++k) row.push_back(std::norm(v(k)) / total);
    out.push_back(std::move(row));
  }
  return out;
}

double eigenvector_condition(const SubspaceEigensystem& eig) {
  const auto n = static_cast<Eigen::Index>(eig.eigenvectors.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXcd v(eig.eigenvectors.front().size(), n);
  for (Eigen::Index k = 0; k < n; ++k) v.col(k) = eig.eigenvectors[static_cast<std::size_t>(k)].normalized();
  const double det = std::abs(v.determinant());
  return det > 0.0 ? 1.0 / det : std::numeric_limits<double>::infinity();
}

std::vector<std::size_t> continue_branches(const std::vector<cplx>& previous, const std::vector<cplx>& current) {
  if (previous.size() != current.size()) throw InvalidArgument("branch continuation needs equally sized spectra");
  const std::size_t n = current.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n <= 8) {
    auto best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
      double cost = 0.0;
      for (std::size_t k = 0; k < n; ++k) cost += std::abs(previous[k] - current[perm[k]]);
      if (cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<bool> taken(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) continue;
      if (pick == n || std::abs(previous[k] - current[j]) < std::abs(previous[k] - current[pick])) pick = j;
    }
    taken[pick] = true;
    perm[k] = pick;
  }
  return perm;
}

double max_relative_mismatch(const std::vector<cplx>& a, const std::vector<cplx>& b, double scale) {
  const auto perm = continue_branches(a, b);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double ref = std::max(std::abs(a[k]), scale);
    worst = std::max(worst, std::abs(a[k] - b[perm[k]]) / ref);
  }
  return worst;
}

}  // namespace lossblockade
