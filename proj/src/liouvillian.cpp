#include "lossblockade/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>

#include "lossblockade/error.hpp"
#include "lossblockade/roots.hpp"
#include "lossblockade/spectral.hpp"

namespace lossblockade {

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw InvalidArgument("vector length does not match dim^2");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXcd left_multiplication(const Eigen::MatrixXcd& a) {
  return kron(Eigen::MatrixXcd::Identity(a.rows(), a.rows()), a);
}

Eigen::MatrixXcd right_multiplication(const Eigen::MatrixXcd& b) {
  return kron(b.transpose(), Eigen::MatrixXcd::Identity(b.rows(), b.rows()));
}

Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return kron(b.transpose(), a); }

Superoperator::Superoperator(BasisPtr basis, Eigen::MatrixXcd data) : basis_(std::move(basis)), data_(std::move(data)) {
  const auto d2 = static_cast<Eigen::Index>(basis_->size() * basis_->size());
  if (data_.rows() != d2 || data_.cols() != d2) throw InvalidArgument("superoperator size does not match basis");
}

Eigen::MatrixXcd Superoperator::apply(const Eigen::MatrixXcd& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) throw InvalidArgument("matrix does not match superoperator basis");
  return unvectorize(data_ * vectorize(rho), dim());
}

Superoperator build_liouvillian(const SystemParams& p, const BasisPtr& basis, bool driven, std::size_t max_basis_dim) {
  p.validate();
  if (basis->size() > max_basis_dim)
    throw ResourceLimit("basis has " + std::to_string(basis->size()) + " states; dense Liouvillian capped at " +
                        std::to_string(max_basis_dim));

  const auto h = build_hamiltonian(p, basis, driven ? HamiltonianVariant::RotatingDriven : HamiltonianVariant::Isolated);
  const cplx i(0.0, 1.0);
  const Eigen::Index d = static_cast<Eigen::Index>(basis->size());

  // L = I (x) K + conj(K) (x) I + sum_k rate_k conj(a_k) (x) a_k with K = -i H - 1/2 sum_k rate_k n_k.
  // The operators are sparse, so the Kronecker products are accumulated entry by entry
  // instead of being formed as dense intermediates.
  Eigen::MatrixXcd K = -i * h.data();
  std::vector<std::pair<Eigen::MatrixXcd, double>> jumps;
  const std::array<std::pair<Mode, double>, 2> channels{{{Mode::One, p.gamma1_prime()}, {Mode::Two, p.gamma2_prime()}}};
  for (const auto& [mode, rate] : channels) {
    if (rate == 0.0) continue;
    Eigen::MatrixXcd a = mode_operator(basis, mode, LadderKind::Annihilate).data();
    K -= 0.5 * rate * (a.adjoint() * a);
    jumps.emplace_back(std::move(a), rate);
  }

  auto nonzeros = [d](const Eigen::MatrixXcd& m) {
    std::vector<std::tuple<Eigen::Index, Eigen::Index, cplx>> out;
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index r = 0; r < d; ++r)
        if (m(r, c) != cplx(0.0)) out.emplace_back(r, c, m(r, c));
    return out;
  };
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& [r, c, v] : nonzeros(K)) {
    for (Eigen::Index k = 0; k < d; ++k) {
      L(k * d + r, k * d + c) += v;
      L(r * d + k, c * d + k) += std::conj(v);
    }
  }
  for (const auto& [a, rate] : jumps) {
    const auto entries = nonzeros(a);
    for (const auto& [r1, c1, v1] : entries)
      for (const auto& [r2, c2, v2] : entries) L(r1 * d + r2, c1 * d + c2) += rate * std::conj(v1) * v2;
  }
  return {basis, std::move(L)};
}

DensityMatrix::DensityMatrix(BasisPtr basis, Eigen::MatrixXcd data) : basis_(std::move(basis)), data_(std::move(data)) {
  const auto d = static_cast<Eigen::Index>(basis_->size());
  if (data_.rows() != d || data_.cols() != d) throw InvalidArgument("density matrix size does not match basis");
}

DensityMatrix DensityMatrix::fock(const BasisPtr& basis, int m, int n) {
  const auto d = static_cast<Eigen::Index>(basis->size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  const auto k = static_cast<Eigen::Index>(basis->index_of_checked(m, n));
  rho(k, k) = 1.0;
  return {basis, rho};
}

DensityMatrix DensityMatrix::maximally_mixed(const BasisPtr& basis) {
  const auto d = static_cast<Eigen::Index>(basis->size());
  return {basis, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)};
}

double DensityMatrix::hermiticity_error() const { return (data_ - data_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::trace_error() const { return std::abs(data_.trace() - cplx(1.0, 0.0)); }

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check(double hermitian_tol, double trace_tol, double psd_tol) const {
  if (const double e = hermiticity_error(); e > hermitian_tol)
    throw NumericalFailure("density matrix not Hermitian: max |rho - rho^dag| = " + std::to_string(e));
  if (const double e = trace_error(); e > trace_tol)
    throw NumericalFailure("density matrix trace off by " + std::to_string(e));
  if (const double e = min_eigenvalue(); e < -psd_tol)
    throw NumericalFailure("density matrix has negative eigenvalue " + std::to_string(e));
}

double DensityMatrix::population(int m, int n) const {
  auto k = basis_->index_of(m, n);
  if (!k) return 0.0;
  return data_(static_cast<Eigen::Index>(*k), static_cast<Eigen::Index>(*k)).real();
}

nlohmann::json DensityMatrix::to_json() const {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < data_.rows(); ++r) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ii = nlohmann::json::array();
    for (Eigen::Index c = 0; c < data_.cols(); ++c) {
      rr.push_back(data_(r, c).real());
      ii.push_back(data_(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"basis", basis_->to_json()}, {"re", re}, {"im", im}};
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;
using SparseSolver = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

cplx unit_phase(cplx z) { return std::abs(z) > 0.0 ? z / std::abs(z) : cplx(1.0, 0.0); }

/// Hager-Higham estimate of ||A^-1||_1 from an existing factorization (the
/// complex variant of LAPACK's xLACON, including its alternating test vector).
double inverse_norm1_estimate(SparseSolver& lu, Eigen::Index n) {
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, cplx(1.0 / static_cast<double>(n), 0.0));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXcd y = lu.solve(x);
    const double norm = y.cwiseAbs().sum();
    if (iter > 0 && norm <= estimate) break;
    estimate = norm;
    const Eigen::VectorXcd xi = y.unaryExpr(&unit_phase);
    const Eigen::VectorXcd z = lu.adjoint().solve(xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= (z.adjoint() * x)(0).real()) break;
    x.setZero();
    x(j) = 1.0;
  }
  Eigen::VectorXcd alt(n);
  for (Eigen::Index i = 0; i < n; ++i)
    alt(i) = (i % 2 ? -1.0 : 1.0) * (1.0 + static_cast<double>(i) / static_cast<double>(std::max<Eigen::Index>(n - 1, 1)));
  const double alt_estimate = 2.0 * lu.solve(alt).cwiseAbs().sum() / (3.0 * static_cast<double>(n));
  return std::max(estimate, alt_estimate);
}

}  // namespace

SteadyState steady_state(const Superoperator& L) {
  const Eigen::Index d = L.dim();
  const Eigen::Index n = d * d;
  // The generator has O(d^2) nonzeros, so a sparse LU is far cheaper than a dense one.
  SparseMatrix bordered = L.data().sparseView();
  bordered.prune([](Eigen::Index row, Eigen::Index, const cplx&) { return row != 0; });
  for (Eigen::Index k = 0; k < d; ++k) bordered.coeffRef(0, k * (d + 1)) = 1.0;
  bordered.makeCompressed();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
  rhs(0) = 1.0;

  SparseSolver lu;
  lu.compute(bordered);
  if (lu.info() != Eigen::Success)
    throw DegenerateSteadyState("steady state is not unique: bordered Liouvillian is singular (" + lu.lastErrorMessage() + ")");
  double norm1 = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) norm1 = std::max(norm1, bordered.col(c).cwiseAbs().sum());
  const double rcond = 1.0 / (norm1 * inverse_norm1_estimate(lu, n));
  if (!(rcond > 1e-13))
    throw DegenerateSteadyState("steady state is not unique: bordered Liouvillian is singular (rcond = " +
                                std::to_string(rcond) + ")");
  const Eigen::VectorXcd x = lu.solve(rhs);

  Eigen::MatrixXcd rho = unvectorize(x, d);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace();
  const double residual = (L.data() * vectorize(rho)).norm();

  DensityMatrix out(L.basis(), std::move(rho));
  out.check();
  return {std::move(out), residual, rcond};
}

std::vector<DensityMatrix> time_evolve(const Superoperator& L, const DensityMatrix& rho0, const std::vector<double>& t_grid,
                                       const TimeEvolveOptions& options) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<cplx>;

  if (t_grid.empty()) return {};
  if (t_grid.front() < 0.0) throw InvalidArgument("time grid must start at t >= 0");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
      std::adjacent_find(t_grid.begin(), t_grid.end()) != t_grid.end())
    throw InvalidArgument("time grid must be strictly ascending");
  if (!(*rho0.basis() == *L.basis())) throw InvalidArgument("initial state and generator use different bases");

  const Eigen::Index d = L.dim();
  const Eigen::VectorXcd v0 = vectorize(rho0.data());
  State x(v0.data(), v0.data() + v0.size());

  const auto& gen = L.data();
  auto rhs = [&gen](const State& y, State& dydt, double) {
    Eigen::Map<const Eigen::VectorXcd> in(y.data(), static_cast<Eigen::Index>(y.size()));
    Eigen::Map<Eigen::VectorXcd> out(dydt.data(), static_cast<Eigen::Index>(dydt.size()));
    out.noalias() = gen * in;
  };

  std::vector<DensityMatrix> snapshots;
  snapshots.reserve(t_grid.size());
  auto observe = [&](const State& y, double) {
    Eigen::Map<const Eigen::VectorXcd> v(y.data(), static_cast<Eigen::Index>(y.size()));
    snapshots.emplace_back(L.basis(), unvectorize(v, d));
  };

  auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol, odeint::runge_kutta_dopri5<State>());
  try {
    odeint::integrate_times(stepper, rhs, x, t_grid.begin(), t_grid.end(), options.initial_step, observe,
                            odeint::max_step_checker(static_cast<int>(options.max_steps_between_outputs)));
  } catch (const odeint::step_adjustment_error& e) {
    throw NumericalFailure(std::string("time evolution step size underflow: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw NumericalFailure(std::string("time evolution made no progress: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw NumericalFailure(std::string("time evolution exceeded the step budget: ") + e.what());
  }
  return snapshots;
}

namespace {

LiouvillianSpectrum sorted_spectrum(const Eigen::MatrixXcd& m, std::size_t count, bool with_vectors,
                                    const std::function<Eigen::MatrixXcd(const Eigen::VectorXcd&)>& to_matrix) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, with_vectors);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("Liouvillian eigensolve (dim " + std::to_string(m.rows()) + ") did not converge");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto la = es.eigenvalues()(a), lb = es.eigenvalues()(b);
    return la.real() != lb.real() ? la.real() > lb.real() : la.imag() > lb.imag();
  });
  LiouvillianSpectrum out;
  for (std::size_t k = 0; k < std::min(count, order.size()); ++k) {
    out.eigenvalues.push_back(es.eigenvalues()(order[k]));
    if (with_vectors) out.eigenmatrices.push_back(to_matrix(es.eigenvectors().col(order[k])));
  }
  return out;
}

}  // namespace

LiouvillianSpectrum liouvillian_spectrum(const Superoperator& L, std::size_t count, bool with_eigenmatrices) {
  const auto d = L.dim();
  if (count > static_cast<std::size_t>(d * d)) throw InvalidArgument("requested more eigenvalues than the generator has");
  return sorted_spectrum(L.data(), count, with_eigenmatrices, [d](const Eigen::VectorXcd& v) { return unvectorize(v, d); });
}

bool conjugation_closed(const std::vector<cplx>& eigenvalues, double tol) {
  for (auto z : eigenvalues) {
    if (std::abs(z.imag()) <= tol) continue;
    const bool found = std::any_of(eigenvalues.begin(), eigenvalues.end(), [&](cplx w) { return std::abs(w - std::conj(z)) <= tol; });
    if (!found) return false;
  }
  return true;
}

LiouvillianSpectrum coherence_sector_spectrum(const Superoperator& L, int difference) {
  const auto& states = L.basis()->states();
  const auto d = L.dim();
  std::vector<Eigen::Index> sector;
  for (Eigen::Index col = 0; col < d; ++col)
    for (Eigen::Index row = 0; row < d; ++row)
      if (states[static_cast<std::size_t>(row)].total() - states[static_cast<std::size_t>(col)].total() == difference)
        sector.push_back(col * d + row);
  const auto n = static_cast<Eigen::Index>(sector.size());
  if (n == 0) throw InvalidArgument("empty coherence sector");

  Eigen::MatrixXcd block(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) block(r, c) = L.data()(sector[static_cast<std::size_t>(r)], sector[static_cast<std::size_t>(c)]);

  return sorted_spectrum(block, static_cast<std::size_t>(n), true, [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(d * d);
    for (Eigen::Index k = 0; k < n; ++k) full(sector[static_cast<std::size_t>(k)]) = v(k);
    return unvectorize(full, d);
  });
}

double matrix_overlap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs((a.adjoint() * b).trace()) / (na * nb);
}

CoherencePair single_photon_coherence_pair(const SystemParams& p, const BasisPtr& basis) {
  const auto L = build_liouvillian(p, basis, false);
  const auto spectrum = coherence_sector_spectrum(L, 1);
  const auto& states = basis->states();

  // Eigenmatrices supported on |N=1><N=0| are the eigenvectors of the top block
  // of the (block-triangular) sector generator.
  std::vector<std::pair<double, std::size_t>> weights;
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
    const auto& m = spectrum.eigenmatrices[k];
    double w = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (states[static_cast<std::size_t>(r)].total() == 1 && states[static_cast<std::size_t>(c)].total() == 0) w += std::norm(m(r, c));
    weights.emplace_back(w / m.squaredNorm(), k);
  }
  std::stable_sort(weights.begin(), weights.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (weights.size() < 2 || weights[1].first < 0.5)
    throw NumericalFailure("could not identify the single-photon coherence pair in the Liouvillian spectrum");

  CoherencePair pair;
  for (std::size_t k = 0; k < 2; ++k) {
    pair.eigenvalues[k] = spectrum.eigenvalues[weights[k].second];
    pair.eigenmatrices[k] = spectrum.eigenmatrices[weights[k].second];
  }
  return pair;
}

LepResult lep_locate(const SystemParams& p, double gamma_tip_lo, double gamma_tip_hi, const LepOptions& options) {
  if (!(gamma_tip_hi > gamma_tip_lo) || gamma_tip_lo < 0.0) throw InvalidArgument("LEP search needs 0 <= lo < hi");
  if (options.grid_points < 3) throw InvalidArgument("LEP search needs at least 3 grid points");
  const auto basis = build_basis(options.truncation);
  const double scale = p.gamma1_prime();

  auto at = [&](double gamma_tip) {
    SystemParams q = p;
    q.gamma_tip = gamma_tip;
    return single_photon_coherence_pair(q, basis);
  };

  LepResult result;
  std::array<cplx, 2> previous{};
  const auto n = options.grid_points;
  for (std::size_t k = 0; k < n; ++k) {
    const double g = gamma_tip_lo + (gamma_tip_hi - gamma_tip_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    auto pair = at(g);
    if (k > 0) {
      const auto perm = continue_branches({previous[0], previous[1]}, {pair.eigenvalues[0], pair.eigenvalues[1]});
      if (perm[0] == 1) {
        std::swap(pair.eigenvalues[0], pair.eigenvalues[1]);
        std::swap(pair.eigenmatrices[0], pair.eigenmatrices[1]);
      }
    }
    previous = pair.eigenvalues;
    result.track.push_back({g, pair.eigenvalues, pair.gap(), pair.overlap()});
  }

  const auto best = std::min_element(result.track.begin(), result.track.end(),
                                     [](const auto& a, const auto& b) { return a.gap < b.gap; });
  const auto idx = static_cast<std::size_t>(best - result.track.begin());
  if (idx == 0 || idx == n - 1)
    throw NotFound("no interior minimum of the coherence-pair gap in [" + std::to_string(gamma_tip_lo) + ", " +
                   std::to_string(gamma_tip_hi) + "]");

  const auto refined = golden_section_minimize([&](double g) { return at(g).gap(); }, result.track[idx - 1].gamma_tip,
                                               result.track[idx + 1].gamma_tip, options.refine_tol * scale);
  const auto pair = at(refined.x);
  result.gamma_tip = refined.x;
  result.gap = pair.gap();
  result.overlap = pair.overlap();
  result.confirmed = result.gap < options.gap_threshold * scale && result.overlap > options.overlap_threshold;
  return result;
}

}  // namespace lossblockade
