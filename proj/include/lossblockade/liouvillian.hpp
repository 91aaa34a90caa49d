#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "lossblockade/hilbert.hpp"
#include "lossblockade/model.hpp"

namespace lossblockade {

/// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

/// Superoperators of left multiplication, right multiplication and sandwich A . B.
Eigen::MatrixXcd left_multiplication(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd right_multiplication(const Eigen::MatrixXcd& b);
Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Dense Lindblad generator acting on column-stacked density matrices.
class Superoperator {
 public:
  Superoperator(BasisPtr basis, Eigen::MatrixXcd data);

  const BasisPtr& basis() const { return basis_; }
  const Eigen::MatrixXcd& data() const { return data_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_->size()); }

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

 private:
  BasisPtr basis_;
  Eigen::MatrixXcd data_;
};

inline constexpr std::size_t kDefaultMaxBasisDim = 64;

/// L rho = -i[H, rho] + sum_j gamma_j' (a_j rho a_j^dag - {a_j^dag a_j, rho}/2).
/// driven=true uses the rotating-frame driven Hamiltonian, driven=false the
/// undriven lab-frame one. Throws ResourceLimit above max_basis_dim states.
Superoperator build_liouvillian(const SystemParams& p, const BasisPtr& basis, bool driven,
                                std::size_t max_basis_dim = kDefaultMaxBasisDim);

class DensityMatrix {
 public:
  DensityMatrix(BasisPtr basis, Eigen::MatrixXcd data);
  static DensityMatrix fock(const BasisPtr& basis, int m, int n);
  static DensityMatrix maximally_mixed(const BasisPtr& basis);

  const BasisPtr& basis() const { return basis_; }
  const Eigen::MatrixXcd& data() const { return data_; }

  double hermiticity_error() const;  ///< max |rho - rho^dag|
  double trace_error() const;        ///< |tr rho - 1|
  double min_eigenvalue() const;     ///< of the Hermitian part

  /// Throws NumericalFailure naming the violated invariant.
  void check(double hermitian_tol = 1e-10, double trace_tol = 1e-10, double psd_tol = 1e-8) const;

  double population(int m, int n) const;

  /// {"basis": [[m,n],...], "re": [[...]], "im": [[...]]}
  nlohmann::json to_json() const;

 private:
  BasisPtr basis_;
  Eigen::MatrixXcd data_;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;  ///< || L vec(rho) ||
  double rcond = 0.0;     ///< reciprocal condition estimate of the bordered system
};

/// Null vector of L with unit trace, found from the bordered system in which the
/// first row of L is replaced by the trace functional.
/// Throws DegenerateSteadyState when that system is singular (null space dim != 1).
SteadyState steady_state(const Superoperator& L);

struct TimeEvolveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  std::size_t max_steps_between_outputs = 200000;
};

/// Integrates d rho/dt = L rho with adaptive Dormand-Prince steps and returns the
/// state at every entry of t_grid (ascending, starting at t_grid[0] >= 0 with rho0).
std::vector<DensityMatrix> time_evolve(const Superoperator& L, const DensityMatrix& rho0, const std::vector<double>& t_grid,
                                       const TimeEvolveOptions& options = {});

struct LiouvillianSpectrum {
  std::vector<cplx> eigenvalues;               ///< descending real part
  std::vector<Eigen::MatrixXcd> eigenmatrices;  ///< empty unless requested
};

/// The `count` eigenvalues with largest real part.
LiouvillianSpectrum liouvillian_spectrum(const Superoperator& L, std::size_t count, bool with_eigenmatrices = true);

/// True if every eigenvalue with |Im| > tol has its conjugate in the list within tol.
bool conjugation_closed(const std::vector<cplx>& eigenvalues, double tol);

/// Eigenpairs of L restricted to matrix elements |i><j| with N_i - N_j = difference.
/// Exact for the undriven generator, which conserves that difference.
LiouvillianSpectrum coherence_sector_spectrum(const Superoperator& L, int difference);

/// Normalized Frobenius overlap |<A, B>| / (|A| |B|).
double matrix_overlap(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// The Liouvillian eigenvalue pair connected to single-photon coherences
/// |N=1><N=0| of the undriven generator at one parameter point.
struct CoherencePair {
  std::array<cplx, 2> eigenvalues;
  std::array<Eigen::MatrixXcd, 2> eigenmatrices;
  double gap() const { return std::abs(eigenvalues[0] - eigenvalues[1]); }
  double overlap() const { return matrix_overlap(eigenmatrices[0], eigenmatrices[1]); }
};

CoherencePair single_photon_coherence_pair(const SystemParams& p, const BasisPtr& basis);

struct LepOptions {
  Truncation truncation = TotalTruncation{2};
  std::size_t grid_points = 41;
  double refine_tol = 1e-11;        ///< golden-section bracket width, units of gamma1'
  double gap_threshold = 1e-3;      ///< units of gamma1'
  double overlap_threshold = 0.99;
};

struct LepTrackPoint {
  double gamma_tip = 0.0;
  std::array<cplx, 2> eigenvalues{};
  double gap = 0.0;
  double overlap = 0.0;
};

struct LepResult {
  double gamma_tip = 0.0;
  double gap = 0.0;
  double overlap = 0.0;
  bool confirmed = false;  ///< gap and overlap thresholds both met
  std::vector<LepTrackPoint> track;
};

/// Scans gamma_tip over [lo, hi], follows the coherence pair by continuation and
/// refines the gap minimum by golden section. Throws NotFound when the minimum
/// sits on the edge of the range.
LepResult lep_locate(const SystemParams& p, double gamma_tip_lo, double gamma_tip_hi, const LepOptions& options = {});

}  // namespace lossblockade
