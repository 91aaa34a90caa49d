#pragma once

#include <string_view>
#include <vector>

#include "lossblockade/hilbert.hpp"
#include "lossblockade/model.hpp"

namespace lossblockade {

enum class Branch { Plus, Minus, Zero, Unlabeled };

std::string_view to_string(Branch b);

/// Eigenpairs of the excitation-conserving non-Hermitian Hamiltonian restricted
/// to the block with a fixed number of excitations.
struct SubspaceEigensystem {
  int excitations = 0;
  std::vector<FockState> states;  ///< block basis, canonical order
  std::vector<cplx> eigenvalues;
  std::vector<Eigen::VectorXcd> eigenvectors;  ///< unit Euclidean norm
  std::vector<Branch> labels;
  bool degenerate = false;         ///< flagged exceptional point
  bool used_dense_fallback = false;

  std::size_t size() const { return eigenvalues.size(); }
  /// Real parts (eigenfrequencies).
  std::vector<double> frequencies() const;
  /// -2 x imaginary parts (linewidths).
  std::vector<double> linewidths() const;
  /// Index of the eigenpair carrying label b; throws NotFound.
  std::size_t index_of(Branch b) const;
};

/// lambda_1^{+-} = omega_c - i Gamma +- sqrt(J^2 - beta^2) with the matching
/// eigenvectors. Within |sqrt(J^2 - beta^2)| < 1e-6 J the pair is flagged degenerate.
SubspaceEigensystem one_photon_eigensystem_closed(const SystemParams& p);

struct HepLocation {
  double gamma_tip = 0.0;
  bool physical = true;  ///< false when the formula gives a negative loss
};

/// gamma_tip at which the one-photon eigenvalues coalesce: 4J + gamma1' - gamma2.
HepLocation hep_location(double J, double gamma1_prime, double gamma2);

/// Two-photon eigenvalues from Cardano's formula (branches 0, +, -). Falls back to a
/// dense 3x3 solve when the cube-root argument is ill-conditioned.
SubspaceEigensystem two_photon_eigensystem_closed(const SystemParams& p);

/// Dense eigensolve of the N-excitation block, eigenvalues sorted by (Re, Im).
SubspaceEigensystem subspace_eigensystem_numeric(const SystemParams& p, int excitations);

/// |amplitude|^2 per block state, one row per eigenvector.
std::vector<std::vector<double>> localization(const SubspaceEigensystem& eig);

/// 1 / |det V| with unit-norm eigenvector columns; diverges at an exceptional point.
double eigenvector_condition(const SubspaceEigensystem& eig);

/// perm[i] is the index in `current` continuing `previous[i]`; minimises the
/// total displacement (exact for up to 8 values, greedy beyond).
std::vector<std::size_t> continue_branches(const std::vector<cplx>& previous, const std::vector<cplx>& current);

/// Largest relative deviation after optimal pairing of two eigenvalue multisets.
double max_relative_mismatch(const std::vector<cplx>& a, const std::vector<cplx>& b, double scale);

}  // namespace lossblockade
