#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace lossblockade {

using cplx = std::complex<double>;

/// Keep all states with m + n <= n_max.
struct TotalTruncation {
  int n_max = 3;
};

/// Keep all states with m <= n1_max and n <= n2_max.
struct PerModeTruncation {
  int n1_max = 5;
  int n2_max = 5;
};

using Truncation = std::variant<TotalTruncation, PerModeTruncation>;

/// |m, n>: m photons in the Kerr resonator, n in the linear one.
struct FockState {
  int m = 0;
  int n = 0;
  int total() const { return m + n; }
  friend bool operator==(const FockState&, const FockState&) = default;
};

/// Two-mode truncated Fock basis.
///
/// States are ordered by ascending total excitation m + n, ties broken by
/// ascending m. The ordering is part of the on-disk format: dataset columns and
/// serialized density matrices index into it.
class FockBasis {
 public:
  explicit FockBasis(Truncation truncation);

  const Truncation& truncation() const { return truncation_; }
  const std::vector<FockState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  const FockState& operator[](std::size_t i) const { return states_[i]; }

  /// Position of |m, n>, or nullopt if the state was truncated away.
  std::optional<std::size_t> index_of(int m, int n) const;
  /// Throws InvalidArgument if the state was truncated away.
  std::size_t index_of_checked(int m, int n) const;

  /// Indices of all states with m + n == excitations, in basis order.
  std::vector<std::size_t> excitation_block(int excitations) const;
  int max_excitation() const;

  /// JSON array of [m, n] pairs in canonical order.
  nlohmann::json to_json() const;

  friend bool operator==(const FockBasis& a, const FockBasis& b) { return a.states_ == b.states_; }

 private:
  Truncation truncation_;
  std::vector<FockState> states_;
  int n1_cap_ = 0;
  int n2_cap_ = 0;
  std::vector<std::ptrdiff_t> lookup_;  // (n1_cap+1) x (n2_cap+1), -1 if absent
};

using BasisPtr = std::shared_ptr<const FockBasis>;

/// Throws InvalidArgument on a negative cutoff.
BasisPtr build_basis(Truncation truncation);

/// Dense complex square matrix on a FockBasis.
class ComplexOperator {
 public:
  ComplexOperator(BasisPtr basis, Eigen::MatrixXcd data);
  static ComplexOperator zero(BasisPtr basis);
  static ComplexOperator identity(BasisPtr basis);

  const BasisPtr& basis() const { return basis_; }
  const Eigen::MatrixXcd& data() const { return data_; }
  std::size_t dim() const { return basis_->size(); }

  ComplexOperator adjoint() const;

  ComplexOperator operator+(const ComplexOperator& rhs) const;
  ComplexOperator operator-(const ComplexOperator& rhs) const;
  ComplexOperator operator*(const ComplexOperator& rhs) const;
  ComplexOperator operator*(cplx scalar) const;
  friend ComplexOperator operator*(cplx scalar, const ComplexOperator& op) { return op * scalar; }

 private:
  void require_same_basis(const ComplexOperator& rhs) const;

  BasisPtr basis_;
  Eigen::MatrixXcd data_;
};

ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b);

enum class Mode { One = 1, Two = 2 };
enum class LadderKind { Annihilate, Create, Number };

/// Ladder/number operator of one resonator. Matrix elements that would leave
/// the truncated space are dropped, so [a, a^dag] deviates from 1 at the cutoff.
ComplexOperator mode_operator(const BasisPtr& basis, Mode mode, LadderKind kind);

}  // namespace lossblockade
