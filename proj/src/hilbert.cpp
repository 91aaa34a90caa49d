#include "lossblockade/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lossblockade/error.hpp"

namespace lossblockade {

FockBasis::FockBasis(Truncation truncation) : truncation_(truncation) {
  std::visit(
      [this](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, TotalTruncation>) {
          if (t.n_max < 0) throw InvalidArgument("total truncation must be >= 0, got " + std::to_string(t.n_max));
          n1_cap_ = n2_cap_ = t.n_max;
        } else {
          if (t.n1_max < 0 || t.n2_max < 0)
            throw InvalidArgument("per-mode truncation must be >= 0, got (" + std::to_string(t.n1_max) + ", " +
                                  std::to_string(t.n2_max) + ")");
          n1_cap_ = t.n1_max;
          n2_cap_ = t.n2_max;
        }
      },
      truncation_);

  const bool total = std::holds_alternative<TotalTruncation>(truncation_);
  const int top = total ? n1_cap_ : n1_cap_ + n2_cap_;
  for (int N = 0; N <= top; ++N) {
    for (int m = 0; m <= N; ++m) {
      const int n = N - m;
      if (m > n1_cap_ || n > n2_cap_) continue;
      states_.push_back({m, n});
    }
  }

  lookup_.assign(static_cast<std::size_t>((n1_cap_ + 1) * (n2_cap_ + 1)), -1);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    lookup_[static_cast<std::size_t>(states_[i].m * (n2_cap_ + 1) + states_[i].n)] = static_cast<std::ptrdiff_t>(i);
  }
}

std::optional<std::size_t> FockBasis::index_of(int m, int n) const {
  if (m < 0 || n < 0 || m > n1_cap_ || n > n2_cap_) return std::nullopt;
  const auto pos = lookup_[static_cast<std::size_t>(m * (n2_cap_ + 1) + n)];
  if (pos < 0) return std::nullopt;
  return static_cast<std::size_t>(pos);
}

std::size_t FockBasis::index_of_checked(int m, int n) const {
  auto idx = index_of(m, n);
  if (!idx) throw InvalidArgument("state |" + std::to_string(m) + "," + std::to_string(n) + "> is not in the basis");
  return *idx;
}

std::vector<std::size_t> FockBasis::excitation_block(int excitations) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].total() == excitations) out.push_back(i);
  }
  return out;
}

int FockBasis::max_excitation() const { return states_.empty() ? 0 : states_.back().total(); }

nlohmann::json FockBasis::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& s : states_) arr.push_back({s.m, s.n});
  return arr;
}

BasisPtr build_basis(Truncation truncation) { return std::make_shared<const FockBasis>(truncation); }

ComplexOperator::ComplexOperator(BasisPtr basis, Eigen::MatrixXcd data) : basis_(std::move(basis)), data_(std::move(data)) {
  if (!basis_) throw InvalidArgument("operator requires a basis");
  const auto d = static_cast<Eigen::Index>(basis_->size());
  if (data_.rows() != d || data_.cols() != d)
    throw InvalidArgument("operator matrix is " + std::to_string(data_.rows()) + "x" + std::to_string(data_.cols()) +
                          " but basis has " + std::to_string(d) + " states");
}

ComplexOperator ComplexOperator::zero(BasisPtr basis) {
  const auto d = static_cast<Eigen::Index>(basis->size());
  return {std::move(basis), Eigen::MatrixXcd::Zero(d, d)};
}

ComplexOperator ComplexOperator::identity(BasisPtr basis) {
  const auto d = static_cast<Eigen::Index>(basis->size());
  return {std::move(basis), Eigen::MatrixXcd::Identity(d, d)};
}

ComplexOperator ComplexOperator::adjoint() const { return {basis_, data_.adjoint()}; }

void ComplexOperator::require_same_basis(const ComplexOperator& rhs) const {
  if (basis_ != rhs.basis_ && !(*basis_ == *rhs.basis_))
    throw InvalidArgument("operators are defined on different bases");
}

ComplexOperator ComplexOperator::operator+(const ComplexOperator& rhs) const {
  require_same_basis(rhs);
  return {basis_, data_ + rhs.data_};
}

ComplexOperator ComplexOperator::operator-(const ComplexOperator& rhs) const {
  require_same_basis(rhs);
  return {basis_, data_ - rhs.data_};
}

ComplexOperator ComplexOperator::operator*(const ComplexOperator& rhs) const {
  require_same_basis(rhs);
  return {basis_, data_ * rhs.data_};
}

ComplexOperator ComplexOperator::operator*(cplx scalar) const { return {basis_, data_ * scalar}; }

ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b) { return a * b - b * a; }

ComplexOperator mode_operator(const BasisPtr& basis, Mode mode, LadderKind kind) {
  auto op = ComplexOperator::zero(basis);
  Eigen::MatrixXcd a = op.data();
  const auto& states = basis->states();
  for (std::size_t col = 0; col < states.size(); ++col) {
    const auto [m, n] = states[col];
    const int occupation = mode == Mode::One ? m : n;
    if (occupation == 0) continue;
    auto row = mode == Mode::One ? basis->index_of(m - 1, n) : basis->index_of(m, n - 1);
    if (row) a(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(col)) = std::sqrt(static_cast<double>(occupation));
  }
  switch (kind) {
    case LadderKind::Annihilate:
      return {basis, a};
    case LadderKind::Create:
      return {basis, a.adjoint()};
    case LadderKind::Number:
      return {basis, a.adjoint() * a};
  }
  throw InvalidArgument("unknown ladder kind");
}

}  // namespace lossblockade
