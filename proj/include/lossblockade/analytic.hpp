#pragma once

#include <map>
#include <string>

#include "lossblockade/hilbert.hpp"
#include "lossblockade/model.hpp"

namespace lossblockade {

/// Weak-drive steady-state amplitudes C_mn (m + n <= 3) of the non-Hermitian
/// Schroedinger equation with C_00 = 1, together with the intermediates used to
/// build them.
struct AmplitudeSet {
  cplx C00{1.0, 0.0};
  cplx C01, C10;
  cplx C02, C11, C20;
  cplx C03, C12, C21, C30;

  // Complex detunings.
  cplx D1, D2, D3, D4, D5, D6;
  cplx eta1, eta2, eta3, xi1, xi2, mu;

  bool weak_drive_warning = false;  ///< Omega > 0.1 gamma1'

  /// C_mn for m + n <= 3; zero otherwise.
  cplx amplitude(int m, int n) const;
  /// |C_mn|^2.
  double probability(int m, int n) const { return std::norm(amplitude(m, n)); }
};

/// Closed-form amplitudes. Throws SingularParameter naming the vanishing
/// denominator (eta1, eta2 or mu) when |factor| < 1e-12 scale^k.
AmplitudeSet steady_amplitudes(const SystemParams& p);

struct AnalyticObservables {
  double N1 = 0.0;
  double N2 = 0.0;
  double g2 = 0.0;         ///< (2 P20 + 6 P30 + 2 P21) / N1^2
  double g2_approx = 0.0;  ///< leading order 2 P20 / P10^2 = 4 |eta1|^2 |D1 + D2|^2 / |eta2|^2
  double g3 = 0.0;         ///< 6 P30 / N1^3
};

/// Throws UndefinedCorrelation when N1 < 1e-30.
AnalyticObservables analytic_observables(const AmplitudeSet& amps);

}  // namespace lossblockade
