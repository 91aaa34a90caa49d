#pragma once

#include <string_view>
#include <vector>

#include "lossblockade/hilbert.hpp"
#include "lossblockade/liouvillian.hpp"
#include "lossblockade/model.hpp"

namespace lossblockade {

struct PhotonStatistics {
  double N1 = 0.0;
  double N2 = 0.0;
  std::vector<FockState> states;  ///< basis order
  std::vector<double> joint;      ///< P_mn = <m,n|rho|m,n>, aligned with states
  std::vector<double> marginal;   ///< P_m of the Kerr resonator

  /// <a1^dag^2 a1^2> / N1^2; throws UndefinedCorrelation if N1 < 1e-30.
  double g2() const;
  /// <a1^dag^3 a1^3> / N1^3; throws UndefinedCorrelation if N1 < 1e-30.
  double g3() const;
  bool correlations_defined() const { return N1 >= 1e-30; }

  double P(int m, int n) const;

  double second_moment = 0.0;  ///< <a1^dag^2 a1^2>
  double third_moment = 0.0;   ///< <a1^dag^3 a1^3>
};

/// Moments are traces against (a^dag)^k a^k built on the truncated basis.
PhotonStatistics photon_statistics(const DensityMatrix& rho);

struct PoissonRow {
  int m = 0;
  double probability = 0.0;
  double poisson = 0.0;    ///< e^-mu mu^m / m! with mu the distribution's own mean
  double deviation = 0.0;  ///< probability - poisson
  double ratio = 0.0;      ///< probability / poisson
};

std::vector<PoissonRow> poisson_comparison(const std::vector<double>& distribution);

enum class Backend { Analytic, Lindblad };

std::string_view to_string(Backend b);
Backend backend_from_string(std::string_view s);

struct ExcitationSpectrum {
  std::vector<double> delta;
  std::vector<double> s1;    ///< N1 / n0, NaN where the point failed
  std::vector<bool> valid;
  std::vector<std::size_t> peaks;  ///< indices into delta
  std::vector<double> peak_positions() const;
};

/// S1(Delta) = N1 / n0 with n0 = Omega^2 / (gamma1' + gamma2')^2. Singular analytic
/// points are marked invalid rather than aborting.
ExcitationSpectrum excitation_spectrum(const SystemParams& p, const std::vector<double>& delta_grid, Backend backend,
                                       Truncation lindblad_truncation = PerModeTruncation{5, 5});

/// Interior local maxima; adjacent maxima are merged when the lower one is not
/// above 1.05x the saddle between them or when they are < 2 grid points apart.
std::vector<std::size_t> detect_peaks(const std::vector<double>& values, const std::vector<bool>& valid);

}  // namespace lossblockade
