#include "lossblockade/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lossblockade/analytic.hpp"
#include "lossblockade/error.hpp"

namespace lossblockade {

namespace {

constexpr double kMinPhotonNumber = 1e-30;

Eigen::MatrixXcd normal_ordered_power(const BasisPtr& basis, int k) {
  const Eigen::MatrixXcd a = mode_operator(basis, Mode::One, LadderKind::Annihilate).data();
  const auto d = a.rows();
  Eigen::MatrixXcd ak = Eigen::MatrixXcd::Identity(d, d);
  for (int i = 0; i < k; ++i) ak = a * ak;
  return ak.adjoint() * ak;
}

double expectation(const Eigen::MatrixXcd& op, const Eigen::MatrixXcd& rho) { return (op * rho).trace().real(); }

}  // namespace

double PhotonStatistics::g2() const {
  if (!correlations_defined()) throw UndefinedCorrelation("g2 undefined: N1 = " + std::to_string(N1));
  return second_moment / (N1 * N1);
}

double PhotonStatistics::g3() const {
  if (!correlations_defined()) throw UndefinedCorrelation("g3 undefined: N1 = " + std::to_string(N1));
  return third_moment / (N1 * N1 * N1);
}

double PhotonStatistics::P(int m, int n) const {
  for (std::size_t k = 0; k < states.size(); ++k)
    if (states[k].m == m && states[k].n == n) return joint[k];
  return 0.0;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho) {
  const auto& basis = rho.basis();
  const auto& r = rho.data();
  PhotonStatistics s;
  s.N1 = expectation(mode_operator(basis, Mode::One, LadderKind::Number).data(), r);
  s.N2 = expectation(mode_operator(basis, Mode::Two, LadderKind::Number).data(), r);
  s.second_moment = expectation(normal_ordered_power(basis, 2), r);
  s.third_moment = expectation(normal_ordered_power(basis, 3), r);

  s.states = basis->states();
  int max_m = 0;
  for (std::size_t k = 0; k < s.states.size(); ++k) {
    s.joint.push_back(r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real());
    max_m = std::max(max_m, s.states[k].m);
  }
  s.marginal.assign(static_cast<std::size_t>(max_m + 1), 0.0);
  for (std::size_t k = 0; k < s.states.size(); ++k) s.marginal[static_cast<std::size_t>(s.states[k].m)] += s.joint[k];
  return s;
}

std::vector<PoissonRow> poisson_comparison(const std::vector<double>& distribution) {
  double mean = 0.0;
  for (std::size_t m = 0; m < distribution.size(); ++m) mean += static_cast<double>(m) * distribution[m];
  std::vector<PoissonRow> rows;
  for (std::size_t m = 0; m < distribution.size(); ++m) {
    PoissonRow row;
    row.m = static_cast<int>(m);
    row.probability = distribution[m];
    const double md = static_cast<double>(m);
    row.poisson = mean > 0.0 ? std::exp(-mean + md * std::log(mean) - std::lgamma(md + 1.0)) : (m == 0 ? 1.0 : 0.0);
    row.deviation = row.probability - row.poisson;
    row.ratio = row.poisson > 0.0 ? row.probability / row.poisson : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

std::string_view to_string(Backend b) { return b == Backend::Analytic ? "analytic" : "lindblad"; }

Backend backend_from_string(std::string_view s) {
  if (s == "analytic") return Backend::Analytic;
  if (s == "lindblad") return Backend::Lindblad;
  throw InvalidArgument("unknown backend '" + std::string(s) + "' (expected analytic or lindblad)");
}

std::vector<double> ExcitationSpectrum::peak_positions() const {
  std::vector<double> out;
  for (auto k : peaks) out.push_back(delta[k]);
  return out;
}

ExcitationSpectrum excitation_spectrum(const SystemParams& p, const std::vector<double>& delta_grid, Backend backend,
                                       Truncation lindblad_truncation) {
  if (delta_grid.empty()) throw InvalidArgument("detuning grid is empty");
  p.validate_lossy();
  if (p.omega_drive <= 0.0) throw InvalidArgument("excitation spectrum needs a nonzero drive");
  const double n0 = p.omega_drive * p.omega_drive / std::pow(p.gamma1_prime() + p.gamma2_prime(), 2);

  BasisPtr basis;
  if (backend == Backend::Lindblad) basis = build_basis(lindblad_truncation);

  ExcitationSpectrum out;
  out.delta = delta_grid;
  for (double delta : delta_grid) {
    SystemParams q = p;
    q.delta = delta;
    double N1 = std::numeric_limits<double>::quiet_NaN();
    try {
      if (backend == Backend::Analytic) {
        N1 = analytic_observables(steady_amplitudes(q)).N1;
      } else {
        N1 = photon_statistics(steady_state(build_liouvillian(q, basis, true)).rho).N1;
      }
    } catch (const SingularParameter&) {
    } catch (const UndefinedCorrelation&) {
    }
    out.valid.push_back(std::isfinite(N1));
    out.s1.push_back(N1 / n0);
  }
  out.peaks = detect_peaks(out.s1, out.valid);
  return out;
}

std::vector<std::size_t> detect_peaks(const std::vector<double>& values, const std::vector<bool>& valid) {
  const std::size_t n = values.size();
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!valid[i] || !valid[i - 1] || !valid[i + 1]) continue;
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) peaks.push_back(i);
  }

  bool merged = true;
  while (merged && peaks.size() > 1) {
    merged = false;
    for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
      const auto left = peaks[k];
      const auto right = peaks[k + 1];
      double saddle = values[left];
      for (auto i = left; i <= right; ++i)
        if (valid[i]) saddle = std::min(saddle, values[i]);
      const double lower = std::min(values[left], values[right]);
      if (right - left < 2 || lower < 1.05 * saddle) {
        peaks.erase(peaks.begin() + static_cast<std::ptrdiff_t>(values[left] < values[right] ? k : k + 1));
        merged = true;
        break;
      }
    }
  }
  return peaks;
}

}  // namespace lossblockade
