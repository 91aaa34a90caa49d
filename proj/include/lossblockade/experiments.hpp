#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "lossblockade/dataset.hpp"
#include "lossblockade/liouvillian.hpp"
#include "lossblockade/model.hpp"
#include "lossblockade/observables.hpp"

namespace lossblockade {

/// Evaluates f(0..n-1) on up to `threads` workers; results are returned in index
/// order regardless of completion order. The first exception thrown by any task
/// is rethrown after all workers join.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < n; i += threads) slots[i].emplace(f(i));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// How the drive detuning is chosen at each point of a loss sweep.
struct DetuningProtocol {
  enum class Kind { TrackUpperBranch, Fixed };
  Kind kind = Kind::TrackUpperBranch;
  double delta = 0.0;  ///< used by Fixed

  static DetuningProtocol track_upper_branch() { return {Kind::TrackUpperBranch, 0.0}; }
  static DetuningProtocol fixed(double delta) { return {Kind::Fixed, delta}; }

  /// TrackUpperBranch: Delta = omega_c - Re lambda_1^+, i.e. the laser sits on the
  /// upper one-photon resonance.
  double resolve(const SystemParams& p) const;
  std::string describe() const;
};

DetuningProtocol protocol_from_string(const std::string& s, double fixed_delta);

struct Backends {
  bool analytic = true;
  bool lindblad = true;
  static Backends from_string(const std::string& s);  ///< analytic | lindblad | both
  std::string describe() const;
};

inline constexpr int kSnapshotExcitations = 3;
inline constexpr std::size_t kSnapshotSize = 10;  ///< P_mn with m + n <= 3

/// Observables from one backend at one parameter point.
struct PointResult {
  bool ok = false;
  std::string error;  ///< set when !ok
  double N1 = std::nan("");
  double N2 = std::nan("");
  double g2 = std::nan("");
  double g3 = std::nan("");
  std::array<double, kSnapshotSize> P{};  ///< P_mn in total-N order (0,0),(0,1),(1,0),(0,2),...
  std::vector<double> marginal;           ///< P_m (Lindblad only)
};

/// Analytic backend: closed-form amplitudes; P_mn = |C_mn|^2 / sum |C|^2.
PointResult evaluate_analytic(const SystemParams& p);
/// Lindblad backend: steady state of the full master equation on `basis`.
PointResult evaluate_lindblad(const SystemParams& p, const BasisPtr& basis);

struct SweepRow {
  double gamma_tip = 0.0;
  double delta_used = 0.0;
  std::optional<PointResult> analytic;
  std::optional<PointResult> lindblad;
  cplx lambda1_plus;
  cplx lambda1_minus;
  bool failed() const;
  /// Lindblad values when present and valid, otherwise analytic.
  const PointResult* preferred() const;
};

struct SweepOptions {
  Truncation lindblad_truncation = PerModeTruncation{5, 5};
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

struct SweepTable {
  std::vector<SweepRow> rows;
  nlohmann::json provenance = nlohmann::json::object();
};

/// One row per grid point (grid strictly ascending). Backend failures mark the row
/// and the sweep continues.
SweepTable sweep_loss(const SystemParams& p, const std::vector<double>& gamma_tip_grid, const DetuningProtocol& protocol,
                      const Backends& backends, const SweepOptions& options = {});

struct CriticalPoint {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  ///< |g2 - 1| at a crossing; N1 rise over +-tol at the minimum; eigenvalue gap at an EP
};

struct CriticalPoints {
  std::optional<CriticalPoint> cp_c;
  std::optional<CriticalPoint> cp_q_down;  ///< g2 rises through 1 (blockade lost)
  std::optional<CriticalPoint> cp_q_up;    ///< g2 falls back through 1 (blockade revived)
  std::optional<CriticalPoint> ep;
  std::optional<CriticalPoint> lep;
  nlohmann::json to_json() const;
};

struct PointObservables {
  double N1 = 0.0;
  double g2 = 0.0;
};

struct CriticalPointOptions {
  double tolerance = 1e-4;  ///< bracket width for refinement, units of gamma_tip
  /// Re-evaluates the model at an off-grid gamma_tip during refinement. When empty
  /// a local cubic interpolant of the table is used instead.
  std::function<PointObservables(double)> evaluator;
  bool locate_lep = true;
  LepOptions lep;
};

/// Needs at least 5 valid rows; rows are sorted first so the result does not depend
/// on row order. Fields without a bracket stay empty.
CriticalPoints critical_points(const SweepTable& table, const SystemParams& p, const CriticalPointOptions& options = {});

/// Evaluator for critical_points that recomputes a point with the sweep's protocol
/// and the Lindblad backend (analytic when lindblad is disabled).
std::function<PointObservables(double)> make_evaluator(const SystemParams& p, const DetuningProtocol& protocol,
                                                       const Backends& backends, const SweepOptions& options = {});

struct SpectrumMap {
  std::vector<double> gamma_tip;
  std::vector<double> delta;
  std::vector<std::vector<double>> s1;  ///< [gamma_tip][delta]
  std::vector<std::vector<bool>> valid;
  std::vector<std::vector<std::size_t>> peaks;
  std::vector<double> branch_delta_plus;   ///< omega_c - Re lambda_1^+
  std::vector<double> branch_delta_minus;  ///< omega_c - Re lambda_1^-
};

SpectrumMap spectrum_map(const SystemParams& p, const std::vector<double>& gamma_tip_grid,
                         const std::vector<double>& delta_grid, Backend backend, const SweepOptions& options = {});

struct EpAgreementRow {
  double J = 0.0;
  double hep = 0.0;
  std::optional<double> lep;
  std::optional<double> relative;  ///< |hep - lep| / hep
  std::string error;
};

/// gamma_tip search window for the LEP around the HEP at coupling J.
std::pair<double, double> lep_search_window(const SystemParams& p);

std::vector<EpAgreementRow> ep_agreement(const SystemParams& p, const std::vector<double>& J_grid,
                                         const LepOptions& options = {}, unsigned threads = 0);

/// Uniform grid of `count` points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, std::size_t count);

// Figure-level datasets.
Dataset sweep_dataset(const std::string& name, const SweepTable& table);
Dataset fig3a_dataset(const SweepTable& tracking, const SweepTable& fixed);
Dataset distribution_dataset(const SystemParams& p, const std::vector<double>& gamma_tips, const DetuningProtocol& protocol,
                             const SweepOptions& options = {});
Dataset spectrum_map_dataset(const std::string& name, const SpectrumMap& map);
Dataset ep_agreement_dataset(const std::vector<EpAgreementRow>& rows);
Dataset eigen_dataset(const SystemParams& p, const std::vector<double>& gamma_tip_grid);         ///< figS3
Dataset localization_dataset(const SystemParams& p, const std::vector<double>& gamma_tip_grid);  ///< figS4

}  // namespace lossblockade
