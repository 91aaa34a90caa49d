#include "lossblockade/validation.hpp"

#include <algorithm>
#include <cmath>

#include "lossblockade/analytic.hpp"
#include "lossblockade/error.hpp"
#include "lossblockade/experiments.hpp"
#include "lossblockade/liouvillian.hpp"
#include "lossblockade/observables.hpp"
#include "lossblockade/spectral.hpp"

namespace lossblockade {

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}, {"detail", c.detail}});
  return {{"passed", passed()},
          {"max_n1_deviation", max_n1_deviation},
          {"max_g2_deviation", max_g2_deviation},
          {"checks", list}};
}

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void add(ValidationReport& report, std::string name, double value, double threshold, std::string detail) {
  report.checks.push_back({std::move(name), std::isfinite(value) && value < threshold, value, threshold, std::move(detail)});
}

PhotonStatistics stats_at(const SystemParams& q, const BasisPtr& basis) {
  return photon_statistics(steady_state(build_liouvillian(q, basis, true)).rho);
}

}  // namespace

ValidationReport run_validation(const SystemParams& p, const ValidationOptions& options) {
  p.validate_lossy();
  ValidationReport report;
  const auto protocol = DetuningProtocol::track_upper_branch();
  const double hep = hep_location(p.J, p.gamma1_prime(), p.gamma_2).gamma_tip;
  std::vector<double> probe_points{0.0, 6.0 * p.gamma1_prime()};
  if (hep > 0.0) probe_points.push_back(hep);
  auto at = [&](const SystemParams& base, double gamma_tip) {
    SystemParams q = base;
    q.gamma_tip = gamma_tip;
    q.delta = protocol.resolve(q);
    return q;
  };

  // Analytic vs Lindblad at weak drive.
  SystemParams weak = p;
  weak.omega_drive = options.weak_drive;
  SweepOptions sweep_options;
  sweep_options.threads = options.threads;
  const auto grid = linspace(0.0, options.gamma_tip_max * p.gamma1_prime(), options.sweep_points);
  const auto table = sweep_loss(weak, grid, protocol, Backends{true, true}, sweep_options);
  double worst_p = 0.0;
  std::size_t failed = 0;
  for (const auto& row : table.rows) {
    if (row.failed()) {
      ++failed;
      continue;
    }
    report.max_n1_deviation = std::max(report.max_n1_deviation, rel(row.analytic->N1, row.lindblad->N1));
    report.max_g2_deviation = std::max(report.max_g2_deviation, rel(row.analytic->g2, row.lindblad->g2));
    for (std::size_t k = 0; k < kSnapshotSize; ++k)
      if (row.lindblad->P[k] > 1e-14) worst_p = std::max(worst_p, rel(row.analytic->P[k], row.lindblad->P[k]));
  }
  const std::string sweep_detail = std::to_string(table.rows.size()) + " loss points at Omega = " +
                                   format_double(options.weak_drive) + ", " + std::to_string(failed) + " failed";
  add(report, "analytic_vs_lindblad_N1", failed ? INFINITY : report.max_n1_deviation, 1e-2, sweep_detail);
  add(report, "analytic_vs_lindblad_g2", failed ? INFINITY : report.max_g2_deviation, 2e-2, sweep_detail);
  add(report, "populations_vs_amplitudes", failed ? INFINITY : worst_p, 1e-2, "P_mn > 1e-14, " + sweep_detail);

  // State invariants and observable consistency at the given drive.
  const auto basis5 = build_basis(PerModeTruncation{5, 5});
  double invariants = 0.0, normalization = 0.0, moments = 0.0, diagonal = 0.0;
  for (double g : probe_points) {
    const auto q = at(p, g);
    const auto ss = steady_state(build_liouvillian(q, basis5, true));
    const auto& rho = ss.rho;
    invariants = std::max({invariants, rho.hermiticity_error() / 1e-10, rho.trace_error() / 1e-10,
                           -rho.min_eigenvalue() / 1e-8});
    const auto s = photon_statistics(rho);
    double total = 0.0, min_p = 0.0, m_sum = 0.0, n_sum = 0.0;
    for (std::size_t k = 0; k < s.joint.size(); ++k) {
      total += s.joint[k];
      min_p = std::min(min_p, s.joint[k]);
      m_sum += s.states[k].m * s.joint[k];
      n_sum += s.states[k].n * s.joint[k];
    }
    normalization = std::max({normalization, std::abs(total - 1.0) / 1e-8, -min_p / 1e-10});
    moments = std::max({moments, rel(s.N1, m_sum), rel(s.N2, n_sum)});
    double fact = 0.0, mean = 0.0;
    for (std::size_t m = 0; m < s.marginal.size(); ++m) {
      fact += static_cast<double>(m * (m - (m > 0 ? 1 : 0))) * s.marginal[m];
      mean += static_cast<double>(m) * s.marginal[m];
    }
    diagonal = std::max(diagonal, std::abs(s.g2() - fact / (mean * mean)));
  }
  const std::string probe_detail = "gamma_tip in {0, 6, HEP}, per-mode cutoff 5";
  add(report, "steady_state_invariants", invariants, 1.0 + 1e-12,
      "max of hermiticity/1e-10, trace/1e-10, -min eigenvalue/1e-8; " + probe_detail);
  add(report, "probability_normalization", normalization, 1.0 + 1e-12, "max of |sum P - 1|/1e-8, -min P/1e-10");
  add(report, "moment_consistency", moments, 1e-10, "N1 and N2 against sum over P_mn");
  add(report, "diagonal_sufficiency", diagonal, 1e-10, "g2 from moments against sum m(m-1)P_m / N1^2");

  // Truncation convergence at the given drive.
  if (options.include_truncation_check) {
    const auto basis7 = build_basis(PerModeTruncation{7, 7});
    double worst = 0.0;
    for (double g : {6.0 * p.gamma1_prime()}) {
      const auto q = at(p, g);
      const auto a = stats_at(q, basis5);
      const auto b = stats_at(q, basis7);
      worst = std::max({worst, rel(a.N1, b.N1), rel(a.g2(), b.g2())});
    }
    add(report, "truncation_convergence", worst, 1e-6, "per-mode cutoff 5 against 7 at gamma_tip = 6");
  }

  // Global drive phase.
  {
    const auto q = at(p, 6.0 * p.gamma1_prime());
    SystemParams r = q;
    r.drive_phase = q.drive_phase + 0.7;
    const auto a = stats_at(q, basis5);
    const auto b = stats_at(r, basis5);
    add(report, "drive_phase_invariance", std::max({rel(a.N1, b.N1), rel(a.g2(), b.g2()), rel(a.g3(), b.g3())}), 1e-10,
        "drive phase shifted by 0.7 rad");
  }

  // Analytic-module invariants.
  {
    SystemParams tiny = p;
    tiny.omega_drive = 1e-3 * p.gamma1_prime();
    double worst = 0.0;
    for (double g : probe_points) {
      const auto obs = analytic_observables(steady_amplitudes(at(tiny, g)));
      worst = std::max(worst, rel(obs.g2_approx, obs.g2));
    }
    add(report, "g2_approx_limit", worst, 1e-3, "|g2_approx/g2 - 1| at Omega = 1e-3");
  }
  {
    double worst = 0.0;
    for (double g : probe_points) {
      const auto q = at(p, g);
      const auto a = steady_amplitudes(q);
      const cplx i(0.0, 1.0);
      const cplx D1 = q.delta - i * q.gamma1_prime() / 2.0;
      const cplx D2 = q.delta - i * q.gamma2_prime() / 2.0;
      const cplx D3 = D1 + q.chi, D4 = D1 + 2.0 * q.chi;
      const cplx D5 = 2.0 * D3 + D2, D6 = D1 + 2.0 * D2;
      const double J2 = q.J * q.J;
      const cplx xi1 = (D1 + D2) * D3 - J2;
      const cplx eta3 = J2 - D2 * D6;
      const cplx xi2 = J2 - D4 * (4.0 * D2 + D5);
      const std::pair<cplx, cplx> pairs[] = {
          {a.D1, D1}, {a.D2, D2}, {a.D3, D3}, {a.D4, D4}, {a.D5, D5}, {a.D6, D6},
          {a.eta1, D1 * D2 - J2}, {a.xi1, xi1}, {a.eta2, 2.0 * D2 * (xi1 - J2 * D3 / D2)}, {a.eta3, eta3}, {a.xi2, xi2},
          {a.mu, J2 * xi2 + D2 * D6 * (D4 * D5 - J2)}};
      for (const auto& [stored, recomputed] : pairs)
        worst = std::max(worst, std::abs(stored - recomputed) / std::max(std::abs(recomputed), 1e-300));
    }
    add(report, "intermediate_identities", worst, 1e-12, "intermediates recomputed from the complex detunings");
  }
  {
    // Amplitudes must solve the truncated equations of motion H_eff C + V C = 0 block by block.
    const auto basis3 = build_basis(TotalTruncation{3});
    double worst = 0.0;
    for (double g : probe_points) {
      auto q = at(p, g);
      q.omega_c = q.delta;
      const auto amps = steady_amplitudes(q);
      const auto h = build_hamiltonian(q, basis3, HamiltonianVariant::ExcitationConservingNonHermitian).data();
      const Eigen::MatrixXcd v =
          q.omega_drive * std::polar(1.0, q.drive_phase) * mode_operator(basis3, Mode::One, LadderKind::Create).data();
      const auto& states = basis3->states();
      Eigen::VectorXcd c(static_cast<Eigen::Index>(states.size()));
      for (std::size_t k = 0; k < states.size(); ++k) c(static_cast<Eigen::Index>(k)) = amps.amplitude(states[k].m, states[k].n);
      const Eigen::VectorXcd r = h * c + v * c;
      for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].total() == 0) continue;
        // Scale by the size of the terms that must cancel.
        const auto row = static_cast<Eigen::Index>(k);
        const double size = (h.row(row).cwiseAbs() * c.cwiseAbs()).value() + (v.row(row).cwiseAbs() * c.cwiseAbs()).value();
        worst = std::max(worst, std::abs(r(row)) / std::max(size, 1e-300));
      }
    }
    add(report, "amplitude_equations", worst, 1e-10, "residual of the N <= 3 equations of motion");
  }
  {
    SystemParams a = p;
    a.chi = 0.0;
    a.gamma_tip = 0.0;
    a.delta = 0.3;
    SystemParams b = a;
    b.gamma_1 = a.gamma2_prime();
    b.gamma_ex = 0.0;
    b.gamma_2 = a.gamma1_prime();
    const auto x = steady_amplitudes(a);
    const auto y = steady_amplitudes(b);
    const double worst = std::max({std::abs(x.D1 - y.D2), std::abs(x.D2 - y.D1), std::abs(x.eta1 - y.eta1) / std::abs(x.eta1)});
    add(report, "loss_swap_symmetry", worst, 1e-12, "chi = 0, resonator losses exchanged: D1 <-> D2, eta1 invariant");
  }

  // Excitation spectrum properties.
  {
    SystemParams lin = p;
    lin.chi = 0.0;
    lin.omega_drive = options.weak_drive;
    const auto grid_d = linspace(-5.0, 5.0, 41);
    // Without the Kerr term the system is linear, so the master-equation N1 scales exactly
    // with Omega^2; the weak-drive amplitudes would carry O(Omega^2) corrections.
    const auto s_a = excitation_spectrum(lin, grid_d, Backend::Lindblad);
    lin.omega_drive *= 3.0;
    const auto s_b = excitation_spectrum(lin, grid_d, Backend::Lindblad);
    SystemParams kerr = p;
    kerr.omega_drive = options.weak_drive;
    const auto k_a = excitation_spectrum(kerr, grid_d, Backend::Analytic);
    kerr.omega_drive *= 2.0;
    const auto k_b = excitation_spectrum(kerr, grid_d, Backend::Analytic);
    double linear = 0.0, kerr_change = 0.0;
    for (std::size_t k = 0; k < grid_d.size(); ++k) {
      linear = std::max(linear, rel(s_b.s1[k], s_a.s1[k]));
      kerr_change = std::max(kerr_change, rel(k_b.s1[k], k_a.s1[k]));
    }
    add(report, "spectrum_linear_scaling", linear, 1e-8, "chi = 0, Omega scaled by 3, master equation");
    add(report, "spectrum_weak_drive", kerr_change, 1e-2, "Omega doubled from " + format_double(options.weak_drive));
  }
  {
    double mismatches = 0.0;
    for (double g : {0.0, 4.0, hep, 12.0}) {
      SystemParams q = p;
      q.gamma_tip = std::max(0.0, g) * p.gamma1_prime();
      const auto coarse = excitation_spectrum(q, linspace(-6.0, 6.0, 501), Backend::Analytic);
      const auto fine = excitation_spectrum(q, linspace(-6.0, 6.0, 1001), Backend::Analytic);
      if (coarse.peaks.size() != fine.peaks.size()) mismatches += 1.0;
    }
    add(report, "peak_detection_stability", mismatches, 0.5, "peak counts on 501 and 1001 point grids");
  }

  // Closed-form spectra and exceptional points.
  {
    double worst = 0.0;
    for (double g : linspace(0.0, options.gamma_tip_max * p.gamma1_prime(), 13)) {
      SystemParams q = p;
      q.gamma_tip = g;
      const double scale = q.rate_scale();
      const auto one = one_photon_eigensystem_closed(q);
      if (one.degenerate) continue;
      worst = std::max(worst, max_relative_mismatch(one.eigenvalues, subspace_eigensystem_numeric(q, 1).eigenvalues, scale));
      worst = std::max(worst, max_relative_mismatch(two_photon_eigensystem_closed(q).eigenvalues,
                                                    subspace_eigensystem_numeric(q, 2).eigenvalues, scale));
    }
    add(report, "closed_form_spectra", worst, 1e-8, "one- and two-photon blocks, 13 loss values");
  }
  {
    const auto [lo, hi] = lep_search_window(p);
    double value = INFINITY;
    std::string detail;
    try {
      const auto lep = lep_locate(p, lo, hi);
      value = lep.confirmed ? std::abs(lep.gamma_tip - hep) / hep : INFINITY;
      detail = "LEP " + format_double(lep.gamma_tip) + ", HEP " + format_double(hep) + ", gap " + format_double(lep.gap) +
               ", overlap " + format_double(lep.overlap);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add(report, "lep_matches_hep", value, 2e-2, detail);
  }
  return report;
}

}  // namespace lossblockade
