// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "lossblockade/analytic.hpp"
#include "lossblockade/dataset.hpp"
#include "lossblockade/error.hpp"
#include "lossblockade/experiments.hpp"
#include "lossblockade/liouvillian.hpp"
#include "lossblockade/observables.hpp"
#include "lossblockade/presets.hpp"
#include "lossblockade/spectral.hpp"
#include "oracles.hpp"

using namespace lossblockade;

namespace {

int failures = 0;

std::string fmt(double x) { return format_double(x); }

bool within(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

void report(int number, const std::string& title, const std::function<std::pair<bool, std::string>()>& check) {
  bool passed = false;
  std::string detail;
  try {
    std::tie(passed, detail) = check();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!passed) ++failures;
  std::printf("%s criterion %d: %s (%s)\n", passed ? "PASS" : "FAIL", number, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

SystemParams preset() { return builtin_preset("paper_fig2").params; }

SystemParams at(SystemParams p, double gamma_tip) {
  p.gamma_tip = gamma_tip;
  p.delta = DetuningProtocol::track_upper_branch().resolve(p);
  return p;
}

PhotonStatistics lindblad_stats(const SystemParams& p, const BasisPtr& basis) {
  return photon_statistics(steady_state(build_liouvillian(p, basis, true)).rho);
}

}  // namespace

int main() {
  const SystemParams p = preset();
  const double hep = hep_location(p.J, p.gamma1_prime(), p.gamma_2).gamma_tip;
  const auto basis5 = build_basis(PerModeTruncation{5, 5});

  report(1, "HEP location from eigenvalue coalescence", [&] {
    auto gap = [&](double g) {
      SystemParams q = p;
      q.gamma_tip = g;
      const auto ev = subspace_eigensystem_numeric(q, 1).eigenvalues;
      return std::abs(ev[0] - ev[1]);
    };
    const auto [g_min, gap_min] = boost::math::tools::brent_find_minima(gap, hep - 1.0, hep + 1.5, 50);
    const double err = std::abs(g_min - hep);
    return std::make_pair(std::abs(hep - 8.9) < 1e-12 && err < 1e-3,
                          "closed form " + fmt(hep) + ", numeric " + fmt(g_min) + ", gap " + fmt(gap_min));
  });

  report(2, "HEP and LEP agree over J", [&] {
    const auto rows = ep_agreement(p, {1.0, 1.5, 2.0, 3.0});
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
      ok = ok && r.lep && *r.relative < 2e-2;
      detail += "J=" + fmt(r.J) + ": " + (r.relative ? fmt(*r.relative) : "no LEP " + r.error) + "; ";
    }
    return std::make_pair(ok, detail);
  });

  // Reference-value criteria: preset under upper-branch tracking, master-equation backend.
  SweepOptions sweep_options;
  const auto protocol = DetuningProtocol::track_upper_branch();
  const Backends lindblad_only{false, true};
  const auto table = sweep_loss(p, linspace(0.0, 12.0, 121), protocol, lindblad_only, sweep_options);
  CriticalPointOptions cp_options;
  cp_options.evaluator = make_evaluator(p, protocol, lindblad_only, sweep_options);
  cp_options.locate_lep = false;
  const auto cps = critical_points(table, p, cp_options);

  report(3, "quantum critical points", [&] {
    if (!cps.cp_q_down || !cps.cp_q_up) return std::make_pair(false, std::string("crossing missing"));
    const double d = cps.cp_q_down->value, u = cps.cp_q_up->value;
    return std::make_pair(within(d, 1.8, 0.15) && within(u, 6.5, 0.15), "down " + fmt(d) + ", up " + fmt(u));
  });

  report(4, "classical critical point", [&] {
    if (!cps.cp_c) return std::make_pair(false, std::string("no interior N1 minimum"));
    const double g = cps.cp_c->value;
    const double n1 = cp_options.evaluator(g).N1;
    const bool ok = within(g, 5.3, 0.10) && n1 >= 0.003 / 3.0 && n1 <= 0.003 * 3.0;
    return std::make_pair(ok, "at " + fmt(g) + ", N1 " + fmt(n1));
  });

  report(5, "blockade endpoints", [&] {
    const double g2_0 = table.rows.front().lindblad->g2;
    double g2_max = 0.0;
    for (const auto& r : table.rows)
      if (!r.failed()) g2_max = std::max(g2_max, r.lindblad->g2);
    const double g2_ep = lindblad_stats(at(p, hep), basis5).g2();
    const bool ok = within(g2_0, 0.23, 0.20) && within(g2_max, 1.42, 0.20) && g2_ep < 0.5;
    return std::make_pair(ok, "g2(0) " + fmt(g2_0) + ", max " + fmt(g2_max) + ", g2(EP) " + fmt(g2_ep));
  });

  report(6, "two-photon blockade window", [&] {
    const auto s = lindblad_stats(at(p, 6.0), basis5);
    const double g2 = s.g2(), g3 = s.g3();
    const bool ok = within(g3, 0.27, 0.30) && within(g2, 1.12, 0.20) && g3 < 1.0 && 1.0 < g2;
    return std::make_pair(ok, "g2 " + fmt(g2) + ", g3 " + fmt(g3));
  });

  report(7, "photon distribution against Poisson", [&] {
    const auto mid = poisson_comparison(lindblad_stats(at(p, 6.0), basis5).marginal);
    const auto ep = poisson_comparison(lindblad_stats(at(p, hep), basis5).marginal);
    const bool ok = mid[2].deviation > 0.0 && mid[3].deviation < 0.0 && ep[1].deviation > 0.0 && ep[2].deviation < 0.0;
    return std::make_pair(ok, "P/Poisson at 6: m=2 " + fmt(mid[2].ratio) + ", m=3 " + fmt(mid[3].ratio) + "; at EP: m=1 " +
                                  fmt(ep[1].ratio) + ", m=2 " + fmt(ep[2].ratio));
  });

  report(8, "analytic amplitudes match the master equation", [&] {
    std::mt19937_64 rng(20261016);
    double worst_low = 0.0, worst_three = 0.0, worst_chi0_analytic = 0.0, worst_chi0_numeric = 0.0;
    SystemParams worst_set;
    for (int k = 0; k < 50; ++k) {
      SystemParams q = oracle::random_params(rng);
      q.omega_drive = 1e-2;
      const auto a = evaluate_analytic(q);
      const auto l = evaluate_lindblad(q, basis5);
      if (!a.ok || !l.ok) throw NumericalFailure("point " + std::to_string(k) + ": " + a.error + l.error);
      for (std::size_t i = 1; i < kSnapshotSize; ++i) {
        const double dev = std::abs(a.P[i] / l.P[i] - 1.0);
        if (i < 6) {
          worst_low = std::max(worst_low, dev);
        } else if (dev > worst_three) {
          worst_three = dev;
          worst_set = q;
        }
      }
      q.chi = 0.0;
      worst_chi0_analytic = std::max(worst_chi0_analytic, std::abs(analytic_observables(steady_amplitudes(q)).g2_approx - 1.0));
      worst_chi0_numeric = std::max(worst_chi0_numeric, std::abs(lindblad_stats(q, basis5).g2() - 1.0));
    }
    // Diagnostic only: the same worst set at a ten times weaker drive shows whether the
    // deviation is a higher-order drive correction (it then drops a hundredfold).
    worst_set.omega_drive = 1e-3;
    const auto a = evaluate_analytic(worst_set);
    const auto l = evaluate_lindblad(worst_set, basis5);
    double weak = 0.0;
    for (std::size_t i = 1; i < kSnapshotSize; ++i) weak = std::max(weak, std::abs(a.P[i] / l.P[i] - 1.0));
    const bool ok = std::max(worst_low, worst_three) < 1e-2 && worst_chi0_analytic < 1e-8 && worst_chi0_numeric < 1e-3;
    return std::make_pair(ok, "max P_mn deviation " + fmt(worst_low) + " for m+n<=2, " + fmt(worst_three) +
                                  " for m+n=3 (worst set at Omega=1e-3: " + fmt(weak) + "), chi=0 g2 analytic " +
                                  fmt(worst_chi0_analytic) + ", numeric " + fmt(worst_chi0_numeric));
  });

  report(9, "closed-form one- and two-photon spectra", [&] {
    std::mt19937_64 rng(9);
    double worst = 0.0;
    int skipped = 0;
    for (int k = 0; k < 100; ++k) {
      const SystemParams q = oracle::random_params(rng);
      const auto one = one_photon_eigensystem_closed(q);
      const auto two = two_photon_eigensystem_closed(q);
      if (one.degenerate || two.degenerate) {
        ++skipped;
        continue;
      }
      const double scale = q.rate_scale();
      worst = std::max(worst, max_relative_mismatch(one.eigenvalues, oracle::block_eigenvalues(q, 1), scale));
      worst = std::max(worst, max_relative_mismatch(two.eigenvalues, oracle::block_eigenvalues(q, 2), scale));
    }
    return std::make_pair(worst < 1e-8 && skipped < 10, "max relative mismatch " + fmt(worst) + ", skipped " + std::to_string(skipped));
  });

  report(10, "steady-state invariants and cutoff convergence", [&] {
    double herm = 0.0, trace = 0.0, min_eig = 0.0;
    for (double g : linspace(0.0, 12.0, 25)) {
      const auto rho = steady_state(build_liouvillian(at(p, g), basis5, true)).rho;
      herm = std::max(herm, rho.hermiticity_error());
      trace = std::max(trace, rho.trace_error());
      min_eig = std::min(min_eig, rho.min_eigenvalue());
    }
    const auto basis7 = build_basis(PerModeTruncation{7, 7});
    double change = 0.0;
    for (double g : {0.0, 6.0, hep}) {
      const auto s5 = lindblad_stats(at(p, g), basis5);
      const auto s7 = lindblad_stats(at(p, g), basis7);
      change = std::max({change, std::abs(s5.N1 / s7.N1 - 1.0), std::abs(s5.g2() / s7.g2() - 1.0)});
    }
    const bool ok = herm < 1e-10 && trace < 1e-10 && min_eig >= -1e-8 && change < 1e-6;
    return std::make_pair(ok, "hermiticity " + fmt(herm) + ", trace " + fmt(trace) + ", min eigenvalue " + fmt(min_eig) +
                                  ", cutoff change " + fmt(change));
  });

  report(11, "excitation spectrum morphology", [&] {
    const auto grid = linspace(-6.0, 6.0, 501);
    std::string detail;
    bool ok = true;
    for (double g : {0.0, hep, 12.0}) {
      SystemParams q = p;
      q.gamma_tip = g;
      const auto s = excitation_spectrum(q, grid, Backend::Lindblad);
      const std::size_t expected = g == 0.0 ? 2 : 1;
      ok = ok && s.peaks.size() == expected;
      detail += "gamma_tip " + fmt(g) + ": " + std::to_string(s.peaks.size()) + " peaks; ";
    }
    return std::make_pair(ok, detail);
  });

  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
