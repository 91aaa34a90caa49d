#include "lossblockade/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/interpolators/barycentric_rational.hpp>

#include "lossblockade/analytic.hpp"
#include "lossblockade/error.hpp"
#include "lossblockade/roots.hpp"
#include "lossblockade/spectral.hpp"

namespace lossblockade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// sqrt(J^2 - beta^2) on the principal branch: real below the HEP, imaginary above.
cplx one_photon_root(const SystemParams& p) {
  const auto r = derived_rates(p);
  return std::sqrt(cplx(p.J * p.J - r.beta * r.beta, 0.0));
}

const std::vector<FockState>& snapshot_states() {
  static const std::vector<FockState> states = build_basis(TotalTruncation{kSnapshotExcitations})->states();
  return states;
}

void require_ascending(const std::vector<double>& grid, const std::string& what) {
  if (grid.empty()) throw InvalidArgument(what + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw InvalidArgument(what + " grid contains a non-finite value");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InvalidArgument(what + " grid must be strictly ascending");
  }
}

nlohmann::json truncation_json(const Truncation& t) {
  if (const auto* total = std::get_if<TotalTruncation>(&t)) return {{"total", total->n_max}};
  const auto& per = std::get<PerModeTruncation>(t);
  return {{"per_mode", {per.n1_max, per.n2_max}}};
}

nlohmann::json grid_json(const std::vector<double>& grid) {
  return {{"start", grid.front()}, {"stop", grid.back()}, {"count", grid.size()}, {"values", grid}};
}

std::string fmt(double x) { return format_double(x); }
std::string fmt_bool(bool b) { return b ? "1" : "0"; }

std::string snapshot_column(const std::string& prefix, const FockState& s) {
  return prefix + "_P" + std::to_string(s.m) + std::to_string(s.n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Protocols and backends

double DetuningProtocol::resolve(const SystemParams& p) const {
  if (kind == Kind::Fixed) return delta;
  // Re lambda_1^+ = omega_c + Re sqrt(J^2 - beta^2); Delta = omega_c - Re lambda_1^+.
  return -one_photon_root(p).real();
}

std::string DetuningProtocol::describe() const {
  if (kind == Kind::TrackUpperBranch) return "track_upper_branch";
  return "fixed(" + format_double(delta) + ")";
}

DetuningProtocol protocol_from_string(const std::string& s, double fixed_delta) {
  if (s == "track_upper_branch" || s == "track") return DetuningProtocol::track_upper_branch();
  if (s == "fixed") return DetuningProtocol::fixed(fixed_delta);
  throw InvalidArgument("unknown detuning protocol '" + s + "' (expected track_upper_branch or fixed)");
}

Backends Backends::from_string(const std::string& s) {
  if (s == "analytic") return {true, false};
  if (s == "lindblad") return {false, true};
  if (s == "both") return {true, true};
  throw InvalidArgument("unknown backend selection '" + s + "' (expected analytic, lindblad or both)");
}

std::string Backends::describe() const {
  if (analytic && lindblad) return "both";
  return analytic ? "analytic" : "lindblad";
}

// ---------------------------------------------------------------------------
// Point evaluation

PointResult evaluate_analytic(const SystemParams& p) {
  PointResult r;
  try {
    const auto amps = steady_amplitudes(p);
    const auto obs = analytic_observables(amps);
    const auto& states = snapshot_states();
    double norm = 0.0;
    for (const auto& s : states) norm += amps.probability(s.m, s.n);
    r.marginal.assign(kSnapshotExcitations + 1, 0.0);
    for (std::size_t k = 0; k < states.size(); ++k) {
      r.P[k] = amps.probability(states[k].m, states[k].n) / norm;
      r.marginal[static_cast<std::size_t>(states[k].m)] += r.P[k];
    }
    r.N1 = obs.N1;
    r.N2 = obs.N2;
    r.g2 = obs.g2;
    r.g3 = obs.g3;
    r.ok = true;
  } catch (const SingularParameter& e) {
    r.error = std::string("singular ") + e.factor() + ": " + e.what();
  } catch (const UndefinedCorrelation& e) {
    r.error = e.what();
  }
  return r;
}

PointResult evaluate_lindblad(const SystemParams& p, const BasisPtr& basis) {
  PointResult r;
  try {
    const auto ss = steady_state(build_liouvillian(p, basis, true));
    const auto stats = photon_statistics(ss.rho);
    r.N1 = stats.N1;
    r.N2 = stats.N2;
    const auto& states = snapshot_states();
    for (std::size_t k = 0; k < states.size(); ++k) r.P[k] = stats.P(states[k].m, states[k].n);
    r.marginal = stats.marginal;
    r.g2 = stats.g2();
    r.g3 = stats.g3();
    r.ok = true;
  } catch (const NumericalFailure& e) {
    r.error = e.what();
  } catch (const UndefinedCorrelation& e) {
    r.error = e.what();
  }
  return r;
}

bool SweepRow::failed() const { return (analytic && !analytic->ok) || (lindblad && !lindblad->ok); }

const PointResult* SweepRow::preferred() const {
  if (lindblad && lindblad->ok) return &*lindblad;
  if (analytic && analytic->ok) return &*analytic;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Loss sweep

SweepTable sweep_loss(const SystemParams& p, const std::vector<double>& gamma_tip_grid, const DetuningProtocol& protocol,
                      const Backends& backends, const SweepOptions& options) {
  p.validate();
  require_ascending(gamma_tip_grid, "gamma_tip");
  if (!backends.analytic && !backends.lindblad) throw InvalidArgument("no backend selected");
  BasisPtr basis;
  if (backends.lindblad) {
    basis = build_basis(options.lindblad_truncation);
    if (basis->size() > kDefaultMaxBasisDim)
      throw ResourceLimit("truncation gives " + std::to_string(basis->size()) + " states, above the cap of " +
                          std::to_string(kDefaultMaxBasisDim));
  }

  SweepTable table;
  table.rows = parallel_map<SweepRow>(
      gamma_tip_grid.size(),
      [&](std::size_t i) {
        SystemParams q = p;
        q.gamma_tip = gamma_tip_grid[i];
        q.delta = protocol.resolve(q);
        SweepRow row;
        row.gamma_tip = q.gamma_tip;
        row.delta_used = q.delta;
        const auto root = one_photon_root(q);
        const cplx centre(q.omega_c, -derived_rates(q).Gamma);
        row.lambda1_plus = centre + root;
        row.lambda1_minus = centre - root;
        if (backends.analytic) row.analytic = evaluate_analytic(q);
        if (backends.lindblad) row.lindblad = evaluate_lindblad(q, basis);
        return row;
      },
      options.threads);

  table.provenance = {
      {"experiment", "sweep_loss"},
      {"params", to_json(p)},
      {"protocol", protocol.describe()},
      {"backends", backends.describe()},
      {"gamma_tip_grid", grid_json(gamma_tip_grid)},
      {"code_version", LOSSBLOCKADE_VERSION},
  };
  if (backends.lindblad) table.provenance["lindblad_truncation"] = truncation_json(options.lindblad_truncation);
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& row : table.rows) {
    if (row.analytic && !row.analytic->ok)
      failures.push_back({{"gamma_tip", row.gamma_tip}, {"backend", "analytic"}, {"error", row.analytic->error}});
    if (row.lindblad && !row.lindblad->ok)
      failures.push_back({{"gamma_tip", row.gamma_tip}, {"backend", "lindblad"}, {"error", row.lindblad->error}});
  }
  table.provenance["failures"] = failures;
  return table;
}

// ---------------------------------------------------------------------------
// Critical points

nlohmann::json CriticalPoints::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  auto put = [&](const char* key, const std::optional<CriticalPoint>& cp) {
    if (!cp) return;
    j[key] = {{"value", cp->value}, {"bracket", {cp->bracket_lo, cp->bracket_hi}}, {"residual", cp->residual}};
  };
  put("cp_c", cp_c);
  put("cp_q_down", cp_q_down);
  put("cp_q_up", cp_q_up);
  put("ep", ep);
  put("lep", lep);
  return j;
}

std::pair<double, double> lep_search_window(const SystemParams& p) {
  const double hep = hep_location(p.J, p.gamma1_prime(), p.gamma_2).gamma_tip;
  const double half = std::max(2.0 * p.gamma1_prime(), 0.25 * std::abs(hep));
  return {std::max(0.0, hep - half), std::max(hep, 0.0) + half};
}

CriticalPoints critical_points(const SweepTable& table, const SystemParams& p, const CriticalPointOptions& options) {
  std::vector<std::pair<double, const PointResult*>> valid;
  for (const auto& row : table.rows)
    if (const auto* r = row.preferred(); r && std::isfinite(r->N1) && std::isfinite(r->g2))
      valid.emplace_back(row.gamma_tip, r);
  std::sort(valid.begin(), valid.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  valid.erase(std::unique(valid.begin(), valid.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              valid.end());
  if (valid.size() < 5) throw InvalidArgument("critical_points needs at least 5 valid rows");

  std::vector<double> x, n1, g2;
  for (const auto& [g, r] : valid) {
    x.push_back(g);
    n1.push_back(r->N1);
    g2.push_back(r->g2);
  }

  std::function<double(double)> N1_at;
  std::function<double(double)> g2_at;
  if (options.evaluator) {
    N1_at = [&](double g) { return options.evaluator(g).N1; };
    g2_at = [&](double g) { return options.evaluator(g).g2; };
  } else {
    // Floater-Hormann rational interpolant of order 3: reproduces cubics exactly.
    using boost::math::barycentric_rational;
    auto n1_interp = std::make_shared<barycentric_rational<double>>(x.begin(), x.end(), n1.begin(), 3);
    auto g2_interp = std::make_shared<barycentric_rational<double>>(x.begin(), x.end(), g2.begin(), 3);
    N1_at = [n1_interp](double g) { return (*n1_interp)(g); };
    g2_at = [g2_interp](double g) { return (*g2_interp)(g); };
  }

  CriticalPoints out;
  const double tol = options.tolerance;

  const auto imin = static_cast<std::size_t>(std::min_element(n1.begin(), n1.end()) - n1.begin());
  if (imin > 0 && imin + 1 < x.size()) {
    const auto m = golden_section_minimize(N1_at, x[imin - 1], x[imin + 1], tol);
    const double rise = std::max(N1_at(m.x - tol), N1_at(m.x + tol)) - m.value;
    out.cp_c = CriticalPoint{m.x, x[imin - 1], x[imin + 1], rise};
  }

  auto refine_crossing = [&](std::size_t i) {
    const double fa = g2_at(x[i]) - 1.0;
    const double fb = g2_at(x[i + 1]) - 1.0;
    double root;
    if ((fa < 0.0) != (fb < 0.0)) {
      root = bisect_root([&](double g) { return g2_at(g) - 1.0; }, x[i], x[i + 1], fa, tol);
    } else {
      // The refinement function disagrees with the tabulated sign change; fall back
      // to linear interpolation of the table.
      root = x[i] + (x[i + 1] - x[i]) * (g2[i] - 1.0) / (g2[i] - g2[i + 1]);
    }
    return CriticalPoint{root, x[i], x[i + 1], std::abs(g2_at(root) - 1.0)};
  };

  std::optional<std::size_t> rising, falling;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const bool below_i = g2[i] < 1.0;
    const bool below_next = g2[i + 1] < 1.0;
    if (below_i == below_next) continue;
    if (below_i && !rising) rising = i;
    if (!below_i && !falling && (!rising || i > *rising)) falling = i;
  }
  if (rising) out.cp_q_down = refine_crossing(*rising);
  if (falling) out.cp_q_up = refine_crossing(*falling);

  const auto hep = hep_location(p.J, p.gamma1_prime(), p.gamma_2);
  if (hep.physical) {
    SystemParams q = p;
    q.gamma_tip = hep.gamma_tip;
    const double gap = 2.0 * std::abs(one_photon_root(q));
    out.ep = CriticalPoint{hep.gamma_tip, hep.gamma_tip, hep.gamma_tip, gap};

    if (options.locate_lep) {
      const auto [lo, hi] = lep_search_window(p);
      try {
        const auto lep = lep_locate(p, lo, hi, options.lep);
        if (lep.confirmed) out.lep = CriticalPoint{lep.gamma_tip, lo, hi, lep.gap};
      } catch (const NotFound&) {
      } catch (const NumericalFailure&) {
      }
    }
  }
  return out;
}

std::function<PointObservables(double)> make_evaluator(const SystemParams& p, const DetuningProtocol& protocol,
                                                       const Backends& backends, const SweepOptions& options) {
  BasisPtr basis = backends.lindblad ? build_basis(options.lindblad_truncation) : nullptr;
  return [p, protocol, basis](double gamma_tip) {
    SystemParams q = p;
    q.gamma_tip = gamma_tip;
    q.delta = protocol.resolve(q);
    const auto r = basis ? evaluate_lindblad(q, basis) : evaluate_analytic(q);
    if (!r.ok) throw NumericalFailure("evaluation failed at gamma_tip = " + format_double(gamma_tip) + ": " + r.error);
    return PointObservables{r.N1, r.g2};
  };
}

// ---------------------------------------------------------------------------
// Spectrum map and EP agreement

SpectrumMap spectrum_map(const SystemParams& p, const std::vector<double>& gamma_tip_grid,
                         const std::vector<double>& delta_grid, Backend backend, const SweepOptions& options) {
  if (gamma_tip_grid.empty() || delta_grid.empty()) throw InvalidArgument("spectrum map needs nonempty grids");
  const auto spectra = parallel_map<ExcitationSpectrum>(
      gamma_tip_grid.size(),
      [&](std::size_t i) {
        SystemParams q = p;
        q.gamma_tip = gamma_tip_grid[i];
        return excitation_spectrum(q, delta_grid, backend, options.lindblad_truncation);
      },
      options.threads);
  SpectrumMap map;
  map.gamma_tip = gamma_tip_grid;
  map.delta = delta_grid;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    map.s1.push_back(spectra[i].s1);
    map.valid.push_back(spectra[i].valid);
    map.peaks.push_back(spectra[i].peaks);
    SystemParams q = p;
    q.gamma_tip = gamma_tip_grid[i];
    const double split = one_photon_root(q).real();
    map.branch_delta_plus.push_back(-split);
    map.branch_delta_minus.push_back(split);
  }
  return map;
}

std::vector<EpAgreementRow> ep_agreement(const SystemParams& p, const std::vector<double>& J_grid,
                                         const LepOptions& options, unsigned threads) {
  require_ascending(J_grid, "J");
  if (J_grid.front() <= 0.0) throw InvalidArgument("J grid must be positive");
  return parallel_map<EpAgreementRow>(
      J_grid.size(),
      [&](std::size_t i) {
        SystemParams q = p;
        q.J = J_grid[i];
        EpAgreementRow row;
        row.J = q.J;
        row.hep = hep_location(q.J, q.gamma1_prime(), q.gamma_2).gamma_tip;
        const auto [lo, hi] = lep_search_window(q);
        try {
          const auto lep = lep_locate(q, lo, hi, options);
          if (lep.confirmed) {
            row.lep = lep.gamma_tip;
            row.relative = std::abs(row.hep - lep.gamma_tip) / std::abs(row.hep);
          } else {
            row.error = "coalescence not confirmed (gap " + format_double(lep.gap) + ", overlap " +
                        format_double(lep.overlap) + ")";
          }
        } catch (const NotFound& e) {
          row.error = e.what();
        } catch (const NumericalFailure& e) {
          row.error = e.what();
        }
        return row;
      },
      threads);
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count == 0) throw InvalidArgument("grid needs at least one point");
  if (count == 1) return {start};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = stop;
  return out;
}

// ---------------------------------------------------------------------------
// Datasets

Dataset sweep_dataset(const std::string& name, const SweepTable& table) {
  Dataset d;
  d.name = name;
  d.provenance = table.provenance;
  const bool has_analytic = !table.rows.empty() && table.rows.front().analytic.has_value();
  const bool has_lindblad = !table.rows.empty() && table.rows.front().lindblad.has_value();
  d.columns = {"gamma_tip", "delta_used", "failed", "lambda1_plus_re", "lambda1_plus_im", "lambda1_minus_re",
               "lambda1_minus_im"};
  auto add_columns = [&](const std::string& prefix) {
    for (const char* c : {"N1", "N2", "g2", "g3"}) d.columns.push_back(prefix + "_" + c);
    for (const auto& s : snapshot_states()) d.columns.push_back(snapshot_column(prefix, s));
  };
  if (has_analytic) add_columns("analytic");
  if (has_lindblad) add_columns("lindblad");

  auto add_values = [](std::vector<std::string>& cells, const PointResult& r) {
    for (double v : {r.N1, r.N2, r.g2, r.g3}) cells.push_back(fmt(v));
    for (double v : r.P) cells.push_back(r.ok ? fmt(v) : fmt(kNaN));
  };
  for (const auto& row : table.rows) {
    std::vector<std::string> cells{fmt(row.gamma_tip),           fmt(row.delta_used),         fmt_bool(row.failed()),
                                   fmt(row.lambda1_plus.real()),  fmt(row.lambda1_plus.imag()), fmt(row.lambda1_minus.real()),
                                   fmt(row.lambda1_minus.imag())};
    if (has_analytic) add_values(cells, *row.analytic);
    if (has_lindblad) add_values(cells, *row.lindblad);
    d.add_row(std::move(cells));
  }
  return d;
}

Dataset fig3a_dataset(const SweepTable& tracking, const SweepTable& fixed) {
  Dataset d;
  d.name = "fig3a";
  d.columns = {"protocol", "gamma_tip", "delta_used", "failed", "N1", "g2", "g3"};
  d.provenance = {{"tracking", tracking.provenance}, {"fixed", fixed.provenance}};
  for (const auto* table : {&tracking, &fixed}) {
    const std::string label = table->provenance.value("protocol", std::string("unknown"));
    for (const auto& row : table->rows) {
      const auto* r = row.preferred();
      d.add_row({label, fmt(row.gamma_tip), fmt(row.delta_used), fmt_bool(row.failed()), fmt(r ? r->N1 : kNaN),
                 fmt(r ? r->g2 : kNaN), fmt(r ? r->g3 : kNaN)});
    }
  }
  return d;
}

Dataset distribution_dataset(const SystemParams& p, const std::vector<double>& gamma_tips, const DetuningProtocol& protocol,
                             const SweepOptions& options) {
  Dataset d;
  d.name = "fig3b";
  d.columns = {"gamma_tip", "delta_used", "m", "P_m", "poisson", "deviation", "ratio"};
  const auto basis = build_basis(options.lindblad_truncation);
  for (double g : gamma_tips) {
    SystemParams q = p;
    q.gamma_tip = g;
    q.delta = protocol.resolve(q);
    const auto stats = photon_statistics(steady_state(build_liouvillian(q, basis, true)).rho);
    for (const auto& row : poisson_comparison(stats.marginal))
      d.add_row({fmt(g), fmt(q.delta), std::to_string(row.m), fmt(row.probability), fmt(row.poisson), fmt(row.deviation),
                 fmt(row.ratio)});
  }
  d.provenance = {{"experiment", "distribution"},
                  {"params", to_json(p)},
                  {"protocol", protocol.describe()},
                  {"gamma_tip_values", gamma_tips},
                  {"lindblad_truncation", truncation_json(options.lindblad_truncation)},
                  {"code_version", LOSSBLOCKADE_VERSION}};
  return d;
}

Dataset spectrum_map_dataset(const std::string& name, const SpectrumMap& map) {
  Dataset d;
  d.name = name;
  d.columns = {"gamma_tip", "delta", "S1", "valid", "is_peak", "branch_delta_plus", "branch_delta_minus"};
  nlohmann::json peaks = nlohmann::json::array();
  for (std::size_t i = 0; i < map.gamma_tip.size(); ++i) {
    std::vector<bool> is_peak(map.delta.size(), false);
    std::vector<double> positions;
    for (auto k : map.peaks[i]) {
      is_peak[k] = true;
      positions.push_back(map.delta[k]);
    }
    peaks.push_back({{"gamma_tip", map.gamma_tip[i]}, {"peak_count", positions.size()}, {"peak_delta", positions}});
    for (std::size_t k = 0; k < map.delta.size(); ++k)
      d.add_row({fmt(map.gamma_tip[i]), fmt(map.delta[k]), fmt(map.s1[i][k]), fmt_bool(map.valid[i][k]),
                 fmt_bool(is_peak[k]), fmt(map.branch_delta_plus[i]), fmt(map.branch_delta_minus[i])});
  }
  d.provenance["peaks"] = peaks;
  return d;
}

Dataset ep_agreement_dataset(const std::vector<EpAgreementRow>& rows) {
  Dataset d;
  d.name = "fig1b_ep";
  d.columns = {"J", "hep", "lep", "relative_difference", "lep_found"};
  nlohmann::json errors = nlohmann::json::array();
  for (const auto& r : rows) {
    d.add_row({fmt(r.J), fmt(r.hep), fmt(r.lep.value_or(kNaN)), fmt(r.relative.value_or(kNaN)), fmt_bool(r.lep.has_value())});
    if (!r.error.empty()) errors.push_back({{"J", r.J}, {"error", r.error}});
  }
  d.provenance["errors"] = errors;
  return d;
}

Dataset eigen_dataset(const SystemParams& p, const std::vector<double>& gamma_tip_grid) {
  require_ascending(gamma_tip_grid, "gamma_tip");
  Dataset d;
  d.name = "figS3";
  d.columns = {"gamma_tip", "lambda1_plus_re", "lambda1_plus_im", "lambda1_minus_re", "lambda1_minus_im", "one_photon_degenerate"};
  for (const char* label : {"zero", "plus", "minus"})
    for (const char* part : {"re", "im"}) d.columns.push_back(std::string("lambda2_") + label + "_" + part);
  for (int k = 0; k < 3; ++k)
    for (const char* part : {"re", "im"}) d.columns.push_back("lambda2_track" + std::to_string(k) + "_" + part);

  std::vector<cplx> previous;
  for (double g : gamma_tip_grid) {
    SystemParams q = p;
    q.gamma_tip = g;
    const auto one = one_photon_eigensystem_closed(q);
    const auto two = two_photon_eigensystem_closed(q);
    const cplx lp = one.eigenvalues[one.index_of(Branch::Plus)];
    const cplx lm = one.eigenvalues[one.index_of(Branch::Minus)];
    std::vector<std::string> cells{fmt(g), fmt(lp.real()), fmt(lp.imag()), fmt(lm.real()), fmt(lm.imag()), fmt_bool(one.degenerate)};
    std::vector<cplx> labelled;
    for (auto b : {Branch::Zero, Branch::Plus, Branch::Minus}) labelled.push_back(two.eigenvalues[two.index_of(b)]);
    for (const auto& v : labelled) {
      cells.push_back(fmt(v.real()));
      cells.push_back(fmt(v.imag()));
    }
    std::vector<cplx> tracked = labelled;
    if (!previous.empty()) {
      const auto perm = continue_branches(previous, labelled);
      for (std::size_t k = 0; k < perm.size(); ++k) tracked[k] = labelled[perm[k]];
    }
    for (const auto& v : tracked) {
      cells.push_back(fmt(v.real()));
      cells.push_back(fmt(v.imag()));
    }
    previous = tracked;
    d.add_row(std::move(cells));
  }
  d.provenance = {{"experiment", "eigen"},
                  {"params", to_json(p)},
                  {"gamma_tip_grid", grid_json(gamma_tip_grid)},
                  {"hep", hep_location(p.J, p.gamma1_prime(), p.gamma_2).gamma_tip},
                  {"code_version", LOSSBLOCKADE_VERSION}};
  return d;
}

Dataset localization_dataset(const SystemParams& p, const std::vector<double>& gamma_tip_grid) {
  require_ascending(gamma_tip_grid, "gamma_tip");
  Dataset d;
  d.name = "figS4";
  d.columns = {"gamma_tip"};
  for (const char* b : {"psi1_plus", "psi1_minus"})
    for (const char* s : {"01", "10"}) d.columns.push_back(std::string(b) + "_on_" + s);
  for (const char* b : {"psi2_zero", "psi2_plus", "psi2_minus"})
    for (const char* s : {"02", "11", "20"}) d.columns.push_back(std::string(b) + "_on_" + s);

  for (double g : gamma_tip_grid) {
    SystemParams q = p;
    q.gamma_tip = g;
    std::vector<std::string> cells{fmt(g)};
    const auto one = one_photon_eigensystem_closed(q);
    const auto w1 = localization(one);
    for (auto b : {Branch::Plus, Branch::Minus})
      for (double w : w1[one.index_of(b)]) cells.push_back(fmt(w));
    const auto two = two_photon_eigensystem_closed(q);
    const auto w2 = localization(two);
    for (auto b : {Branch::Zero, Branch::Plus, Branch::Minus})
      for (double w : w2[two.index_of(b)]) cells.push_back(fmt(w));
    d.add_row(std::move(cells));
  }
  d.provenance = {{"experiment", "localization"},
                  {"params", to_json(p)},
                  {"gamma_tip_grid", grid_json(gamma_tip_grid)},
                  {"block_order_one_photon", "(0,1), (1,0)"},
                  {"block_order_two_photon", "(0,2), (1,1), (2,0)"},
                  {"code_version", LOSSBLOCKADE_VERSION}};
  return d;
}

}  // namespace lossblockade
