#include "lossblockade/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lossblockade/dataset.hpp"
#include "lossblockade/error.hpp"
#include "lossblockade/experiments.hpp"
#include "lossblockade/presets.hpp"
#include "lossblockade/spectral.hpp"
#include "lossblockade/validation.hpp"

namespace lossblockade::cli {

namespace {

/// Options shared by every experiment subcommand.
struct RunConfig {
  std::string preset = "paper_fig2";
  std::string config_file;
  std::vector<std::string> overrides;  ///< key=value
  std::string out_dir;
  std::string units = "normalized";
  unsigned threads = 0;
  std::vector<int> cutoff{5, 5};

  // SI device inputs (used with --units si).
  std::optional<double> wavelength, quality, v_eff, chi3, p_in;
  double ex_fraction = 0.5;
  double j_ratio = 2.0;
  double gamma2_ratio = 0.1;
  std::string convention = "half";

  // Grids.
  std::optional<double> gamma_start, gamma_stop;
  std::optional<std::size_t> gamma_count;
  double delta_start = -6.0, delta_stop = 6.0;
  std::size_t delta_count = 1001;
  std::vector<double> gamma_tips;  ///< explicit list for spectrum/distribution
  std::vector<double> J_values{1.0, 1.5, 2.0, 3.0};

  std::string backend = "both";
  std::string protocol = "track_upper_branch";
  double fixed_delta = 0.0;
  bool refine = true;
  bool skip_fig3a = false;
  bool skip_truncation = false;
  std::optional<double> lep_lo, lep_hi;
};

struct Resolved {
  Preset preset;
  nlohmann::json provenance;
  std::filesystem::path out_dir;
  SweepOptions sweep;
};

Resolved resolve(const RunConfig& c, const std::string& command, std::ostream& err) {
  Resolved r;
  nlohmann::json source;
  if (!c.config_file.empty()) {
    std::ifstream in(c.config_file);
    if (!in) throw InvalidArgument("cannot read config file " + c.config_file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config file " + c.config_file + " is not valid JSON: " + e.what());
    }
    r.preset = preset_from_json(j);
    source = {{"config_file", c.config_file}};
  } else {
    r.preset = builtin_preset(c.preset);
    source = {{"preset", c.preset}};
  }

  if (c.units == "si") {
    if (!c.wavelength || !c.quality || !c.v_eff || !c.chi3 || !c.p_in)
      throw InvalidArgument("--units si requires --wavelength, --quality, --v-eff, --chi3 and --p-in");
    DeviceSpec d;
    d.wavelength = *c.wavelength;
    d.quality = *c.quality;
    d.v_eff = *c.v_eff;
    d.chi3_over_eps_r2 = *c.chi3;
    d.p_in = *c.p_in;
    d.ex_fraction = c.ex_fraction;
    d.J_ratio = c.j_ratio;
    d.gamma2_ratio = c.gamma2_ratio;
    d.convention = c.convention == "full" ? LinewidthConvention::FullWidth : LinewidthConvention::HalfWidth;
    r.preset.params = normalized_from_device(d);
    source["si_device"] = {{"wavelength", d.wavelength}, {"quality", d.quality},         {"v_eff", d.v_eff},
                           {"chi3", d.chi3_over_eps_r2}, {"p_in", d.p_in},               {"ex_fraction", d.ex_fraction},
                           {"J_ratio", d.J_ratio},       {"gamma2_ratio", d.gamma2_ratio}, {"convention", c.convention},
                           {"gamma1_prime_rad_per_s", device_gamma1_prime(d)}};
  }

  nlohmann::json applied = nlohmann::json::array();
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("override '" + kv + "' is not key=value");
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw InvalidArgument("override '" + kv + "' has a non-numeric value");
    }
    set_param(r.preset.params, key, value);
    applied.push_back({{"key", key}, {"value", value}});
    err << "override " << key << " = " << format_double(value) << '\n';
  }
  r.preset.params.validate();

  if (!c.out_dir.empty()) {
    r.out_dir = c.out_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    r.out_dir = env;
  } else {
    r.out_dir = "results";
  }
  if (c.cutoff.size() != 2 || c.cutoff[0] < 0 || c.cutoff[1] < 0)
    throw InvalidArgument("--cutoff needs two nonnegative integers");
  r.sweep.lindblad_truncation = PerModeTruncation{c.cutoff[0], c.cutoff[1]};
  r.sweep.threads = c.threads;
  r.provenance = {{"command", command}, {"source", source}, {"overrides", applied}, {"preset_name", r.preset.name}};
  return r;
}

std::vector<double> gamma_grid(const RunConfig& c, const Preset& preset) {
  return linspace(c.gamma_start.value_or(preset.gamma_tip_start), c.gamma_stop.value_or(preset.gamma_tip_stop),
                  c.gamma_count.value_or(preset.gamma_tip_count));
}

std::vector<double> delta_grid(const RunConfig& c) { return linspace(c.delta_start, c.delta_stop, c.delta_count); }

double hep_of(const SystemParams& p) { return hep_location(p.J, p.gamma1_prime(), p.gamma_2).gamma_tip; }

void merge(Dataset& d, const nlohmann::json& extra) {
  for (const auto& [k, v] : extra.items()) d.provenance["run"][k] = v;
}

std::string show(const std::optional<CriticalPoint>& cp) { return cp ? format_double(cp->value) : std::string("absent"); }

std::string round_to(double x, int digits) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << x;
  return s.str();
}

// ---------------------------------------------------------------------------

int cmd_sweep_loss(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "sweep-loss", err);
  const auto& p = r.preset.params;
  const auto grid = gamma_grid(c, r.preset);
  const auto protocol = protocol_from_string(c.protocol, c.fixed_delta);
  const auto backends = Backends::from_string(c.backend);
  const auto table = sweep_loss(p, grid, protocol, backends, r.sweep);
  auto d = sweep_dataset("fig2ab", table);
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  std::size_t failed = 0;
  for (const auto& row : table.rows) failed += row.failed() ? 1 : 0;
  out << "sweep-loss: " << table.rows.size() << " rows, " << failed << " failed, protocol " << protocol.describe()
      << ", wrote " << path.string() << '\n';

  if (!c.skip_fig3a) {
    // Both detuning protocols: tracking, and the tracked detuning at the first grid point held fixed.
    SystemParams start = p;
    start.gamma_tip = grid.front();
    const auto tracking = DetuningProtocol::track_upper_branch();
    const auto fixed = DetuningProtocol::fixed(tracking.resolve(start));
    const Backends numeric{false, true};
    const auto t1 = protocol.kind == DetuningProtocol::Kind::TrackUpperBranch && backends.lindblad
                        ? table
                        : sweep_loss(p, grid, tracking, numeric, r.sweep);
    const auto t2 = sweep_loss(p, grid, fixed, numeric, r.sweep);
    auto d3 = fig3a_dataset(t1, t2);
    merge(d3, r.provenance);
    out << "sweep-loss: wrote " << write_dataset(d3, r.out_dir).string() << " (protocols " << tracking.describe() << ", "
        << fixed.describe() << ")\n";
  }
  return failed ? 1 : 0;
}

int cmd_critical_points(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "critical-points", err);
  const auto& p = r.preset.params;
  const auto protocol = protocol_from_string(c.protocol, c.fixed_delta);
  const auto backends = Backends::from_string(c.backend);
  const auto table = sweep_loss(p, gamma_grid(c, r.preset), protocol, backends, r.sweep);
  CriticalPointOptions options;
  options.tolerance = 1e-4;
  if (c.refine) options.evaluator = make_evaluator(p, protocol, backends, r.sweep);
  const auto cps = critical_points(table, p, options);
  auto d = sweep_dataset("fig1c", table);
  d.provenance["critical_points"] = cps.to_json();
  d.provenance["critical_point_refinement"] = c.refine ? "re-evaluated model" : "table interpolant";
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  out << "critical-points: cp_c=" << show(cps.cp_c) << " cp_q_down=" << show(cps.cp_q_down) << " cp_q_up=" << show(cps.cp_q_up)
      << " ep=" << show(cps.ep) << " lep=" << show(cps.lep) << ", wrote " << path.string() << '\n';
  return 0;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "spectrum", err);
  const auto& p = r.preset.params;
  auto tips = c.gamma_tips;
  if (tips.empty()) tips = {0.0, 4.0, 6.5, hep_of(p)};
  std::sort(tips.begin(), tips.end());
  const auto backend = backend_from_string(c.backend == "both" ? "analytic" : c.backend);
  const auto map = spectrum_map(p, tips, delta_grid(c), backend, r.sweep);
  auto d = spectrum_map_dataset("spectrum", map);
  d.provenance["params"] = to_json(p);
  d.provenance["backend"] = std::string(to_string(backend));
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  out << "spectrum:";
  for (std::size_t i = 0; i < tips.size(); ++i) out << " gamma_tip=" << format_double(tips[i]) << " peaks=" << map.peaks[i].size();
  out << ", wrote " << path.string() << '\n';
  return 0;
}

int cmd_spectrum_map(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "spectrum-map", err);
  const auto& p = r.preset.params;
  const auto backend = backend_from_string(c.backend == "both" ? "analytic" : c.backend);
  const auto gammas = gamma_grid(c, r.preset);
  const auto map = spectrum_map(p, gammas, delta_grid(c), backend, r.sweep);
  auto d = spectrum_map_dataset("fig2c_map", map);
  d.provenance["params"] = to_json(p);
  d.provenance["backend"] = std::string(to_string(backend));
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  // Loss at which the detected peaks first merge into one.
  std::string merge_at = "none";
  for (std::size_t i = 0; i < gammas.size(); ++i)
    if (map.peaks[i].size() == 1) {
      merge_at = format_double(gammas[i]);
      break;
    }
  out << "spectrum-map: " << gammas.size() << " x " << c.delta_count << " points, single peak from gamma_tip=" << merge_at
      << ", wrote " << path.string() << '\n';
  return 0;
}

int cmd_eigen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "eigen", err);
  const auto& p = r.preset.params;
  const auto grid = gamma_grid(c, r.preset);
  auto d3 = eigen_dataset(p, grid);
  auto d4 = localization_dataset(p, grid);
  merge(d3, r.provenance);
  merge(d4, r.provenance);
  const auto p3 = write_dataset(d3, r.out_dir);
  const auto p4 = write_dataset(d4, r.out_dir);
  const auto hep = hep_location(p.J, p.gamma1_prime(), p.gamma_2);
  out << "eigen: hep=" << format_double(hep.gamma_tip) << (hep.physical ? "" : " (unphysical)") << ", wrote " << p3.string()
      << " and " << p4.string() << '\n';
  return 0;
}

int cmd_lep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "lep", err);
  const auto& p = r.preset.params;
  auto [lo, hi] = lep_search_window(p);
  lo = c.lep_lo.value_or(lo);
  hi = c.lep_hi.value_or(hi);
  const auto lep = lep_locate(p, lo, hi);
  Dataset d;
  d.name = "lep_track";
  d.columns = {"gamma_tip", "lambda_a_re", "lambda_a_im", "lambda_b_re", "lambda_b_im", "gap", "overlap"};
  for (const auto& t : lep.track)
    d.add_row({format_double(t.gamma_tip), format_double(t.eigenvalues[0].real()), format_double(t.eigenvalues[0].imag()),
               format_double(t.eigenvalues[1].real()), format_double(t.eigenvalues[1].imag()), format_double(t.gap),
               format_double(t.overlap)});
  d.provenance = {{"params", to_json(p)},
                  {"window", {lo, hi}},
                  {"lep", {{"gamma_tip", lep.gamma_tip}, {"gap", lep.gap}, {"overlap", lep.overlap}, {"confirmed", lep.confirmed}}},
                  {"hep", hep_of(p)}};
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  out << "lep: gamma_tip=" << format_double(lep.gamma_tip) << " gap=" << format_double(lep.gap)
      << " overlap=" << format_double(lep.overlap) << (lep.confirmed ? " confirmed" : " NOT confirmed")
      << " hep=" << format_double(hep_of(p)) << ", wrote " << path.string() << '\n';
  return lep.confirmed ? 0 : 1;
}

int cmd_ep_agreement(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "ep-agreement", err);
  const auto& p = r.preset.params;
  const auto rows = ep_agreement(p, c.J_values, LepOptions{}, c.threads);
  auto d = ep_agreement_dataset(rows);
  d.provenance["params"] = to_json(p);
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  double worst = 0.0;
  std::size_t missing = 0;
  for (const auto& row : rows) {
    if (row.relative) {
      worst = std::max(worst, *row.relative);
    } else {
      ++missing;
    }
  }
  out << "ep-agreement: " << rows.size() << " couplings, max relative |hep-lep|/hep=" << format_double(worst) << ", "
      << missing << " without LEP, wrote " << path.string() << '\n';
  return missing ? 1 : 0;
}

int cmd_distribution(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "distribution", err);
  const auto& p = r.preset.params;
  auto tips = c.gamma_tips;
  if (tips.empty()) tips = {6.0, hep_of(p)};
  const auto protocol = protocol_from_string(c.protocol, c.fixed_delta);
  auto d = distribution_dataset(p, tips, protocol, r.sweep);
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  out << "distribution: " << tips.size() << " loss values, " << d.rows.size() << " rows, wrote " << path.string() << '\n';
  return 0;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto r = resolve(c, "validate", err);
  ValidationOptions options;
  options.threads = c.threads;
  options.include_truncation_check = !c.skip_truncation;
  const auto report = run_validation(r.preset.params, options);
  Dataset d;
  d.name = "validate";
  d.columns = {"check", "passed", "value", "threshold"};
  for (const auto& check : report.checks) {
    d.add_row({check.name, check.passed ? "1" : "0", format_double(check.value), format_double(check.threshold)});
    out << (check.passed ? "PASS " : "FAIL ") << check.name << " value=" << format_double(check.value)
        << " threshold=" << format_double(check.threshold) << " (" << check.detail << ")\n";
  }
  d.provenance = report.to_json();
  d.provenance["params"] = to_json(r.preset.params);
  merge(d, r.provenance);
  const auto path = write_dataset(d, r.out_dir);
  std::size_t passed = 0;
  for (const auto& check : report.checks) passed += check.passed ? 1 : 0;
  out << "validate: " << passed << "/" << report.checks.size() << " checks passed, max analytic-vs-lindblad deviation N1 "
      << round_to(100.0 * report.max_n1_deviation, 3) << "%, g2 " << round_to(100.0 * report.max_g2_deviation, 3)
      << "%, wrote " << path.string() << '\n';
  return report.passed() ? 0 : 1;
}

int cmd_presets(const std::string& write_dir, std::ostream& out) {
  if (write_dir.empty()) {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& name : preset_names()) all.push_back(to_json(builtin_preset(name)));
    out << all.dump(2) << '\n';
    return 0;
  }
  std::filesystem::create_directories(write_dir);
  for (const auto& name : preset_names()) {
    const auto path = std::filesystem::path(write_dir) / (name + ".json");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + path.string());
    f << to_json(builtin_preset(name)).dump(2) << '\n';
    out << "presets: wrote " << path.string() << '\n';
  }
  return 0;
}

void add_common(CLI::App* sub, RunConfig& c) {
  auto* preset = sub->add_option("--preset", c.preset, "Built-in preset: paper_fig1, paper_fig2, paper_fig3")
                     ->check(CLI::IsMember(preset_names()));
  sub->add_option("--config", c.config_file, "JSON preset file (same format as presets/*.json)")
      ->check(CLI::ExistingFile)
      ->excludes(preset);
  sub->add_option("--set", c.overrides, "Parameter override key=value (repeatable), applied after the preset");
  sub->add_option("--out", c.out_dir, std::string("Output directory (default: $") + kOutputDirEnv + " or ./results)");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  sub->add_option("--cutoff", c.cutoff, "Per-mode photon cutoff for the master equation")->expected(2);
  sub->add_option("--units", c.units, "Parameter input units")->check(CLI::IsMember({"normalized", "si"}));
  sub->add_option("--wavelength", c.wavelength, "SI: wavelength [m]");
  sub->add_option("--quality", c.quality, "SI: loaded quality factor");
  sub->add_option("--v-eff", c.v_eff, "SI: mode volume [m^3]");
  sub->add_option("--chi3", c.chi3, "SI: chi3 / eps_r^2 [m^2/V^2]");
  sub->add_option("--p-in", c.p_in, "SI: input power [W]");
  sub->add_option("--ex-fraction", c.ex_fraction, "SI: gamma_ex / gamma1'");
  sub->add_option("--j-ratio", c.j_ratio, "SI: J / gamma1'");
  sub->add_option("--gamma2-ratio", c.gamma2_ratio, "SI: gamma_2 / gamma1'");
  sub->add_option("--convention", c.convention, "SI: linewidth convention for Q")->check(CLI::IsMember({"half", "full"}));
}

void add_gamma_grid(CLI::App* sub, RunConfig& c) {
  sub->add_option("--gamma-tip-start", c.gamma_start, "First gamma_tip of the sweep");
  sub->add_option("--gamma-tip-stop", c.gamma_stop, "Last gamma_tip of the sweep");
  sub->add_option("--gamma-tip-count", c.gamma_count, "Number of gamma_tip points")->check(CLI::PositiveNumber);
}

void add_delta_grid(CLI::App* sub, RunConfig& c) {
  sub->add_option("--delta-start", c.delta_start, "First detuning");
  sub->add_option("--delta-stop", c.delta_stop, "Last detuning");
  sub->add_option("--delta-count", c.delta_count, "Number of detuning points")->check(CLI::PositiveNumber);
}

void add_protocol(CLI::App* sub, RunConfig& c) {
  sub->add_option("--protocol", c.protocol, "Detuning protocol")->check(CLI::IsMember({"track_upper_branch", "fixed"}));
  sub->add_option("--fixed-delta", c.fixed_delta, "Detuning for --protocol fixed");
}

void add_backend(CLI::App* sub, RunConfig& c, const std::string& default_value) {
  c.backend = default_value;
  sub->add_option("--backend", c.backend, "analytic, lindblad or both")
      ->check(CLI::IsMember({"analytic", "lindblad", "both"}))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loss-induced photon blockade: coupled Kerr and lossy linear resonators", "lossblockade"};
  app.require_subcommand(1);
  RunConfig c;
  std::string presets_dir;

  auto* sweep = app.add_subcommand("sweep-loss", "N1, N2, g2, g3 and populations versus gamma_tip (fig2ab, fig3a)");
  add_common(sweep, c);
  add_gamma_grid(sweep, c);
  add_protocol(sweep, c);
  add_backend(sweep, c, "both");
  sweep->add_flag("--skip-fig3a", c.skip_fig3a, "Do not run the two-protocol g2/g3 sweep");

  auto* cps = app.add_subcommand("critical-points", "Locate CP_c, CP_q, EP and LEP along a loss sweep (fig1c)");
  add_common(cps, c);
  add_gamma_grid(cps, c);
  add_protocol(cps, c);
  add_backend(cps, c, "both");
  cps->add_flag("!--no-refine", c.refine, "Refine on the table interpolant instead of re-evaluating the model");

  auto* spectrum = app.add_subcommand("spectrum", "Excitation spectrum S1(Delta) at selected gamma_tip values");
  add_common(spectrum, c);
  add_delta_grid(spectrum, c);
  spectrum->add_option("--gamma-tips", c.gamma_tips, "gamma_tip values (default 0, 4, 6.5, HEP)");
  spectrum->add_option("--backend", c.backend, "analytic or lindblad")->check(CLI::IsMember({"analytic", "lindblad"}));

  auto* smap = app.add_subcommand("spectrum-map", "S1 over a gamma_tip x Delta grid with branch overlays (fig2c_map)");
  add_common(smap, c);
  add_gamma_grid(smap, c);
  add_delta_grid(smap, c);
  smap->add_option("--backend", c.backend, "analytic or lindblad")->check(CLI::IsMember({"analytic", "lindblad"}));

  auto* eigen = app.add_subcommand("eigen", "One- and two-photon eigenvalues and localization versus gamma_tip (figS3, figS4)");
  add_common(eigen, c);
  add_gamma_grid(eigen, c);

  auto* lep = app.add_subcommand("lep", "Locate the Liouvillian exceptional point");
  add_common(lep, c);
  lep->add_option("--lo", c.lep_lo, "Lower end of the gamma_tip search window");
  lep->add_option("--hi", c.lep_hi, "Upper end of the gamma_tip search window");

  auto* epa = app.add_subcommand("ep-agreement", "HEP versus LEP over couplings J (fig1b_ep)");
  add_common(epa, c);
  epa->add_option("--J", c.J_values, "Coupling values, ascending (default 1 1.5 2 3)");

  auto* dist = app.add_subcommand("distribution", "Photon distribution against Poisson (fig3b)");
  add_common(dist, c);
  add_protocol(dist, c);
  dist->add_option("--gamma-tips", c.gamma_tips, "gamma_tip values (default 6 and HEP)");

  auto* validate = app.add_subcommand("validate", "Analytic versus master-equation cross-check suite");
  add_common(validate, c);
  validate->add_flag("--skip-truncation", c.skip_truncation, "Skip the slow cutoff 5 versus 7 comparison");

  auto* presets = app.add_subcommand("presets", "Print the built-in presets or write them as JSON files");
  presets->add_option("--write", presets_dir, "Directory to write <name>.json files into");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (sweep->parsed()) return cmd_sweep_loss(c, out, err);
    if (cps->parsed()) return cmd_critical_points(c, out, err);
    if (spectrum->parsed()) {
      if (c.backend == "both") c.backend = "analytic";
      return cmd_spectrum(c, out, err);
    }
    if (smap->parsed()) {
      if (c.backend == "both") c.backend = "analytic";
      return cmd_spectrum_map(c, out, err);
    }
    if (eigen->parsed()) return cmd_eigen(c, out, err);
    if (lep->parsed()) return cmd_lep(c, out, err);
    if (epa->parsed()) return cmd_ep_agreement(c, out, err);
    if (dist->parsed()) return cmd_distribution(c, out, err);
    if (validate->parsed()) return cmd_validate(c, out, err);
    if (presets->parsed()) return cmd_presets(presets_dir, out);
  } catch (const InvalidArgument& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceLimit& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace lossblockade::cli
