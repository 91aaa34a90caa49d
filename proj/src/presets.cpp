#include "lossblockade/presets.hpp"

#include "lossblockade/error.hpp"

namespace lossblockade {

namespace {

// Kerr resonator at 1550 nm with Q = 2e9, V_eff = 100 um^3, chi3/eps_r^2 = 2e-17 m^2/V^2,
// P_in = 4 fW, critically split loss (gamma_ex = gamma_1), J = 2 gamma1', gamma_2 = 0.1 gamma1'.
// The linewidth convention is the half width (gamma1' = 2 omega_c / Q).
SystemParams paper_device_params() {
  DeviceSpec device;
  device.convention = LinewidthConvention::HalfWidth;
  return normalized_from_device(device);
}

}  // namespace

std::vector<std::string> preset_names() { return {"paper_fig1", "paper_fig2", "paper_fig3"}; }

Preset builtin_preset(std::string_view name) {
  Preset preset;
  preset.name = std::string(name);
  preset.params = paper_device_params();
  if (name == "paper_fig1") {
    preset.description = "Loss sweep for the N1 and g2 critical points and the exceptional point at J = 2";
  } else if (name == "paper_fig2") {
    preset.description = "Loss sweep of N1 and g2 with both backends, excitation spectra and eigenfrequencies";
  } else if (name == "paper_fig3") {
    preset.description = "Two-photon blockade window: g2, g3 and photon distributions versus loss";
  } else {
    throw InvalidArgument("unknown preset '" + std::string(name) + "' (expected paper_fig1, paper_fig2 or paper_fig3)");
  }
  return preset;
}

nlohmann::json to_json(const Preset& preset) {
  return {{"name", preset.name},
          {"description", preset.description},
          {"params", to_json(preset.params)},
          {"gamma_tip_grid", {{"start", preset.gamma_tip_start}, {"stop", preset.gamma_tip_stop}, {"count", preset.gamma_tip_count}}}};
}

Preset preset_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("preset must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "name" && key != "description" && key != "params" && key != "gamma_tip_grid")
      throw InvalidArgument("unknown preset key '" + key + "'");
  }
  Preset preset;
  try {
    preset.name = j.value("name", std::string("custom"));
    preset.description = j.value("description", std::string());
    if (j.contains("params")) preset.params = params_from_json(j.at("params"));
    if (j.contains("gamma_tip_grid")) {
      const auto& g = j.at("gamma_tip_grid");
      for (const auto& [key, value] : g.items()) {
        (void)value;
        if (key != "start" && key != "stop" && key != "count") throw InvalidArgument("unknown gamma_tip_grid key '" + key + "'");
      }
      preset.gamma_tip_start = g.value("start", preset.gamma_tip_start);
      preset.gamma_tip_stop = g.value("stop", preset.gamma_tip_stop);
      preset.gamma_tip_count = g.value("count", preset.gamma_tip_count);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed preset: ") + e.what());
  }
  if (preset.gamma_tip_count == 0 || !(preset.gamma_tip_stop >= preset.gamma_tip_start))
    throw InvalidArgument("preset gamma_tip_grid must have count >= 1 and stop >= start");
  return preset;
}

}  // namespace lossblockade
