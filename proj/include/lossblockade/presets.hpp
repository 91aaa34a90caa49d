#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lossblockade/model.hpp"

namespace lossblockade {

/// Named parameter set in normalized units (gamma1' = 1) with a suggested loss grid.
struct Preset {
  std::string name;
  std::string description;
  SystemParams params;
  double gamma_tip_start = 0.0;
  double gamma_tip_stop = 12.0;
  std::size_t gamma_tip_count = 121;

  friend bool operator==(const Preset&, const Preset&) = default;
};

std::vector<std::string> preset_names();

/// Throws InvalidArgument for an unknown name.
Preset builtin_preset(std::string_view name);

nlohmann::json to_json(const Preset& preset);
/// Unknown keys are rejected.
Preset preset_from_json(const nlohmann::json& j);

}  // namespace lossblockade
