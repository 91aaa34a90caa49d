#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lossblockade/model.hpp"

namespace lossblockade {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured worst-case deviation
  double threshold = 0.0;  ///< pass when value < threshold
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  double max_n1_deviation = 0.0;  ///< analytic vs Lindblad, relative
  double max_g2_deviation = 0.0;
  bool passed() const;
  nlohmann::json to_json() const;
};

struct ValidationOptions {
  double weak_drive = 1e-2;  ///< Omega for the analytic-vs-Lindblad comparisons, units of gamma1'
  std::size_t sweep_points = 25;
  double gamma_tip_max = 12.0;
  bool include_truncation_check = true;  ///< the 7x7 cutoff solve is the slowest step
  unsigned threads = 0;
};

/// Cross-checks every analytic, Liouvillian and observable invariant at the given
/// parameter set; one named check per invariant.
ValidationReport run_validation(const SystemParams& p, const ValidationOptions& options = {});

}  // namespace lossblockade
