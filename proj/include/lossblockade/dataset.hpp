#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lossblockade {

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// A tidy table written as CSV (with "# key: value" metadata rows before the
/// header) plus a JSON sidecar carrying the full provenance.
struct Dataset {
  std::string name;  ///< file stem, e.g. "fig2ab"
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  nlohmann::json provenance = nlohmann::json::object();

  void add_row(std::vector<std::string> cells);
  std::string to_csv() const;
};

/// Writes <dir>/<name>.csv and <dir>/<name>.json, creating dir if needed.
/// Returns the CSV path. Throws InvalidArgument on I/O failure.
std::filesystem::path write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

}  // namespace lossblockade
