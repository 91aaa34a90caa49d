#include "lossblockade/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lossblockade/error.hpp"

namespace lossblockade {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void Dataset::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw InvalidArgument("dataset " + name + ": row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(columns.size()));
  rows.push_back(std::move(cells));
}

namespace {

void write_metadata(std::ostringstream& out, const std::string& prefix, const nlohmann::json& j) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) write_metadata(out, prefix.empty() ? key : prefix + "." + key, value);
    return;
  }
  out << "# " << prefix << ": ";
  if (j.is_number_float()) {
    out << format_double(j.get<double>());
  } else if (j.is_string()) {
    out << j.get<std::string>();
  } else {
    out << j.dump();
  }
  out << '\n';
}

}  // namespace

std::string Dataset::to_csv() const {
  std::ostringstream out;
  write_metadata(out, "", provenance);
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  return out.str();
}

std::filesystem::path write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + dir.string() + ": " + ec.message());

  const auto csv_path = dir / (dataset.name + ".csv");
  const auto json_path = dir / (dataset.name + ".json");
  {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw InvalidArgument("cannot write " + csv_path.string());
    csv << dataset.to_csv();
  }
  {
    std::ofstream js(json_path, std::ios::binary);
    if (!js) throw InvalidArgument("cannot write " + json_path.string());
    nlohmann::json sidecar = dataset.provenance;
    sidecar["dataset"] = dataset.name;
    sidecar["columns"] = dataset.columns;
    sidecar["row_count"] = dataset.rows.size();
    js << sidecar.dump(2) << '\n';
  }
  return csv_path;
}

}  // namespace lossblockade
