#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace chbox {

/// One printed table cell. `tolerance` unset marks an informative cell.
struct GoldenCell {
  std::string method;  ///< "pt", "mnc" or "cnc"
  std::string column;
  std::string printed;  ///< text as printed, e.g. "0.813i"
  double value = 0.0;
  std::optional<double> tolerance;
  bool typo = false;
  std::string note;
};

struct GoldenRow {
  double R = 0.0;
  std::vector<GoldenCell> cells;
};

struct GoldenTable {
  std::string name;
  int version = 1;
  std::string description;
  std::vector<GoldenRow> rows;

  const GoldenRow* row(double R) const;
  std::vector<double> radii() const;
};

GoldenTable parse_golden(const std::string& json_text);
GoldenTable load_golden(const std::filesystem::path& path);

/// $CHBOX_DATA_DIR if set, otherwise the data directory configured at build time.
std::filesystem::path default_data_dir();

}  // namespace chbox
