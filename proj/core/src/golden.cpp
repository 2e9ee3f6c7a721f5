#include "chbox/golden.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chbox/errors.hpp"
#include "json.hpp"

#ifndef CHBOX_DEFAULT_DATA_DIR
#define CHBOX_DEFAULT_DATA_DIR "data"
#endif

namespace chbox {

using nlohmann::json;

const GoldenRow* GoldenTable::row(double R) const {
  for (const auto& r : rows) {
    if (std::abs(r.R - R) < 1e-9) return &r;
  }
  return nullptr;
}

std::vector<double> GoldenTable::radii() const {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.R);
  return out;
}

GoldenTable parse_golden(const std::string& json_text) {
  try {
    const json doc = json::parse(json_text);
    GoldenTable t;
    t.name = doc.at("name").get<std::string>();
    t.version = doc.at("version").get<int>();
    t.description = doc.value("description", std::string{});
    for (const auto& r : doc.at("rows")) {
      GoldenRow row;
      row.R = r.at("R").get<double>();
      for (const auto& c : r.at("cells")) {
        GoldenCell cell;
        cell.method = c.at("method").get<std::string>();
        cell.column = c.at("column").get<std::string>();
        cell.printed = c.value("printed", std::string{});
        cell.value = c.at("value").get<double>();
        if (c.contains("tolerance") && !c.at("tolerance").is_null()) {
          cell.tolerance = c.at("tolerance").get<double>();
        }
        cell.typo = c.value("typo", false);
        cell.note = c.value("note", std::string{});
        row.cells.push_back(std::move(cell));
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed golden table: ") + ex.what());
  }
}

GoldenTable load_golden(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("golden table '" + path.string() + "' not found");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_golden(buf.str());
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("CHBOX_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return CHBOX_DEFAULT_DATA_DIR;
}

}  // namespace chbox
