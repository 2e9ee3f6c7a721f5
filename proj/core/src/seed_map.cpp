#include "chbox/seed_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chbox/errors.hpp"
#include "json.hpp"

namespace chbox {

using nlohmann::json;

namespace {

constexpr const char* kTable2 = "table2";

std::vector<SeedEntry> builtin_entries() {
  // Tabulated (beta, gamma) for the four-term basis and delta for the radial basis.
  struct Row {
    double R, beta, gamma, delta;
  };
  static constexpr Row rows[] = {
      {0.1, 71.386, 12.285, 4.915}, {0.2, 40.494, 6.305, 1.068}, {0.3, 29.340, 4.287, 1.321},
      {0.4, 23.400, 3.267, 1.267},  {0.5, 19.647, 2.651, 1.217}, {0.6, 17.031, 2.237, 1.156},
      {0.7, 15.088, 1.939, 1.095},  {0.8, 13.578, 1.713, 1.041}, {0.9, 12.365, 1.536, 1.001},
      {1.0, 11.365, 1.393, 1.011},  {1.1, 17.414, 0.480, 1.212}, {1.2, 16.215, 0.481, 1.216},
      {1.3, 15.168, 0.482, 1.224},  {1.4, 14.243, 0.485, 1.264}, {1.5, 13.418, 0.488, 1.279},
      {2.0, 10.303, 0.510, 1.348},  {3.0, 4.498, 0.565, 0.922},  {4.0, 2.974, 0.642, 0.400},
      {5.0, 2.159, 0.711, 0.424},   {6.0, 1.643, 0.768, 0.465},  {7.0, 1.296, 0.813, 0.510},
      {8.0, 1.043, 0.851, 0.555},   {9.0, 0.841, 0.886, 0.601},  {10.0, 0.747, 0.910, 0.935},
  };
  std::vector<SeedEntry> out;
  for (const Row& r : rows) {
    out.push_back({r.R, {{r.beta, r.gamma, 0.0, kTable2}}, r.delta});
  }
  // At R = 1.1 the tabulated energies belong to the branch continued from
  // R = 1.0, not to the tabulated (beta, gamma) basin.
  for (auto& e : out) {
    if (e.R == 1.1) e.mnc.push_back({11.365, 1.393, 0.0, "table2:R=1.0 (branch continuation)"});
  }
  return out;
}

void sort_entries(std::vector<SeedEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SeedEntry& a, const SeedEntry& b) { return a.R < b.R; });
}

}  // namespace

SeedMap::SeedMap(int version, std::vector<SeedEntry> entries)
    : version_(version), entries_(std::move(entries)) {
  if (entries_.empty()) throw ConfigError("seed map has no entries");
  for (const auto& e : entries_) {
    if (!(e.R > 0.0)) throw ConfigError("seed map radius must be positive");
    if (e.mnc.empty()) throw ConfigError("seed map entry without MNC seeds");
  }
  sort_entries(entries_);
}

const SeedMap& SeedMap::builtin() {
  static const SeedMap map(1, builtin_entries());
  return map;
}

SeedMap SeedMap::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
    std::vector<SeedEntry> entries;
    for (const auto& row : doc.at("entries")) {
      SeedEntry e;
      e.R = row.at("R").get<double>();
      for (const auto& s : row.at("mnc")) {
        e.mnc.push_back({s.at("beta").get<double>(), s.at("gamma").get<double>(),
                         s.value("alpha", 0.0), s.value("source", std::string{})});
      }
      e.cnc_delta = row.at("cnc_delta").get<double>();
      entries.push_back(std::move(e));
    }
    return SeedMap(doc.at("version").get<int>(), std::move(entries));
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed seed map: ") + ex.what());
  }
}

SeedMap SeedMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open seed map '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string SeedMap::to_json() const {
  json doc;
  doc["version"] = version_;
  doc["entries"] = json::array();
  for (const auto& e : entries_) {
    json row;
    row["R"] = e.R;
    row["mnc"] = json::array();
    for (const auto& s : e.mnc) {
      row["mnc"].push_back({{"beta", s.beta}, {"gamma", s.gamma}, {"alpha", s.alpha},
                            {"source", s.source}});
    }
    row["cnc_delta"] = e.cnc_delta;
    doc["entries"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

const SeedEntry& SeedMap::nearest(double R) const {
  if (entries_.empty()) throw ConfigError("seed map is empty");
  const SeedEntry* best = &entries_.front();
  for (const auto& e : entries_) {
    if (std::abs(e.R - R) < std::abs(best->R - R)) best = &e;
  }
  return *best;
}

}  // namespace chbox
