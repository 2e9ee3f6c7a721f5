#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chbox/optimize.hpp"

namespace chbox {

/// Starting exponents for one tabulated radius.
struct SeedEntry {
  double R = 0.0;
  std::vector<MncSeed> mnc;  ///< first entry is the tabulated parameter set
  double cnc_delta = 1.0;
};

/// Per-radius optimizer seeds. Lookups for radii that are not tabulated use
/// the nearest tabulated radius.
class SeedMap {
public:
  SeedMap() = default;
  SeedMap(int version, std::vector<SeedEntry> entries);

  /// Compiled-in copy of data/seed_map.json.
  static const SeedMap& builtin();
  static SeedMap load(const std::filesystem::path& path);
  static SeedMap parse(const std::string& json_text);

  std::string to_json() const;

  const SeedEntry& nearest(double R) const;
  const std::vector<MncSeed>& mnc_seeds(double R) const { return nearest(R).mnc; }
  double cnc_delta(double R) const { return nearest(R).cnc_delta; }

  int version() const noexcept { return version_; }
  const std::vector<SeedEntry>& entries() const noexcept { return entries_; }

private:
  int version_ = 1;
  std::vector<SeedEntry> entries_;  // sorted by R
};

}  // namespace chbox
