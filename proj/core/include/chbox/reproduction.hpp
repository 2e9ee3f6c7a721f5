#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chbox/cnc.hpp"
#include "chbox/golden.hpp"
#include "chbox/optimize.hpp"
#include "chbox/pt.hpp"
#include "chbox/seed_map.hpp"

namespace chbox {

enum class Method { Pt, Mnc, Cnc };

Method parse_method(std::string_view name);
std::string_view to_string(Method m);

struct SolveConfig {
  double nuclear_mass = kProtonMass;
  MncOptions mnc;
  CncOptions cnc;
  int cnc_N = 4;
  int pt_nodes = 64;
  SeedMap seeds = SeedMap::builtin();
  /// Skip nonlinear optimization and use these exponents.
  std::optional<Exponents> mnc_fixed;
  std::optional<MncSeed> mnc_seed;     ///< replaces the seed-map lookup
  std::optional<double> cnc_delta;     ///< replaces the seed-map delta
  unsigned jobs = 0;                   ///< 0: hardware concurrency
};

struct RadiusSolution {
  double R = 0.0;
  std::optional<PtResult> pt;
  std::optional<MncResult> mnc;
  std::optional<CncResult> cnc;
};

PtResult solve_pt(double R, const SolveConfig& cfg);
MncResult solve_mnc(double R, const SolveConfig& cfg);
CncResult solve_cnc(double R, const SolveConfig& cfg);

RadiusSolution solve_radius(double R, const std::vector<Method>& methods, const SolveConfig& cfg);

/// Radii are solved concurrently; results come back in input order.
std::vector<RadiusSolution> solve_radii(const std::vector<double>& radii,
                                        const std::vector<Method>& methods,
                                        const SolveConfig& cfg);

enum class CellStatus { Pass, Fail, TypoExcluded, Informative, NotComputed };
std::string_view to_string(CellStatus s);

struct CellComparison {
  double R = 0.0;
  std::string method;
  std::string column;
  std::optional<double> computed;
  double printed = 0.0;
  std::string printed_text;
  double abs_diff = 0.0;
  std::optional<double> tolerance;
  CellStatus status = CellStatus::NotComputed;
  std::string note;
};

struct ReproductionReport {
  std::string table;
  std::vector<CellComparison> cells;

  int count(CellStatus s) const;
  bool ok() const { return count(CellStatus::Fail) == 0 && count(CellStatus::NotComputed) == 0; }
};

/// Computed counterpart of a golden cell, if the solution carries it.
/// Linear coefficients are scaled so the largest-magnitude one equals 1.
std::optional<double> computed_value(const RadiusSolution& sol, std::string_view method,
                                     std::string_view column);

/// Compares every cell of the rows whose radius appears in `solutions`.
ReproductionReport compare_table(const GoldenTable& table,
                                 const std::vector<RadiusSolution>& solutions);

/// Methods needed to reproduce a golden row.
std::vector<Method> methods_for(const GoldenRow& row);

}  // namespace chbox
