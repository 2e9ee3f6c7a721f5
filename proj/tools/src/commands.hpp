#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chbox/golden.hpp"
#include "chbox/io.hpp"
#include "chbox/reproduction.hpp"

namespace chbox::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kNumericalFailure = 2,
  kToleranceFailure = 3,
};

enum class Format { Json, Csv, Pretty };
Format parse_format(const std::string& name);

struct RunConfig {
  std::vector<Method> methods{Method::Pt, Method::Mnc, Method::Cnc};
  std::vector<double> radii;
  std::optional<double> r_min, r_max, step;
  std::optional<std::filesystem::path> basis_json;
  SolveConfig solve;
  std::optional<std::filesystem::path> golden_dir;
  Format format = Format::Csv;
  std::optional<std::filesystem::path> output;

  /// Explicit radii, or the r_min..r_max grid. Exactly one must be given.
  std::vector<double> resolved_radii() const;
};

/// Parses "beta=1,gamma=2,alpha=0"; missing keys keep the defaults in `base`.
Exponents parse_exponents(const std::string& text, Exponents base = {});

std::vector<OutputRow> rows_for(const std::vector<RadiusSolution>& solutions);
std::string render_rows(const std::vector<OutputRow>& rows, Format format);

struct ReproduceOutcome {
  std::vector<RadiusSolution> solutions;
  ReproductionReport report;
};

/// Solves every requested row of a golden table and compares it.
/// Empty `rows` selects the whole table.
ReproduceOutcome reproduce(const GoldenTable& table, const std::vector<double>& rows,
                           const SolveConfig& cfg);

std::string render_report(const ReproductionReport& report, Format format);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chbox::cli
