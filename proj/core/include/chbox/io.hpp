#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chbox/basis.hpp"
#include "chbox/cnc.hpp"
#include "chbox/optimize.hpp"
#include "chbox/pt.hpp"

namespace chbox {

/// One output record. Fields a method does not produce stay empty.
struct OutputRow {
  std::string method;
  double R = 0.0;
  std::optional<double> E, T, T_e, T_n, V;
  std::optional<double> r_e, r_n, r;
  std::optional<double> beta, gamma, delta;
  std::vector<std::string> flags;
};

OutputRow make_row(const PtResult& pt);
OutputRow make_row(const MncResult& mnc);
OutputRow make_row(const CncResult& cnc);

/// %.17g, the representation used in every machine-readable output.
std::string format_number(double x);

/// method,R,E,T,T_e,T_n,V,r_e,r_n,r,beta,gamma,delta,flags
std::string csv_header();
std::string to_csv(const OutputRow& row);
std::string to_json(const OutputRow& row);
std::string to_json(const std::vector<OutputRow>& rows);

/// {"R": ..., "terms": [{"n","m","l","alpha","beta","gamma"}, ...]}
HylleraasBasis basis_from_json(const std::string& text);
HylleraasBasis load_basis(const std::filesystem::path& path);
std::string basis_to_json(const HylleraasBasis& basis);

}  // namespace chbox
