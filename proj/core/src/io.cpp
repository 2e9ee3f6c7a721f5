#include "chbox/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chbox/errors.hpp"
#include "json.hpp"

namespace chbox {

using nlohmann::json;

OutputRow make_row(const PtResult& pt) {
  OutputRow row;
  row.method = "pt";
  row.R = pt.R;
  row.E = pt.E;
  row.T = pt.T;
  row.T_e = pt.T_e;
  row.T_n = pt.T_n;
  row.V = pt.V;
  if (pt.outside_validity) row.flags.push_back("outside-pt-validity");
  return row;
}

OutputRow make_row(const MncResult& mnc) {
  OutputRow row;
  row.method = "mnc";
  row.R = mnc.R;
  row.E = mnc.obs.E;
  row.T = mnc.obs.T;
  row.T_e = mnc.obs.T_e;
  row.T_n = mnc.obs.T_n;
  row.V = mnc.obs.V;
  row.r_e = mnc.obs.r_e_mean;
  row.r_n = mnc.obs.r_n_mean;
  row.r = mnc.obs.r_mean;
  row.beta = mnc.exponents.beta;
  row.gamma = mnc.exponents.gamma;
  if (mnc.exponents.alpha != 0.0) row.flags.push_back("alpha=" + format_number(mnc.exponents.alpha));
  if (mnc.basin_differs) {
    row.flags.push_back("first-seed-basin-E=" + format_number(mnc.candidates.front().E));
  }
  return row;
}

OutputRow make_row(const CncResult& cnc) {
  OutputRow row;
  row.method = "cnc";
  row.R = cnc.R;
  row.E = cnc.E;
  row.T = cnc.T;
  row.T_e = cnc.T;
  row.V = cnc.V;
  row.r = cnc.r_mean;
  row.delta = cnc.delta;
  return row;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_header() { return "method,R,E,T,T_e,T_n,V,r_e,r_n,r,beta,gamma,delta,flags"; }

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

std::string json_opt(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? format_number(*v) : std::string("null");
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_csv(const OutputRow& row) {
  std::string out = row.method + "," + format_number(row.R);
  for (const auto* f : {&row.E, &row.T, &row.T_e, &row.T_n, &row.V, &row.r_e, &row.r_n, &row.r,
                        &row.beta, &row.gamma, &row.delta}) {
    out += "," + opt(*f);
  }
  out += "," + join(row.flags, ';');
  return out;
}

std::string to_json(const OutputRow& row) {
  // Hand-written so every number carries 17 significant digits.
  std::ostringstream os;
  os << "{\"method\": " << json(row.method).dump() << ", \"R\": " << format_number(row.R);
  const std::pair<const char*, const std::optional<double>*> fields[] = {
      {"E", &row.E},     {"T", &row.T},     {"T_e", &row.T_e},   {"T_n", &row.T_n},
      {"V", &row.V},     {"r_e", &row.r_e}, {"r_n", &row.r_n},   {"r", &row.r},
      {"beta", &row.beta}, {"gamma", &row.gamma}, {"delta", &row.delta}};
  for (const auto& [name, value] : fields) os << ", \"" << name << "\": " << json_opt(*value);
  os << ", \"flags\": " << json(row.flags).dump() << "}";
  return os.str();
}

std::string to_json(const std::vector<OutputRow>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "  " + to_json(rows[i]);
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

HylleraasBasis basis_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    std::vector<HylleraasTerm> terms;
    for (const auto& t : doc.at("terms")) {
      terms.push_back({t.value("n", 0), t.value("m", 0), t.value("l", 0), t.value("alpha", 0.0),
                       t.value("beta", 0.0), t.value("gamma", 0.0)});
    }
    return HylleraasBasis(std::move(terms), doc.at("R").get<double>());
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("malformed basis JSON: ") + ex.what());
  }
}

HylleraasBasis load_basis(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open basis file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return basis_from_json(buf.str());
}

std::string basis_to_json(const HylleraasBasis& basis) {
  std::ostringstream os;
  os << "{\n  \"R\": " << format_number(basis.R()) << ",\n  \"terms\": [\n";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& t = basis[i];
    os << "    {\"n\": " << t.n << ", \"m\": " << t.m << ", \"l\": " << t.l
       << ", \"alpha\": " << format_number(t.alpha) << ", \"beta\": " << format_number(t.beta)
       << ", \"gamma\": " << format_number(t.gamma) << "}" << (i + 1 < basis.size() ? "," : "")
       << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace chbox
