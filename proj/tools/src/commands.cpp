#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "chbox/errors.hpp"

namespace chbox::cli {

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<int>(ch));
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string opt_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

std::string opt_json(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("null");
}

std::string pretty_cell(const std::optional<double>& v) {
  return v ? fmt::format("{:>12.5f}", *v) : fmt::format("{:>12}", "");
}

std::string pretty_rows(const std::vector<OutputRow>& rows) {
  std::string out = fmt::format("{:>6}  {:<4}{:>12}{:>12}{:>12}{:>12}{:>12}\n", "R", "", "E",
                                "<T>", "<T_e>", "<T_n>", "<V>");
  double last_R = std::nan("");
  for (const auto& row : rows) {
    const bool first = !(row.R == last_R);
    out += fmt::format("{:>6}  {:<4}", first ? fmt::format("{:g}", row.R) : std::string(), row.method);
    out += pretty_cell(row.E) + pretty_cell(row.T) + pretty_cell(row.T_e) +
           pretty_cell(row.T_n) + pretty_cell(row.V);
    if (!row.flags.empty()) {
      out += "  [";
      for (std::size_t i = 0; i < row.flags.size(); ++i) {
        out += (i ? "; " : "") + row.flags[i];
      }
      out += "]";
    }
    out += '\n';
    last_R = row.R;
  }
  return out;
}

void write_output(const std::string& text, const std::optional<std::filesystem::path>& path,
                  std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + path->string());
  file << text;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> methods;
  for (const auto& n : names) methods.push_back(parse_method(n));
  if (methods.empty()) throw InvalidArgument("at least one method is required");
  return methods;
}

// Options shared by the solving verbs, bound before parsing and folded into
// a RunConfig afterwards.
struct CommonOptions {
  std::vector<std::string> methods;
  std::vector<double> radii;
  std::optional<double> r_min, r_max, step;
  std::string basis = "four-term";
  int max_power = 4;
  std::optional<std::string> basis_json;
  std::optional<std::string> fixed_params;
  std::optional<std::string> seed;
  bool optimize_alpha = false;
  std::optional<double> cnc_delta;
  bool fixed_delta = false;
  bool cnc_reduced_mass = false;
  double nuclear_mass = kProtonMass;
  int quad_outer = 40;
  int quad_inner = 40;
  int cnc_nodes = 200;
  int cnc_N = 4;
  int pt_nodes = 64;
  int max_iterations = 2000;
  double f_tol = 1e-12;
  double x_tol = 1e-8;
  double relative_step = 0.1;
  int restarts = 1;
  std::optional<std::string> seed_map;
  std::optional<std::string> golden_dir;
  std::string format = "csv";
  std::optional<std::string> output;
  unsigned jobs = 0;

  void bind(CLI::App& app, bool with_radii, bool with_sweep, const std::string& default_methods) {
    std::stringstream ss(default_methods);
    for (std::string m; std::getline(ss, m, ',');) methods.push_back(m);
    if (!methods.empty()) {
      app.add_option("--method", methods, "pt, mnc, cnc (comma separated)")
          ->delimiter(',')
          ->capture_default_str();
    }
    if (with_radii) {
      app.add_option("--radius,--radii", radii, "box radius list in bohr")->delimiter(',');
    }
    if (with_sweep) {
      app.add_option("--r-min", r_min, "first radius of the sweep");
      app.add_option("--r-max", r_max, "last radius of the sweep");
      app.add_option("--step", step, "sweep step");
    }
    app.add_option("--basis", basis, "MNC preset: simple, four-term, cnc-style")
        ->capture_default_str();
    app.add_option("--max-power", max_power, "highest power in the cnc-style preset")
        ->capture_default_str();
    app.add_option("--basis-json", basis_json, "explicit MNC basis file (no optimization)");
    app.add_option("--fixed-params", fixed_params, "beta=..,gamma=..[,alpha=..]; skip optimization");
    app.add_option("--seed", seed, "beta=..,gamma=..[,alpha=..]; replaces the seed map");
    app.add_flag("--optimize-alpha", optimize_alpha, "also optimize the electron exponent");
    app.add_option("--cnc-delta", cnc_delta, "CNC exponent seed");
    app.add_flag("--fixed-delta", fixed_delta, "do not refine the CNC exponent");
    app.add_flag("--cnc-reduced-mass", cnc_reduced_mass,
                 "CNC with the electron-nucleus reduced mass");
    app.add_option("--nuclear-mass", nuclear_mass, "nuclear mass in electron masses")
        ->capture_default_str();
    app.add_option("--quad-outer", quad_outer, "Gauss-Legendre order in r_e and r")
        ->capture_default_str();
    app.add_option("--quad-inner", quad_inner, "Gauss-Legendre order per r_n panel")
        ->capture_default_str();
    app.add_option("--cnc-nodes", cnc_nodes, "CNC radial quadrature order")->capture_default_str();
    app.add_option("--cnc-terms", cnc_N, "highest CNC power N")->capture_default_str();
    app.add_option("--pt-nodes", pt_nodes, "PT quadrature order per triangle")
        ->capture_default_str();
    app.add_option("--max-iterations", max_iterations, "optimizer iteration cap")
        ->capture_default_str();
    app.add_option("--f-tol", f_tol, "relative energy tolerance")->capture_default_str();
    app.add_option("--x-tol", x_tol, "relative simplex size tolerance")->capture_default_str();
    app.add_option("--initial-step", relative_step, "relative initial simplex step")
        ->capture_default_str();
    app.add_option("--restarts", restarts, "optimizer restarts")->capture_default_str();
    app.add_option("--seed-map", seed_map, "seed map JSON (default: built in)");
    app.add_option("--golden-dir", golden_dir, "directory with table1.json and table2.json");
    app.add_option("--format", format, "json, csv or pretty")->capture_default_str();
    app.add_option("--output,-o", output, "write to a file instead of standard output");
    app.add_option("--jobs,-j", jobs, "worker threads (0: all cores)")->capture_default_str();
  }

  RunConfig resolve() const {
    RunConfig cfg;
    if (!methods.empty()) cfg.methods = parse_methods(methods);
    cfg.radii = radii;
    cfg.r_min = r_min;
    cfg.r_max = r_max;
    cfg.step = step;
    if (basis_json) cfg.basis_json = *basis_json;
    if (golden_dir) cfg.golden_dir = *golden_dir;
    if (output) cfg.output = *output;
    cfg.format = parse_format(format);

    SolveConfig& s = cfg.solve;
    s.nuclear_mass = nuclear_mass;
    s.mnc.nuclear_mass = nuclear_mass;
    s.mnc.preset = parse_preset_kind(basis);
    if (s.mnc.preset == PresetKind::Custom) {
      throw InvalidArgument("use --basis-json for a custom basis");
    }
    s.mnc.max_power = max_power;
    s.mnc.optimize_alpha = optimize_alpha;
    s.mnc.quad.n_outer = quad_outer;
    s.mnc.quad.n_inner = quad_inner;
    s.mnc.quad.validate();
    for (OptimizerConfig* o : {&s.mnc.optimizer, &s.cnc.optimizer}) {
      o->max_iterations = max_iterations;
      o->f_tolerance = f_tol;
      o->x_tolerance = x_tol;
      o->relative_step = relative_step;
      o->restarts = restarts;
      o->validate();
    }
    s.cnc.nodes = cnc_nodes;
    s.cnc.optimize_delta = !fixed_delta;
    if (cnc_reduced_mass) s.cnc.electron_mass = ModelParams(1.0, nuclear_mass).reduced_mass();
    s.cnc_N = cnc_N;
    s.pt_nodes = pt_nodes;
    if (fixed_params) s.mnc_fixed = parse_exponents(*fixed_params);
    if (seed) {
      const Exponents e = parse_exponents(*seed);
      s.mnc_seed = MncSeed{e.beta, e.gamma, e.alpha, "command line"};
    }
    s.cnc_delta = cnc_delta;
    if (seed_map) s.seeds = SeedMap::load(*seed_map);
    s.jobs = jobs;
    return cfg;
  }
};

std::filesystem::path golden_path(const RunConfig& cfg, const std::string& table) {
  const std::filesystem::path dir = cfg.golden_dir ? *cfg.golden_dir : default_data_dir();
  return dir / (table + ".json");
}

OutputRow custom_basis_row(const HylleraasBasis& basis, const SolveConfig& s) {
  const ModelParams params(basis.R(), s.nuclear_mass);
  const GroundState gs = ground_state(basis, params, s.mnc.quad);
  const ObservableSet o = observables(gs.state, params, s.mnc.quad);
  OutputRow row;
  row.method = "mnc";
  row.R = basis.R();
  row.E = o.E;
  row.T = o.T;
  row.T_e = o.T_e;
  row.T_n = o.T_n;
  row.V = o.V;
  row.r_e = o.r_e_mean;
  row.r_n = o.r_n_mean;
  row.r = o.r_mean;
  row.flags.push_back(fmt::format("custom-basis={}", basis.size()));
  return row;
}

std::vector<OutputRow> solve_rows(const RunConfig& cfg) {
  const std::vector<double> radii = cfg.resolved_radii();
  std::vector<Method> methods = cfg.methods;
  std::optional<HylleraasBasis> custom;
  if (cfg.basis_json) {
    custom = load_basis(*cfg.basis_json);
    std::erase(methods, Method::Mnc);
  }
  std::vector<OutputRow> rows;
  const bool with_custom = custom && std::ranges::find(cfg.methods, Method::Mnc) != cfg.methods.end();
  if (!methods.empty()) rows = rows_for(solve_radii(radii, methods, cfg.solve));
  if (with_custom) {
    if (radii.size() != 1 || radii.front() != custom->R()) {
      throw InvalidArgument("--basis-json requires a single --radius equal to the basis R");
    }
    rows.push_back(custom_basis_row(*custom, cfg.solve));
  }
  return rows;
}

std::string render_virial(const std::vector<VirialReport>& reps, const std::string& method,
                          Format format) {
  std::string out;
  switch (format) {
    case Format::Csv:
      out = "method,R,dE_dR,lhs,rhs,residual,relative_residual,free_residual,pressure\n";
      for (const auto& v : reps) {
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", method, format_number(v.R),
                           format_number(v.dE_dR), format_number(v.lhs), format_number(v.rhs),
                           format_number(v.residual), format_number(v.relative_residual()),
                           format_number(v.free_residual), format_number(v.pressure));
      }
      break;
    case Format::Json:
      out = "[";
      for (std::size_t i = 0; i < reps.size(); ++i) {
        const auto& v = reps[i];
        out += fmt::format(
            "{}{{\"method\":{},\"R\":{},\"dE_dR\":{},\"lhs\":{},\"rhs\":{},\"residual\":{},"
            "\"relative_residual\":{},\"free_residual\":{},\"pressure\":{}}}",
            i ? "," : "", json_string(method), format_number(v.R), format_number(v.dE_dR),
            format_number(v.lhs), format_number(v.rhs), format_number(v.residual),
            format_number(v.relative_residual()), format_number(v.free_residual),
            format_number(v.pressure));
      }
      out += "]\n";
      break;
    case Format::Pretty:
      out = fmt::format("{:<4}{:>6}{:>14}{:>14}{:>12}{:>14}{:>14}\n", "", "R", "R dE/dR",
                        "-2T-V", "rel.resid", "2T+V", "pressure");
      for (const auto& v : reps) {
        out += fmt::format("{:<4}{:>6}{:>14.6f}{:>14.6f}{:>12.2e}{:>14.6e}{:>14.6e}\n", method,
                           fmt::format("{:g}", v.R), v.lhs, v.rhs, v.relative_residual(),
                           v.free_residual, v.pressure);
      }
      break;
  }
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NumericalError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const IllConditionedOverlap*>(&e) ||
      dynamic_cast<const OptimizerStalled*>(&e)) {
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "pretty") return Format::Pretty;
  throw InvalidArgument("unknown format '" + name + "'");
}

std::vector<double> RunConfig::resolved_radii() const {
  const bool have_range = r_min || r_max || step;
  if (!radii.empty() && have_range) {
    throw InvalidArgument("give either explicit radii or --r-min/--r-max/--step, not both");
  }
  if (!have_range) {
    if (radii.empty()) throw InvalidArgument("no radius given");
    for (double R : radii) {
      if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("radii must be positive");
    }
    return radii;
  }
  if (!r_min || !r_max || !step) throw InvalidArgument("a sweep needs --r-min, --r-max and --step");
  if (!(*step > 0.0)) throw InvalidArgument("--step must be positive");
  if (!(*r_min > 0.0) || *r_max < *r_min) throw InvalidArgument("need 0 < r-min <= r-max");
  std::vector<double> out;
  // Integer stepping avoids accumulating rounding in the radii.
  const auto count = static_cast<long>(std::floor((*r_max - *r_min) / *step + 1e-9));
  for (long k = 0; k <= count; ++k) {
    out.push_back(std::round((*r_min + static_cast<double>(k) * *step) * 1e12) / 1e12);
  }
  return out;
}

Exponents parse_exponents(const std::string& text, Exponents base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("expected key=value in '" + item + "'");
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad number in '" + item + "'");
    }
    if (key == "alpha") {
      base.alpha = value;
    } else if (key == "beta") {
      base.beta = value;
    } else if (key == "gamma") {
      base.gamma = value;
    } else {
      throw InvalidArgument("unknown exponent '" + key + "'");
    }
  }
  return base;
}

std::vector<OutputRow> rows_for(const std::vector<RadiusSolution>& solutions) {
  std::vector<OutputRow> rows;
  for (const auto& s : solutions) {
    if (s.pt) rows.push_back(make_row(*s.pt));
    if (s.mnc) rows.push_back(make_row(*s.mnc));
    if (s.cnc) rows.push_back(make_row(*s.cnc));
  }
  return rows;
}

std::string render_rows(const std::vector<OutputRow>& rows, Format format) {
  switch (format) {
    case Format::Json: return to_json(rows) + "\n";
    case Format::Pretty: return pretty_rows(rows);
    case Format::Csv: break;
  }
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) out += to_csv(r) + "\n";
  return out;
}

ReproduceOutcome reproduce(const GoldenTable& table, const std::vector<double>& rows,
                           const SolveConfig& cfg) {
  std::vector<double> radii = rows.empty() ? table.radii() : rows;
  std::vector<Method> methods;
  for (double R : radii) {
    const GoldenRow* row = table.row(R);
    if (!row) throw ConfigError(fmt::format("{} has no row R = {}", table.name, format_number(R)));
    for (Method m : methods_for(*row)) {
      if (std::ranges::find(methods, m) == methods.end()) methods.push_back(m);
    }
  }
  ReproduceOutcome out;
  out.solutions = solve_radii(radii, methods, cfg);
  out.report = compare_table(table, out.solutions);
  return out;
}

std::string render_report(const ReproductionReport& report, Format format) {
  std::string out;
  switch (format) {
    case Format::Csv:
      out = "R,method,column,computed,printed,abs_diff,tolerance,status\n";
      for (const auto& c : report.cells) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", format_number(c.R), c.method, c.column,
                           opt_number(c.computed), c.printed_text,
                           c.computed ? format_number(c.abs_diff) : std::string(),
                           opt_number(c.tolerance), to_string(c.status));
      }
      return out;
    case Format::Json:
      out = fmt::format("{{\"table\":{},\"ok\":{},\"cells\":[", json_string(report.table),
                        report.ok() ? "true" : "false");
      for (std::size_t i = 0; i < report.cells.size(); ++i) {
        const auto& c = report.cells[i];
        out += fmt::format(
            "{}{{\"R\":{},\"method\":{},\"column\":{},\"computed\":{},\"printed\":{},"
            "\"printed_text\":{},\"abs_diff\":{},\"tolerance\":{},\"status\":{},\"note\":{}}}",
            i ? "," : "", format_number(c.R), json_string(c.method), json_string(c.column),
            opt_json(c.computed), format_number(c.printed), json_string(c.printed_text),
            c.computed ? format_number(c.abs_diff) : std::string("null"), opt_json(c.tolerance),
            json_string(std::string(to_string(c.status))), json_string(c.note));
      }
      out += "]}\n";
      return out;
    case Format::Pretty:
      break;
  }
  out = fmt::format("{:>6} {:<4} {:<6} {:>14} {:>12} {:>10} {:>8}  {}\n", "R", "", "col",
                    "computed", "printed", "|diff|", "tol", "status");
  for (const auto& c : report.cells) {
    out += fmt::format("{:>6} {:<4} {:<6} {:>14} {:>12} {:>10} {:>8}  {}\n", fmt::format("{:g}", c.R),
                       c.method, c.column,
                       c.computed ? fmt::format("{:.6f}", *c.computed) : std::string("-"),
                       c.printed_text,
                       c.computed ? fmt::format("{:.1e}", c.abs_diff) : std::string("-"),
                       c.tolerance ? fmt::format("{:.0e}", *c.tolerance) : std::string("-"),
                       to_string(c.status));
  }
  out += fmt::format("{}: {} pass, {} fail, {} known-typo, {} informative, {} not computed\n",
                     report.table, report.count(CellStatus::Pass), report.count(CellStatus::Fail),
                     report.count(CellStatus::TypoExcluded), report.count(CellStatus::Informative),
                     report.count(CellStatus::NotComputed));
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Confined hydrogen atom with a moving nucleus"};
  app.set_config("--config", "", "TOML/INI defaults; command line flags take precedence");
  app.require_subcommand(1);

  CommonOptions solve_opts, sweep_opts, repro_opts, virial_opts;
  auto* solve = app.add_subcommand("solve", "solve at one or more radii");
  solve_opts.bind(*solve, true, false, "pt,mnc,cnc");

  auto* sweep = app.add_subcommand("sweep", "solve over a radius grid or list");
  sweep_opts.bind(*sweep, true, true, "pt,mnc,cnc");

  auto* repro = app.add_subcommand("reproduce", "compare against the golden tables");
  std::string table;
  std::vector<double> rows;
  repro->add_option("table", table, "table1 or table2")
      ->required()
      ->check(CLI::IsMember({"table1", "table2"}));
  repro->add_option("--rows", rows, "radii to reproduce (default: all)")->delimiter(',');
  repro_opts.bind(*repro, false, false, "");

  auto* virial = app.add_subcommand("virial", "confined virial relation and wall pressure");
  double dR = 0.0;
  virial->add_option("--dr", dR, "finite-difference step (default 1e-3 R)");
  virial_opts.bind(*virial, true, false, "cnc");

  auto* zeros = app.add_subcommand("bessel-zeros", "zeros of spherical Bessel functions");
  int l_max = 3;
  int count = 5;
  std::string zeros_format = "csv";
  zeros->add_option("--l-max", l_max, "highest order")->capture_default_str();
  zeros->add_option("--count", count, "zeros per order")->capture_default_str();
  zeros->add_option("--format", zeros_format, "json or csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (solve->parsed() || sweep->parsed()) {
      const RunConfig cfg = (solve->parsed() ? solve_opts : sweep_opts).resolve();
      if (solve->parsed() && (cfg.r_min || cfg.r_max)) {
        throw InvalidArgument("solve takes --radius; use sweep for a range");
      }
      write_output(render_rows(solve_rows(cfg), cfg.format), cfg.output, out);
      return kSuccess;
    }
    if (repro->parsed()) {
      const RunConfig cfg = repro_opts.resolve();
      const GoldenTable golden = load_golden(golden_path(cfg, table));
      const ReproduceOutcome res = reproduce(golden, rows, cfg.solve);
      write_output(render_report(res.report, cfg.format), cfg.output, out);
      if (!res.report.ok()) {
        err << fmt::format("{}: {} cell(s) outside tolerance\n", golden.name,
                           res.report.count(CellStatus::Fail) +
                               res.report.count(CellStatus::NotComputed));
        return kToleranceFailure;
      }
      return kSuccess;
    }
    if (virial->parsed()) {
      const RunConfig cfg = virial_opts.resolve();
      if (cfg.methods.size() != 1 || cfg.methods.front() == Method::Pt) {
        throw InvalidArgument("virial needs exactly one of --method mnc or --method cnc");
      }
      const Method m = cfg.methods.front();
      std::vector<VirialReport> reps;
      // Nonlinear parameters are optimized at R and held fixed at R ± dR.
      for (double R : cfg.resolved_radii()) {
        std::function<ObservableSet(double)> solver;
        if (m == Method::Cnc) {
          const double delta = solve_cnc(R, cfg.solve).delta;
          solver = [&, delta](double r) {
            return cnc_solve(RadialBasis{cfg.solve.cnc_N, delta, r}, cfg.solve.cnc).as_observables();
          };
        } else {
          const Exponents e = solve_mnc(R, cfg.solve).exponents;
          solver = [&, e](double r) { return solve_mnc_fixed(r, e, cfg.solve.mnc).obs; };
        }
        reps.push_back(virial_report(solver, R, dR));
      }
      write_output(render_virial(reps, std::string(to_string(m)), cfg.format), cfg.output, out);
      return kSuccess;
    }
    if (zeros->parsed()) {
      if (l_max < 0 || l_max > kMaxBesselOrder || count < 1) {
        throw InvalidArgument(fmt::format("need 0 <= l-max <= {} and count >= 1", kMaxBesselOrder));
      }
      const Format f = parse_format(zeros_format);
      std::string text = f == Format::Json ? "[" : "l,n,x\n";
      bool first = true;
      for (int l = 0; l <= l_max; ++l) {
        for (int n = 1; n <= count; ++n) {
          const double x = BesselZeroTable::global()(l, n);
          if (f == Format::Json) {
            text += fmt::format("{}{{\"l\":{},\"n\":{},\"x\":{}}}", first ? "" : ",", l, n,
                                format_number(x));
          } else {
            text += fmt::format("{},{},{}\n", l, n, format_number(x));
          }
          first = false;
        }
      }
      if (f == Format::Json) text += "]\n";
      out << text;
      return kSuccess;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsageError;
}

}  // namespace chbox::cli
