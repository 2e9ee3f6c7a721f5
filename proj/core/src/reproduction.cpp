#include "chbox/reproduction.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "chbox/errors.hpp"

namespace chbox {

Method parse_method(std::string_view name) {
  if (name == "pt") return Method::Pt;
  if (name == "mnc") return Method::Mnc;
  if (name == "cnc") return Method::Cnc;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Pt: return "pt";
    case Method::Mnc: return "mnc";
    case Method::Cnc: return "cnc";
  }
  return "unknown";
}

std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Pass: return "pass";
    case CellStatus::Fail: return "FAIL";
    case CellStatus::TypoExcluded: return "typo-excluded";
    case CellStatus::Informative: return "info";
    case CellStatus::NotComputed: return "not computed";
  }
  return "unknown";
}

PtResult solve_pt(double R, const SolveConfig& cfg) {
  return pt_ground_state(ModelParams(R, cfg.nuclear_mass), cfg.pt_nodes);
}

MncResult solve_mnc(double R, const SolveConfig& cfg) {
  MncOptions opts = cfg.mnc;
  opts.nuclear_mass = cfg.nuclear_mass;
  if (cfg.mnc_fixed) return solve_mnc_fixed(R, *cfg.mnc_fixed, opts);
  if (cfg.mnc_seed) {
    const MncSeed seeds[] = {*cfg.mnc_seed};
    return optimize_mnc(R, seeds, opts);
  }
  return optimize_mnc(R, cfg.seeds.mnc_seeds(R), opts);
}

CncResult solve_cnc(double R, const SolveConfig& cfg) {
  const double delta = cfg.cnc_delta ? *cfg.cnc_delta : cfg.seeds.cnc_delta(R);
  return cnc_ground_state(R, cfg.cnc_N, delta, cfg.cnc);
}

RadiusSolution solve_radius(double R, const std::vector<Method>& methods, const SolveConfig& cfg) {
  RadiusSolution sol;
  sol.R = R;
  for (Method m : methods) {
    switch (m) {
      case Method::Pt: sol.pt = solve_pt(R, cfg); break;
      case Method::Mnc: sol.mnc = solve_mnc(R, cfg); break;
      case Method::Cnc: sol.cnc = solve_cnc(R, cfg); break;
    }
  }
  return sol;
}

std::vector<RadiusSolution> solve_radii(const std::vector<double>& radii,
                                        const std::vector<Method>& methods,
                                        const SolveConfig& cfg) {
  std::vector<RadiusSolution> out(radii.size());
  std::vector<std::exception_ptr> errors(radii.size());
  unsigned jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(radii.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < radii.size(); i = next++) {
      try {
        out[i] = solve_radius(radii[i], methods, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

std::optional<double> normalized_coefficient(const Eigen::VectorXd& c, Eigen::Index k) {
  if (k >= c.size()) return std::nullopt;
  Eigen::Index imax = 0;
  c.cwiseAbs().maxCoeff(&imax);
  return c[k] / c[imax];
}

}  // namespace

std::optional<double> computed_value(const RadiusSolution& sol, std::string_view method,
                                     std::string_view column) {
  if (method == "pt" && sol.pt) {
    const PtResult& p = *sol.pt;
    if (column == "E") return p.E;
    if (column == "T") return p.T;
    if (column == "T_e") return p.T_e;
    if (column == "T_n") return p.T_n;
    if (column == "V") return p.V;
  }
  if (method == "mnc" && sol.mnc) {
    const MncResult& m = *sol.mnc;
    if (column == "E") return m.obs.E;
    if (column == "T") return m.obs.T;
    if (column == "T_e") return m.obs.T_e;
    if (column == "T_n") return m.obs.T_n;
    if (column == "V") return m.obs.V;
    if (column == "r_e") return m.obs.r_e_mean;
    if (column == "r_n") return m.obs.r_n_mean;
    if (column == "r") return m.obs.r_mean;
    if (column == "alpha") return m.exponents.alpha;
    if (column == "beta") return m.exponents.beta;
    if (column == "gamma") return m.exponents.gamma;
    if (column.size() == 2 && column[0] == 'c') {
      return normalized_coefficient(m.coeffs, column[1] - '1');
    }
  }
  if (method == "cnc" && sol.cnc) {
    const CncResult& c = *sol.cnc;
    if (column == "E") return c.E;
    if (column == "T" || column == "T_e") return c.T;
    if (column == "V") return c.V;
    if (column == "r") return c.r_mean;
    if (column == "delta") return c.delta;
    if (column.size() == 2 && column[0] == 'd') {
      return normalized_coefficient(c.d, column[1] - '0');
    }
  }
  return std::nullopt;
}

int ReproductionReport::count(CellStatus s) const {
  return static_cast<int>(
      std::count_if(cells.begin(), cells.end(), [&](const CellComparison& c) { return c.status == s; }));
}

ReproductionReport compare_table(const GoldenTable& table,
                                 const std::vector<RadiusSolution>& solutions) {
  ReproductionReport rep;
  rep.table = table.name;
  for (const RadiusSolution& sol : solutions) {
    const GoldenRow* row = table.row(sol.R);
    if (row == nullptr) continue;
    for (const GoldenCell& cell : row->cells) {
      CellComparison cmp;
      cmp.R = row->R;
      cmp.method = cell.method;
      cmp.column = cell.column;
      cmp.printed = cell.value;
      cmp.printed_text = cell.printed;
      cmp.tolerance = cell.tolerance;
      cmp.note = cell.note;
      cmp.computed = computed_value(sol, cell.method, cell.column);
      if (!cmp.computed) {
        cmp.status = CellStatus::NotComputed;
      } else {
        cmp.abs_diff = std::abs(*cmp.computed - cell.value);
        if (cell.typo) {
          cmp.status = CellStatus::TypoExcluded;
        } else if (!cell.tolerance) {
          cmp.status = CellStatus::Informative;
        } else {
          cmp.status = cmp.abs_diff <= *cell.tolerance ? CellStatus::Pass : CellStatus::Fail;
        }
      }
      rep.cells.push_back(std::move(cmp));
    }
  }
  return rep;
}

std::vector<Method> methods_for(const GoldenRow& row) {
  std::vector<Method> out;
  for (Method m : {Method::Pt, Method::Mnc, Method::Cnc}) {
    const bool present = std::any_of(row.cells.begin(), row.cells.end(),
                                     [&](const GoldenCell& c) { return c.method == to_string(m); });
    if (present) out.push_back(m);
  }
  return out;
}

}  // namespace chbox
