#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "chbox/basis.hpp"
#include "chbox/eigensolver.hpp"
#include "chbox/engine.hpp"
#include "chbox/golden.hpp"
#include "chbox/pt.hpp"
#include "chbox/quadrature.hpp"
#include "chbox/reproduction.hpp"
#include "commands.hpp"
#include "oracles.hpp"

using namespace chbox;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, title, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct Tally {
  int checked = 0;
  int failed = 0;
  double worst = 0.0;
  std::string worst_cell;
  std::vector<std::string> misses;

  void add(double R, const std::string& label, double got, double want, double tol) {
    ++checked;
    const double diff = std::abs(got - want);
    if (diff > worst) {
      worst = diff;
      worst_cell = fmt::format("R={:g} {}", R, label);
    }
    if (!(diff <= tol)) {
      ++failed;
      misses.push_back(fmt::format("R={:g} {} {:.6f} vs {:.6f}", R, label, got, want));
    }
  }

  std::string summary() const {
    std::string s = fmt::format("{} cells, {} out of tolerance, worst |diff| {:.2e} at {}",
                                checked, failed, worst, worst_cell);
    for (const auto& m : misses) s += "\n    miss: " + m;
    return s;
  }
};

const RadiusSolution* find(const std::vector<RadiusSolution>& sols, double R) {
  for (const auto& s : sols) {
    if (std::abs(s.R - R) < 1e-12) return &s;
  }
  return nullptr;
}

bool contains(std::initializer_list<const char*> names, const std::string& column) {
  return std::ranges::any_of(names, [&](const char* n) { return column == n; });
}

// Golden cells of `method` in the listed columns, checked against `tol`.
void check_cells(const GoldenTable& table, const std::vector<RadiusSolution>& sols,
                 const char* method, std::initializer_list<const char*> columns, double tol,
                 Tally& tally, double max_R = 1e300) {
  for (const auto& row : table.rows) {
    if (row.R > max_R + 1e-12) continue;
    const RadiusSolution* sol = find(sols, row.R);
    for (const auto& c : row.cells) {
      if (c.method != method || !contains(columns, c.column) || c.typo) continue;
      const auto got = sol ? computed_value(*sol, c.method, c.column) : std::nullopt;
      if (!got) {
        tally.add(row.R, c.method + " " + c.column + " (missing)", NAN, c.value, tol);
        continue;
      }
      tally.add(row.R, c.method + " " + c.column, *got, c.value, tol);
    }
  }
}

void criterion_pt(const GoldenTable& t1) {
  SolveConfig cfg;
  std::vector<RadiusSolution> sols;
  const auto t0 = Clock::now();
  for (const auto& row : t1.rows) {
    if (row.R > 1.0 + 1e-12) continue;
    RadiusSolution s;
    s.R = row.R;
    s.pt = solve_pt(row.R, cfg);
    sols.push_back(std::move(s));
  }
  const double elapsed = seconds_since(t0);
  Tally tally;
  check_cells(t1, sols, "pt", {"E", "T", "T_e", "T_n", "V"}, 1e-4, tally, 1.0);
  report(1, "PT reproduction", tally.failed == 0 && tally.checked > 0 && elapsed < 1.0,
         fmt::format("{}; {:.3f} s", tally.summary(), elapsed));
}

void criterion_cnc(const GoldenTable& t1, const std::vector<RadiusSolution>& sols) {
  Tally tally;
  check_cells(t1, sols, "cnc", {"E"}, 5e-5, tally);
  report(2, "CNC reproduction", tally.failed == 0 && tally.checked > 0, tally.summary());
}

void criterion_mnc(const GoldenTable& t1, const GoldenTable& t2,
                   const std::vector<RadiusSolution>& sols, double elapsed) {
  Tally energy, parts, distances;
  check_cells(t1, sols, "mnc", {"E"}, 1e-3, energy);
  check_cells(t1, sols, "mnc", {"T_e", "T_n", "V"}, 1e-2, parts);
  check_cells(t2, sols, "mnc", {"r_e", "r_n", "r"}, 5e-3, distances);
  const bool ok = energy.failed == 0 && parts.failed == 0 && distances.failed == 0 &&
                  energy.checked > 0 && distances.checked > 0;
  report(3, "MNC variational reproduction", ok,
         fmt::format("sweep {:.1f} s\n    E: {}\n    T_e/T_n/V: {}\n    distances: {}", elapsed,
                     energy.summary(), parts.summary(), distances.summary()));
}

void criterion_ordering(const std::vector<RadiusSolution>& sols) {
  int checked = 0;
  std::vector<std::string> bad;
  for (const auto& s : sols) {
    if (s.pt && s.mnc && s.R <= 1.0 + 1e-12) {
      ++checked;
      if (!(s.pt->E > s.mnc->obs.E)) bad.push_back(fmt::format("PT<=MNC at R={:g}", s.R));
    }
    if (s.mnc && s.cnc) {
      ++checked;
      if (!(s.mnc->obs.E > s.cnc->E)) bad.push_back(fmt::format("MNC<=CNC at R={:g}", s.R));
    }
  }
  std::string detail = fmt::format("{} inequalities, {} violated", checked, bad.size());
  for (const auto& b : bad) detail += "\n    " + b;
  report(4, "Ordering", checked > 0 && bad.empty(), detail);
}

void criterion_virial() {
  const SolveConfig cfg;
  auto report_at = [&](double R) {
    const CncResult center = solve_cnc(R, cfg);
    auto solver = [&](double r) {
      return cnc_solve(RadialBasis{cfg.cnc_N, center.delta, r}, cfg.cnc).as_observables();
    };
    return virial_report(solver, R);
  };
  std::string detail;
  bool ok = true;
  for (double R : {1.0, 2.0}) {
    const VirialReport v = report_at(R);
    const double rel = v.relative_residual();
    ok = ok && rel < 0.02;
    detail += fmt::format("R={:g} relative residual {:.2e}; ", R, rel);
  }
  const VirialReport far = report_at(10.0);
  ok = ok && std::abs(far.free_residual) < 1e-3;
  detail += fmt::format("R=10 |2<T>+<V>| {:.2e}", std::abs(far.free_residual));
  report(5, "Virial and pressure", ok, detail);
}

struct Family {
  int n, m, l;
  Cutoff cutoff;
};

int derivative_failures(int& checked) {
  const Family families[] = {{0, 0, 0, Cutoff::Box}, {1, 0, 0, Cutoff::Box},
                             {0, 1, 0, Cutoff::Box}, {0, 0, 1, Cutoff::Box},
                             {2, 2, 2, Cutoff::Box}, {1, 2, 1, Cutoff::Box},
                             {0, 0, 2, Cutoff::Box}, {1, 1, 1, Cutoff::None}};
  std::mt19937 rng(1623);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> expo(0.0, 20.0);
  const double R = 1.5;
  int bad = 0;
  for (const auto& fam : families) {
    for (int k = 0; k < 100; ++k) {
      const HylleraasTerm t{fam.n, fam.m, fam.l, expo(rng), expo(rng), expo(rng)};
      const double re = R * (0.1 + 0.8 * unit(rng));
      const double rn = R * (0.1 + 0.8 * unit(rng));
      const double lo = std::abs(re - rn), hi = re + rn;
      const double r = lo + (hi - lo) * (0.1 + 0.8 * unit(rng));
      const HylleraasPoint p{re, rn, r};
      const DerivativeBundle an = eval_derivatives(t, R, p, fam.cutoff);
      const double h = 0.05 * std::min({re, rn, r - lo, hi - r, R - re, R - rn,
                                        1.0 / (1.0 + t.alpha + t.beta + t.gamma)});
      const DerivativeBundle fd = oracle::finite_difference_bundle(
          [&](double a, double b, double c) { return eval_term(t, R, {a, b, c}, fam.cutoff); },
          p, h);
      const double f1 = 1e-4 * std::max({std::abs(an.d_e), std::abs(an.d_n), std::abs(an.d_r)});
      const double f2 = 1e-4 * std::max({std::abs(an.d_ee), std::abs(an.d_nn), std::abs(an.d_rr),
                                         std::abs(an.d_er), std::abs(an.d_nr)});
      auto rel = [](double got, double want, double floor) {
        return std::abs(got - want) / std::max(std::abs(want), floor);
      };
      const double worst = std::max({rel(fd.d_e, an.d_e, f1), rel(fd.d_n, an.d_n, f1),
                                     rel(fd.d_r, an.d_r, f1), rel(fd.d_ee, an.d_ee, f2),
                                     rel(fd.d_nn, an.d_nn, f2), rel(fd.d_rr, an.d_rr, f2),
                                     rel(fd.d_er, an.d_er, f2), rel(fd.d_nr, an.d_nr, f2)});
      ++checked;
      if (!(worst < 1e-6)) ++bad;
    }
  }
  return bad;
}

int eigen_failures(int& checked) {
  std::mt19937 rng(77);
  int bad = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXd H = oracle::random_symmetric(n, rng);
      const Eigen::MatrixXd S = oracle::random_spd(n, rng);
      const auto got = solve_generalized({H, S}).eigenvalues;
      const Eigen::VectorXd want = oracle::generalized_eigenvalues(H, S);
      ++checked;
      for (int k = 0; k < n; ++k) {
        if (!(std::abs(got[k] - want[k]) <= 1e-10 * std::max(1.0, std::abs(want[k])))) {
          ++bad;
          break;
        }
      }
    }
  }
  return bad;
}

void criterion_oracles() {
  int fd_checked = 0, eig_checked = 0;
  const int fd_bad = derivative_failures(fd_checked);
  const int eig_bad = eigen_failures(eig_checked);

  const QuadratureSpec quad;
  auto unit = [](double, double, double) { return 1.0; };
  double quad_err = std::abs(integrate_hylleraas(unit, 1.0, quad) - 2.0 / 9.0);
  quad_err = std::max(quad_err, std::abs(integrate_hylleraas([](double, double, double r) {
                                           return 1.0 / r;
                                         }, 1.0, quad) - 4.0 / 15.0));
  // Volume law over the r_e r_n r measure.
  double scale_err = 0.0;
  for (double R : {0.1, 0.5, 2.0, 10.0}) {
    const double want = 2.0 / 9.0 * std::pow(R, 6);
    scale_err = std::max(scale_err, std::abs(integrate_hylleraas(unit, R, quad) / want - 1.0));
  }

  double zero_err = 0.0;
  for (int n = 1; n <= 10; ++n) {
    zero_err = std::max(zero_err, std::abs(bessel_zero(0, n) - n * std::numbers::pi) /
                                      (n * std::numbers::pi));
  }
  const double j1_err = std::abs(bessel_zero(1, 1) - oracle::j1_first_zero_bisection());

  const bool ok = fd_bad == 0 && eig_bad == 0 && quad_err < 1e-10 && scale_err < 1e-10 &&
                  zero_err < 1e-12 && j1_err < 1e-10;
  report(6, "Oracle suites", ok,
         fmt::format("derivatives {}/{} bad; eigen {}/{} bad; unit box |err| {:.1e}; "
                     "R^6 volume law rel {:.1e}; x_0n rel {:.1e}; x_11 |err| {:.1e}",
                     fd_bad, fd_checked, eig_bad, eig_checked, quad_err, scale_err, zero_err,
                     j1_err));
}

void criterion_scaling() {
  const double e1 = zero_order(ModelParams(1.0)).E0;
  const double v1 = first_order_coulomb(1.0);
  double e_err = 0.0, v_err = 0.0;
  for (double R : {0.1, 1.0, 10.0}) {
    e_err = std::max(e_err, std::abs(zero_order(ModelParams(R)).E0 * R * R / e1 - 1.0));
    v_err = std::max(v_err, std::abs(first_order_coulomb(R) * R / v1 - 1.0));
  }
  report(7, "Scaling laws", e_err < 1e-10 && v_err < 1e-10,
         fmt::format("zero order rel {:.1e}; first order rel {:.1e}", e_err, v_err));
}

}  // namespace

int main() {
  try {
    const auto dir = default_data_dir();
    const GoldenTable t1 = load_golden(dir / "table1.json");
    const GoldenTable t2 = load_golden(dir / "table2.json");

    criterion_pt(t1);

    const SolveConfig cfg;
    auto t0 = Clock::now();
    const cli::ReproduceOutcome first = cli::reproduce(t1, {}, cfg);
    const double sweep = seconds_since(t0);

    criterion_cnc(t1, first.solutions);
    criterion_mnc(t1, t2, first.solutions, sweep);
    criterion_ordering(first.solutions);
    criterion_virial();
    criterion_oracles();
    criterion_scaling();

    const cli::ReproduceOutcome second = cli::reproduce(t1, {}, cfg);
    const std::string a = cli::render_report(first.report, cli::Format::Csv);
    const std::string b = cli::render_report(second.report, cli::Format::Csv);
    report(8, "Determinism", a == b,
           fmt::format("two reproduce table1 runs, {} bytes of CSV each, {}", a.size(),
                       a == b ? "identical" : "different"));
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
