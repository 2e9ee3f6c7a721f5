#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "chbox/basis.hpp"
#include "chbox/engine.hpp"
#include "chbox/quadrature.hpp"

namespace chbox {

struct OptimizerConfig {
  /// Absolute initial simplex step per parameter. Empty: relative_step * |x0_i|.
  std::vector<double> initial_step;
  double relative_step = 0.1;
  int max_iterations = 2000;
  double f_tolerance = 1e-12;  ///< relative to max(1, |f_best|)
  double x_tolerance = 1e-8;   ///< relative to max(1, |x_best|_inf)
  int restarts = 1;            ///< fresh simplex around the best point after convergence

  void validate() const;
};

struct MinimizeResult {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> trace;  ///< best value after each iteration, non-increasing
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder–Mead simplex minimization. Non-finite objective values are treated
/// as +inf; if every point tried in one iteration is non-finite the
/// optimizer throws OptimizerStalled.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const OptimizerConfig& cfg = {});

// ---------------------------------------------------------------------------
// Moving-nucleus optimization of the four-term basis

struct MncSeed {
  double beta = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  std::string source;
};

struct MncOptions {
  PresetKind preset = PresetKind::FourTerm;  ///< Simple, FourTerm or CncStyle
  int max_power = 4;                         ///< CncStyle only
  QuadratureSpec quad;
  OptimizerConfig optimizer;
  bool optimize_alpha = false;
  double nuclear_mass = kProtonMass;
};

struct MncCandidate {
  MncSeed seed;
  Exponents exponents;
  double E = 0.0;
};

struct MncResult {
  double R = 0.0;
  Exponents exponents;
  ObservableSet obs;
  Eigen::VectorXd coeffs;         ///< S-normalized; four-term order is (1, r, r_n, r_e)
  std::vector<MncCandidate> candidates;  ///< one per seed, in seed order
  std::vector<double> trace;      ///< optimizer trace of the winning seed
  /// The first seed's optimum lies more than 1e-4 hartree above the best one.
  bool basin_differs = false;
};

/// Lowest eigenvalue of the preset basis at fixed exponents.
double mnc_energy(double R, const Exponents& e, const MncOptions& opts = {});

/// Observables at fixed exponents (no nonlinear optimization).
MncResult solve_mnc_fixed(double R, const Exponents& e, const MncOptions& opts = {});

/// Optimizes (beta, gamma) (and alpha when enabled) from every seed and keeps
/// the lowest energy. The simple preset optimizes gamma only.
MncResult optimize_mnc(double R, std::span<const MncSeed> seeds, const MncOptions& opts = {});

}  // namespace chbox
