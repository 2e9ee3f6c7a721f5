#pragma once

#include <Eigen/Dense>
#include <optional>

#include "chbox/eigensolver.hpp"
#include "chbox/engine.hpp"
#include "chbox/optimize.hpp"

namespace chbox {

/// (1 - r/R) exp(-delta r) r^j, j = 0..N: the clamped-nucleus radial basis.
struct RadialBasis {
  int N = 4;
  double delta = 1.0;
  double R = 1.0;

  void validate() const;
};

struct CncOptions {
  int nodes = 200;
  bool optimize_delta = true;
  /// 1 for an infinitely heavy nucleus; pass the reduced mass for the
  /// finite-mass comparison variant.
  double electron_mass = 1.0;
  OptimizerConfig optimizer;
};

struct CncResult {
  double R = 0.0;
  double delta = 0.0;
  double E = 0.0;
  double T = 0.0;
  double V = 0.0;
  double r_mean = 0.0;
  Eigen::VectorXd d;  ///< S-normalized coefficients d_0..d_N

  /// Shares the MNC row layout; nuclear fields stay zero.
  ObservableSet as_observables() const;
};

struct RadialOperators {
  Eigen::MatrixXd S;
  Eigen::MatrixXd T;
  Eigen::MatrixXd V;
  Eigen::MatrixXd r;
};

RadialOperators cnc_operators(const RadialBasis& basis, int nodes = 200,
                              double electron_mass = 1.0);

/// Ground state at fixed delta.
CncResult cnc_solve(const RadialBasis& basis, const CncOptions& opts = {});

/// Ground state with delta seeded by `delta_seed` and refined unless
/// opts.optimize_delta is false.
CncResult cnc_ground_state(double R, int N, double delta_seed, const CncOptions& opts = {});

}  // namespace chbox
