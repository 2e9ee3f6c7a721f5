#pragma once

#include <functional>
#include <span>

#include "chbox/basis.hpp"
#include "chbox/eigensolver.hpp"
#include "chbox/quadrature.hpp"

namespace chbox {

/// One solved state: energies in hartree, mean distances in bohr.
struct ObservableSet {
  double E = 0.0;
  double T = 0.0;
  double T_e = 0.0;
  double T_n = 0.0;
  double V = 0.0;
  double r_e_mean = 0.0;
  double r_n_mean = 0.0;
  double r_mean = 0.0;
};

/// Every one-body operator needed for observables, over one basis.
struct OperatorMatrices {
  Eigen::MatrixXd S;
  Eigen::MatrixXd H;    ///< full Hamiltonian (grouped form)
  Eigen::MatrixXd T_e;
  Eigen::MatrixXd T_n;
  Eigen::MatrixXd V;
  Eigen::MatrixXd r_e;
  Eigen::MatrixXd r_n;
  Eigen::MatrixXd r;
};

/// S_ij = <φ_i|φ_j>, H_ij = <φ_i|Hφ_j> over the box measure.
MatrixPair assemble(const HylleraasBasis& basis, const ModelParams& params,
                    const QuadratureSpec& quad = {});

OperatorMatrices assemble_operators(const HylleraasBasis& basis, const ModelParams& params,
                                    const QuadratureSpec& quad = {});

/// Overloads over a precomputed grid for the same R.
MatrixPair assemble(const HylleraasBasis& basis, const ModelParams& params,
                    std::span<const HylleraasNode> grid);
OperatorMatrices assemble_operators(const HylleraasBasis& basis, const ModelParams& params,
                                    std::span<const HylleraasNode> grid);

struct GroundState {
  SpectralResult spectrum;
  TrialState state;  ///< S-normalized lowest eigenvector
};

GroundState ground_state(const HylleraasBasis& basis, const ModelParams& params,
                         const QuadratureSpec& quad = {});

ObservableSet observables(const TrialState& state, const ModelParams& params,
                          const QuadratureSpec& quad = {});

/// Expectations from pre-assembled operator matrices.
ObservableSet observables(const OperatorMatrices& ops, const Eigen::VectorXd& c);

/// Confined virial relation R dE/dR = -2<T> - <V> and the wall pressure.
struct VirialReport {
  double R = 0.0;
  double dE_dR = 0.0;
  double lhs = 0.0;        ///< R dE/dR
  double rhs = 0.0;        ///< -2<T> - <V>
  double pressure = 0.0;   ///< (2<T> + <V>) / (3 Ω), Ω = 4πR³/3
  double residual = 0.0;   ///< lhs - rhs
  double free_residual = 0.0;  ///< 2<T> + <V>, vanishes for the free atom
  double relative_residual() const;
};

/// `solver(R)` returns the observables of the optimized state at radius R.
/// dR <= 0 selects the default 1e-3 R.
VirialReport virial_report(const std::function<ObservableSet(double)>& solver, double R,
                           double dR = 0.0);

}  // namespace chbox
