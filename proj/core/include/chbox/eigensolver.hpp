#pragma once

#include <Eigen/Dense>

namespace chbox {

/// Hamiltonian and overlap matrices over one basis.
struct MatrixPair {
  Eigen::MatrixXd H;
  Eigen::MatrixXd S;
};

struct SpectralResult {
  Eigen::VectorXd eigenvalues;   ///< ascending
  Eigen::MatrixXd eigenvectors;  ///< columns, S-orthonormal
  double min_pivot = 0.0;        ///< smallest Cholesky pivot of the unit-diagonal scaled S
  double h_asymmetry = 0.0;      ///< max |H - Hᵀ| before symmetrization
  double s_asymmetry = 0.0;
};

struct EigenTolerances {
  /// Relative to max |H|; larger asymmetry means the assembly is unconverged.
  double max_relative_asymmetry = 1e-6;
  /// Pivot floor for S scaled to unit diagonal.
  double min_relative_pivot = 1e-12;
};

/// H c = E S c via Cholesky reduction and cyclic Jacobi.
SpectralResult solve_generalized(const MatrixPair& pair, const EigenTolerances& tol = {});

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations,
/// eigenvalues ascending.
void jacobi_eigen(const Eigen::MatrixXd& A, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

/// (cᵀHc)/(cᵀSc)
double rayleigh_quotient(const MatrixPair& pair, const Eigen::VectorXd& c);

}  // namespace chbox
