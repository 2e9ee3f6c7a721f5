#include "chbox/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "chbox/errors.hpp"

namespace chbox {

namespace {

double max_asymmetry(const Eigen::MatrixXd& M) { return (M - M.transpose()).cwiseAbs().maxCoeff(); }

}  // namespace

void jacobi_eigen(const Eigen::MatrixXd& A_in, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index n = A_in.rows();
  Eigen::MatrixXd A = A_in;
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);

  const double scale = std::max(A.cwiseAbs().maxCoeff(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    if (std::sqrt(off) <= 1e-16 * scale) break;

    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= 1e-20 * scale) continue;
        // Rotation angle that annihilates A(p,q) (Rutishauser form).
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = A(k, p);
          const double akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = A(p, k);
          const double aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = V(k, p);
          const double vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return A(a, a) < A(b, b); });

  values.resize(n);
  vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    values[k] = A(src, src);
    vectors.col(k) = V.col(src);
  }
}

SpectralResult solve_generalized(const MatrixPair& pair, const EigenTolerances& tol) {
  const Eigen::Index n = pair.H.rows();
  if (n == 0 || pair.H.cols() != n || pair.S.rows() != n || pair.S.cols() != n) {
    throw InvalidArgument("solve_generalized: H and S must be square and of equal size");
  }
  if (!pair.H.allFinite() || !pair.S.allFinite()) {
    throw NumericalError("solve_generalized: non-finite matrix entries");
  }

  SpectralResult out;
  out.h_asymmetry = max_asymmetry(pair.H);
  out.s_asymmetry = max_asymmetry(pair.S);
  const double h_max = std::max(pair.H.cwiseAbs().maxCoeff(), 1e-300);
  const double s_max = std::max(pair.S.cwiseAbs().maxCoeff(), 1e-300);
  if (out.h_asymmetry > tol.max_relative_asymmetry * h_max ||
      out.s_asymmetry > tol.max_relative_asymmetry * s_max) {
    throw NumericalError("solve_generalized: matrix asymmetry exceeds tolerance (H: " +
                         std::to_string(out.h_asymmetry / h_max) + ", S: " +
                         std::to_string(out.s_asymmetry / s_max) + " relative)");
  }
  // Equilibrate with D = diag(S)^{-1/2}: pivots are then measured against a
  // unit diagonal, independent of how the basis functions are scaled.
  const Eigen::VectorXd sdiag = pair.S.diagonal();
  if (!(sdiag.minCoeff() > 0.0)) {
    Eigen::Index bad = 0;
    sdiag.minCoeff(&bad);
    throw IllConditionedOverlap(static_cast<std::size_t>(bad), sdiag[bad], 0.0);
  }
  const Eigen::VectorXd D = sdiag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd H = D.asDiagonal() * (0.5 * (pair.H + pair.H.transpose())) * D.asDiagonal();
  const Eigen::MatrixXd S = D.asDiagonal() * (0.5 * (pair.S + pair.S.transpose())) * D.asDiagonal();

  // S = L Lᵀ with explicit pivot checks.
  const double threshold = tol.min_relative_pivot * S.diagonal().maxCoeff();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  out.min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = S(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= L(j, k) * L(j, k);
    out.min_pivot = std::min(out.min_pivot, pivot);
    if (!(pivot > threshold)) {
      throw IllConditionedOverlap(static_cast<std::size_t>(j), pivot, threshold);
    }
    L(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = S(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }

  // A = L⁻¹ H L⁻ᵀ
  const auto Lt = L.triangularView<Eigen::Lower>();
  Eigen::MatrixXd X = Lt.solve(H);
  Eigen::MatrixXd A = Lt.solve(X.transpose());
  A = 0.5 * (A + A.transpose());

  Eigen::MatrixXd Y;
  jacobi_eigen(A, out.eigenvalues, Y);
  out.eigenvectors = D.asDiagonal() * L.transpose().triangularView<Eigen::Upper>().solve(Y);

  // Deterministic sign: largest-magnitude component positive.
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index imax = 0;
    out.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (out.eigenvectors(imax, k) < 0.0) out.eigenvectors.col(k) *= -1.0;
  }
  return out;
}

double rayleigh_quotient(const MatrixPair& pair, const Eigen::VectorXd& c) {
  if (c.size() != pair.S.rows()) throw InvalidArgument("rayleigh_quotient: size mismatch");
  const double norm = c.dot(pair.S * c);
  if (!(norm > 0.0)) throw InvalidArgument("rayleigh_quotient: vector has zero S-norm");
  return c.dot(pair.H * c) / norm;
}

}  // namespace chbox
