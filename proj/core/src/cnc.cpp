#include "chbox/cnc.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "chbox/basis.hpp"
#include "chbox/errors.hpp"
#include "chbox/quadrature.hpp"

namespace chbox {

void RadialBasis::validate() const {
  if (N < 0) throw InvalidArgument("radial basis: N must be >= 0");
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("radial basis: R must be positive");
  if (!std::isfinite(delta)) throw InvalidArgument("radial basis: delta must be finite");
}

ObservableSet CncResult::as_observables() const {
  ObservableSet o;
  o.E = E;
  o.T = T;
  o.T_e = T;
  o.V = V;
  o.r_mean = r_mean;
  return o;
}

RadialOperators cnc_operators(const RadialBasis& basis, int nodes, double electron_mass) {
  basis.validate();
  if (nodes < 2) throw InvalidArgument("cnc: need at least 2 quadrature nodes");
  if (!(electron_mass > 0.0)) throw InvalidArgument("cnc: electron mass must be positive");

  const auto n = static_cast<Eigen::Index>(basis.N + 1);
  RadialOperators ops{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
                      Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};

  std::vector<double> x, w;
  map_rule(gauss_legendre(static_cast<std::size_t>(nodes)), 0.0, basis.R, x, w);

  Eigen::VectorXd b(n), tb(n);
  const double kinetic = -0.5 / electron_mass;
  for (std::size_t q = 0; q < x.size(); ++q) {
    const double r = x[q];
    const double wq = w[q] * r * r;
    for (Eigen::Index j = 0; j < n; ++j) {
      const RadialFactor f =
          radial_factor(r, static_cast<int>(j), basis.delta, basis.R, Cutoff::Box);
      b[j] = f.f;
      tb[j] = kinetic * (f.d2f + 2.0 / r * f.df);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index j = 0; j < n; ++j) {
        ops.S(j, k) += wq * b[j] * b[k];
        ops.T(j, k) += wq * b[j] * tb[k];
        ops.V(j, k) -= wq * b[j] * b[k] / r;
        ops.r(j, k) += wq * b[j] * b[k] * r;
      }
    }
  }
  return ops;
}

CncResult cnc_solve(const RadialBasis& basis, const CncOptions& opts) {
  const RadialOperators ops = cnc_operators(basis, opts.nodes, opts.electron_mass);
  const SpectralResult spec = solve_generalized({ops.T + ops.V, ops.S});

  CncResult out;
  out.R = basis.R;
  out.delta = basis.delta;
  out.d = spec.eigenvectors.col(0);
  const double norm = out.d.dot(ops.S * out.d);
  out.T = out.d.dot(ops.T * out.d) / norm;
  out.V = out.d.dot(ops.V * out.d) / norm;
  out.E = out.T + out.V;
  out.r_mean = out.d.dot(ops.r * out.d) / norm;
  return out;
}

CncResult cnc_ground_state(double R, int N, double delta_seed, const CncOptions& opts) {
  RadialBasis basis{N, delta_seed, R};
  basis.validate();
  if (!opts.optimize_delta) return cnc_solve(basis, opts);

  Objective objective = [&](std::span<const double> x) {
    if (!(x[0] > 0.0)) return std::numeric_limits<double>::infinity();
    try {
      const RadialOperators ops = cnc_operators({N, x[0], R}, opts.nodes, opts.electron_mass);
      return solve_generalized({ops.T + ops.V, ops.S}).eigenvalues[0];
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  const MinimizeResult mr = nelder_mead(objective, {delta_seed}, opts.optimizer);
  basis.delta = mr.x[0];
  return cnc_solve(basis, opts);
}

}  // namespace chbox
