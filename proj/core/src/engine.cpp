#include "chbox/engine.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "chbox/errors.hpp"

namespace chbox {

namespace {

void check_consistent(const HylleraasBasis& basis, const ModelParams& params) {
  if (basis.R() != params.R()) {
    throw InvalidArgument("basis radius " + std::to_string(basis.R()) +
                          " differs from model radius " + std::to_string(params.R()));
  }
}

// M += w a bᵀ over the full matrix; H is not assumed symmetric here.
void rank_update(Eigen::MatrixXd& M, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                 double w) {
  const Eigen::Index n = a.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double wb = w * b[j];
    for (Eigen::Index i = 0; i < n; ++i) M(i, j) += a[i] * wb;
  }
}

// Evaluates every term at a node, sharing exponentials between terms.
class TermEvaluator {
public:
  explicit TermEvaluator(const HylleraasBasis& basis) : basis_(basis) {
    for (const auto& t : basis.terms()) {
      idx_e_.push_back(slot(alpha_, t.alpha));
      idx_n_.push_back(slot(beta_, t.beta));
      idx_r_.push_back(slot(gamma_, t.gamma));
    }
    exp_e_.resize(alpha_.size());
    exp_n_.resize(beta_.size());
    exp_r_.resize(gamma_.size());
  }

  void eval(const HylleraasPoint& p, std::vector<DerivativeBundle>& out) {
    for (std::size_t i = 0; i < alpha_.size(); ++i) exp_e_[i] = std::exp(-alpha_[i] * p.r_e);
    for (std::size_t i = 0; i < beta_.size(); ++i) exp_n_[i] = std::exp(-beta_[i] * p.r_n);
    for (std::size_t i = 0; i < gamma_.size(); ++i) exp_r_[i] = std::exp(-gamma_[i] * p.r);
    const double R = basis_.R();
    const Cutoff cut = basis_.cutoff();
    out.resize(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const auto& t = basis_[k];
      const RadialFactor a = radial_factor(p.r_e, t.n, t.alpha, exp_e_[idx_e_[k]], R, cut);
      const RadialFactor b = radial_factor(p.r_n, t.m, t.beta, exp_n_[idx_n_[k]], R, cut);
      const RadialFactor g =
          radial_factor(p.r, t.l, t.gamma, exp_r_[idx_r_[k]], R, Cutoff::None);
      DerivativeBundle& d = out[k];
      d.value = a.f * b.f * g.f;
      d.d_e = a.df * b.f * g.f;
      d.d_n = a.f * b.df * g.f;
      d.d_r = a.f * b.f * g.df;
      d.d_ee = a.d2f * b.f * g.f;
      d.d_nn = a.f * b.d2f * g.f;
      d.d_rr = a.f * b.f * g.d2f;
      d.d_er = a.df * b.f * g.df;
      d.d_nr = a.f * b.df * g.df;
    }
  }

private:
  static std::size_t slot(std::vector<double>& list, double v) {
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i] == v) return i;
    list.push_back(v);
    return list.size() - 1;
  }

  const HylleraasBasis& basis_;
  std::vector<double> alpha_, beta_, gamma_;
  std::vector<std::size_t> idx_e_, idx_n_, idx_r_;
  std::vector<double> exp_e_, exp_n_, exp_r_;
};

}  // namespace

MatrixPair assemble(const HylleraasBasis& basis, const ModelParams& params,
                    const QuadratureSpec& quad) {
  return assemble(basis, params, hylleraas_grid(params.R(), quad));
}

OperatorMatrices assemble_operators(const HylleraasBasis& basis, const ModelParams& params,
                                    const QuadratureSpec& quad) {
  return assemble_operators(basis, params, hylleraas_grid(params.R(), quad));
}

MatrixPair assemble(const HylleraasBasis& basis, const ModelParams& params,
                    std::span<const HylleraasNode> grid) {
  check_consistent(basis, params);
  const auto n = static_cast<Eigen::Index>(basis.size());
  MatrixPair pair{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};

  Eigen::VectorXd phi(n), hphi(n);
  TermEvaluator evaluator(basis);
  std::vector<DerivativeBundle> bundles;
  for (const auto& node : grid) {
    const HylleraasPoint p{node.r_e, node.r_n, node.r};
    evaluator.eval(p, bundles);
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& d = bundles[static_cast<std::size_t>(k)];
      phi[k] = d.value;
      hphi[k] = apply_hamiltonian(d, params, p);
    }
    rank_update(pair.S, phi, phi, node.weight);
    rank_update(pair.H, phi, hphi, node.weight);
  }
  return pair;
}

OperatorMatrices assemble_operators(const HylleraasBasis& basis, const ModelParams& params,
                                    std::span<const HylleraasNode> grid) {
  check_consistent(basis, params);
  const auto n = static_cast<Eigen::Index>(basis.size());
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(n, n);
  OperatorMatrices ops{zero, zero, zero, zero, zero, zero, zero, zero};

  Eigen::VectorXd phi(n), hphi(n), te(n), tn(n);
  TermEvaluator evaluator(basis);
  std::vector<DerivativeBundle> bundles;
  for (const auto& node : grid) {
    const HylleraasPoint p{node.r_e, node.r_n, node.r};
    evaluator.eval(p, bundles);
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto& d = bundles[static_cast<std::size_t>(k)];
      const auto parts = hamiltonian_parts(d, params, p);
      phi[k] = d.value;
      hphi[k] = apply_hamiltonian(d, params, p);
      te[k] = parts.kinetic_e;
      tn[k] = parts.kinetic_n;
    }
    const double w = node.weight;
    rank_update(ops.S, phi, phi, w);
    rank_update(ops.H, phi, hphi, w);
    rank_update(ops.T_e, phi, te, w);
    rank_update(ops.T_n, phi, tn, w);
    rank_update(ops.V, phi, phi, -w / node.r);
    rank_update(ops.r_e, phi, phi, w * node.r_e);
    rank_update(ops.r_n, phi, phi, w * node.r_n);
    rank_update(ops.r, phi, phi, w * node.r);
  }
  return ops;
}

GroundState ground_state(const HylleraasBasis& basis, const ModelParams& params,
                         const QuadratureSpec& quad) {
  SpectralResult spectrum = solve_generalized(assemble(basis, params, quad));
  Eigen::VectorXd c = spectrum.eigenvectors.col(0);
  return {std::move(spectrum), TrialState{basis, std::move(c)}};
}

ObservableSet observables(const OperatorMatrices& ops, const Eigen::VectorXd& c) {
  const double norm = c.dot(ops.S * c);
  if (!(norm > 0.0)) throw InvalidArgument("observables: state has zero norm");
  auto expect = [&](const Eigen::MatrixXd& M) { return c.dot(M * c) / norm; };
  ObservableSet o;
  o.E = expect(ops.H);
  o.T_e = expect(ops.T_e);
  o.T_n = expect(ops.T_n);
  o.T = o.T_e + o.T_n;
  o.V = expect(ops.V);
  o.r_e_mean = expect(ops.r_e);
  o.r_n_mean = expect(ops.r_n);
  o.r_mean = expect(ops.r);
  return o;
}

ObservableSet observables(const TrialState& state, const ModelParams& params,
                          const QuadratureSpec& quad) {
  state.validate();
  return observables(assemble_operators(state.basis, params, quad), state.coeffs);
}

double VirialReport::relative_residual() const {
  return std::abs(residual) / std::max(std::abs(lhs), 1e-300);
}

VirialReport virial_report(const std::function<ObservableSet(double)>& solver, double R,
                           double dR) {
  if (!(R > 0.0)) throw InvalidArgument("virial_report: R must be positive");
  if (dR <= 0.0) dR = 1e-3 * R;
  if (dR >= R) throw InvalidArgument("virial_report: dR must be smaller than R");

  const ObservableSet center = solver(R);
  const double e_plus = solver(R + dR).E;
  const double e_minus = solver(R - dR).E;

  VirialReport rep;
  rep.R = R;
  rep.dE_dR = (e_plus - e_minus) / (2.0 * dR);
  rep.lhs = R * rep.dE_dR;
  rep.rhs = -2.0 * center.T - center.V;
  rep.residual = rep.lhs - rep.rhs;
  rep.free_residual = 2.0 * center.T + center.V;
  const double volume = 4.0 / 3.0 * std::numbers::pi * R * R * R;
  rep.pressure = (2.0 * center.T + center.V) / (3.0 * volume);
  return rep;
}

}  // namespace chbox
