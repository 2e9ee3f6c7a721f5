#include "chbox/basis.hpp"

#include <cmath>

#include "chbox/errors.hpp"

namespace chbox {

ModelParams::ModelParams(double R, double nuclear_mass)
    : R_(R), m_n_(nuclear_mass), m_reduced_(nuclear_mass / (nuclear_mass + 1.0)) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("box radius must be positive");
  if (!(nuclear_mass > 0.0) || !std::isfinite(nuclear_mass)) {
    throw InvalidArgument("nuclear mass must be positive");
  }
}

void HylleraasTerm::validate() const {
  if (n < 0 || m < 0 || l < 0) throw InvalidArgument("Hylleraas powers must be non-negative");
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
    throw InvalidArgument("Hylleraas exponents must be finite");
  }
}

DerivativeBundle& DerivativeBundle::operator+=(const DerivativeBundle& o) {
  value += o.value;
  d_e += o.d_e;
  d_n += o.d_n;
  d_r += o.d_r;
  d_ee += o.d_ee;
  d_nn += o.d_nn;
  d_rr += o.d_rr;
  d_er += o.d_er;
  d_nr += o.d_nr;
  return *this;
}

DerivativeBundle DerivativeBundle::operator*(double s) const {
  return {value * s, d_e * s,  d_n * s,  d_r * s, d_ee * s,
          d_nn * s,  d_rr * s, d_er * s, d_nr * s};
}

RadialFactor radial_factor(double x, int power, double exponent, double R, Cutoff cutoff) {
  return radial_factor(x, power, exponent, std::exp(-exponent * x), R, cutoff);
}

RadialFactor radial_factor(double x, int power, double exponent, double exp_factor, double R,
                           Cutoff cutoff) {
  // u = x^p e^{-a x};  u' = (p/x - a) u;  u'' = ((p/x - a)^2 - p/x^2) u
  double xp = 1.0;
  for (int k = 0; k < power; ++k) xp *= x;
  const double u = xp * exp_factor;
  double log_slope = -exponent;
  double du = -exponent * u;
  double d2u = exponent * exponent * u;
  if (power != 0) {
    log_slope += power / x;
    du = log_slope * u;
    d2u = (log_slope * log_slope - power / (x * x)) * u;
  }
  if (cutoff == Cutoff::None) return {u, du, d2u};

  const double c = 1.0 - x / R;
  const double dc = -1.0 / R;
  return {c * u, dc * u + c * du, 2.0 * dc * du + c * d2u};
}

HylleraasBasis::HylleraasBasis(std::vector<HylleraasTerm> terms, double R, Cutoff cutoff)
    : terms_(std::move(terms)), R_(R), cutoff_(cutoff) {
  if (terms_.empty()) throw InvalidArgument("basis must contain at least one term");
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("box radius must be positive");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    terms_[i].validate();
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[i] == terms_[j]) {
        throw InvalidArgument("duplicate basis term at positions " + std::to_string(j) + " and " +
                              std::to_string(i));
      }
    }
  }
}

void TrialState::validate() const {
  if (static_cast<std::size_t>(coeffs.size()) != basis.size()) {
    throw InvalidArgument("coefficient count does not match basis size");
  }
  if (coeffs.isZero(0.0)) throw InvalidArgument("trial state coefficients are all zero");
}

bool in_domain(double R, const HylleraasPoint& p) {
  // Allow a few ulps of slack on the triangle inequality.
  const double slack = 1e-12 * (p.r_e + p.r_n);
  return p.r_e > 0.0 && p.r_n > 0.0 && p.r_e <= R && p.r_n <= R &&
         p.r >= std::abs(p.r_e - p.r_n) - slack && p.r <= p.r_e + p.r_n + slack;
}

double eval_term(const HylleraasTerm& term, double R, const HylleraasPoint& p, Cutoff cutoff) {
#ifndef NDEBUG
  if (!in_domain(R, p)) throw DomainError("eval_term: point outside the Hylleraas domain");
#endif
  const double fe = radial_factor(p.r_e, term.n, term.alpha, R, cutoff).f;
  const double fn = radial_factor(p.r_n, term.m, term.beta, R, cutoff).f;
  const double fr = radial_factor(p.r, term.l, term.gamma, R, Cutoff::None).f;
  return fe * fn * fr;
}

DerivativeBundle eval_derivatives(const HylleraasTerm& term, double R, const HylleraasPoint& p,
                                  Cutoff cutoff) {
#ifndef NDEBUG
  if (!in_domain(R, p)) throw DomainError("eval_derivatives: point outside the Hylleraas domain");
#endif
  // The term factorizes as a(r_e) b(r_n) g(r).
  const RadialFactor a = radial_factor(p.r_e, term.n, term.alpha, R, cutoff);
  const RadialFactor b = radial_factor(p.r_n, term.m, term.beta, R, cutoff);
  const RadialFactor g = radial_factor(p.r, term.l, term.gamma, R, Cutoff::None);

  DerivativeBundle d;
  d.value = a.f * b.f * g.f;
  d.d_e = a.df * b.f * g.f;
  d.d_n = a.f * b.df * g.f;
  d.d_r = a.f * b.f * g.df;
  d.d_ee = a.d2f * b.f * g.f;
  d.d_nn = a.f * b.d2f * g.f;
  d.d_rr = a.f * b.f * g.d2f;
  d.d_er = a.df * b.f * g.df;
  d.d_nr = a.f * b.df * g.df;
  return d;
}

DerivativeBundle eval_derivatives(const TrialState& state, const HylleraasPoint& p) {
  DerivativeBundle sum;
  for (std::size_t k = 0; k < state.basis.size(); ++k) {
    sum += eval_derivatives(state.basis[k], state.basis.R(), p, state.basis.cutoff()) *
           state.coeffs[static_cast<Eigen::Index>(k)];
  }
  return sum;
}

namespace {

void require_nonzero_r(const HylleraasPoint& p) {
  if (!(p.r > 0.0) || !(p.r_e > 0.0) || !(p.r_n > 0.0)) {
    throw DomainError("Hamiltonian is singular at r = 0, r_e = 0 or r_n = 0");
  }
}

}  // namespace

HamiltonianParts hamiltonian_parts(const DerivativeBundle& d, const ModelParams& params,
                                   const HylleraasPoint& p) {
  require_nonzero_r(p);
  const double re = p.r_e, rn = p.r_n, r = p.r;
  const double lap_r = d.d_rr + 2.0 / r * d.d_r;
  const double e_group = d.d_ee + 2.0 / re * d.d_e + (re * re - rn * rn + r * r) / (re * r) * d.d_er;
  const double n_group = d.d_nn + 2.0 / rn * d.d_n + (rn * rn - re * re + r * r) / (rn * r) * d.d_nr;
  const double inv_mn = 1.0 / params.nuclear_mass();
  return {-0.5 * (e_group + lap_r), -0.5 * inv_mn * (n_group + lap_r), -d.value / r};
}

double apply_hamiltonian(const DerivativeBundle& d, const ModelParams& params,
                         const HylleraasPoint& p) {
  require_nonzero_r(p);
  const double re = p.r_e, rn = p.r_n, r = p.r;
  const double m_n = params.nuclear_mass();
  const double e_group = d.d_ee + 2.0 / re * d.d_e + (re * re - rn * rn + r * r) / (re * r) * d.d_er;
  const double n_group = d.d_nn + 2.0 / rn * d.d_n + (rn * rn - re * re + r * r) / (rn * r) * d.d_nr;
  const double rel_group = d.d_rr + 2.0 / r * d.d_r;
  return -0.5 * e_group - 0.5 / m_n * n_group - (m_n + 1.0) / (2.0 * m_n) * rel_group -
         d.value / r;
}

double apply_hamiltonian(const HylleraasTerm& term, const ModelParams& params,
                         const HylleraasPoint& p, Cutoff cutoff) {
  return apply_hamiltonian(eval_derivatives(term, params.R(), p, cutoff), params, p);
}

double apply_hamiltonian(const TrialState& state, const ModelParams& params,
                         const HylleraasPoint& p) {
  return apply_hamiltonian(eval_derivatives(state, p), params, p);
}

PresetKind parse_preset_kind(std::string_view name) {
  if (name == "simple") return PresetKind::Simple;
  if (name == "four-term") return PresetKind::FourTerm;
  if (name == "cnc-style") return PresetKind::CncStyle;
  if (name == "custom") return PresetKind::Custom;
  throw InvalidArgument("unknown basis preset '" + std::string(name) + "'");
}

std::string_view to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::Simple: return "simple";
    case PresetKind::FourTerm: return "four-term";
    case PresetKind::CncStyle: return "cnc-style";
    case PresetKind::Custom: return "custom";
  }
  return "unknown";
}

HylleraasBasis preset_basis(PresetKind kind, double R, const Exponents& e, int max_power,
                            const std::vector<HylleraasTerm>& custom_terms) {
  switch (kind) {
    case PresetKind::Simple:
      return HylleraasBasis({{0, 0, 0, 0.0, 0.0, e.gamma}}, R);
    case PresetKind::FourTerm:
      // Coefficient order (1, r, r_n, r_e).
      return HylleraasBasis({{0, 0, 0, e.alpha, e.beta, e.gamma},
                             {0, 0, 1, e.alpha, e.beta, e.gamma},
                             {0, 1, 0, e.alpha, e.beta, e.gamma},
                             {1, 0, 0, e.alpha, e.beta, e.gamma}},
                            R);
    case PresetKind::CncStyle: {
      if (max_power < 0) throw InvalidArgument("cnc-style preset needs max_power >= 0");
      std::vector<HylleraasTerm> terms;
      for (int j = 0; j <= max_power; ++j) terms.push_back({0, 0, j, e.alpha, e.beta, e.gamma});
      return HylleraasBasis(std::move(terms), R);
    }
    case PresetKind::Custom:
      return HylleraasBasis(custom_terms, R);
  }
  throw InvalidArgument("unknown basis preset");
}

}  // namespace chbox
