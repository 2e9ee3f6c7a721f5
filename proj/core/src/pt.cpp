#include "chbox/pt.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "chbox/errors.hpp"
#include "chbox/quadrature.hpp"

namespace chbox {

namespace {

void check_order(int l) {
  if (l < 0 || l > kMaxBesselOrder) {
    throw InvalidArgument("spherical Bessel order " + std::to_string(l) + " outside [0, " +
                          std::to_string(kMaxBesselOrder) + "]");
  }
}

// Power series j_l(x) = x^l / (2l+1)!! * Σ_k (-x²/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1)).
double series(int l, double x) {
  double prefactor = 1.0;
  for (int k = 1; k <= l; ++k) prefactor *= x / (2.0 * k + 1.0);
  const double y = -0.5 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return prefactor * sum;
}

// Miller's downward recurrence, normalized against whichever of j_0, j_1 is larger.
double downward(int l, double x) {
  const int start = l + 20 + static_cast<int>(x);
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start)] = 1e-30;
  for (int k = start; k >= 1; --k) {
    const auto kk = static_cast<std::size_t>(k);
    j[kk - 1] = (2.0 * k + 1.0) / x * j[kk] - j[kk + 1];
    if (std::abs(j[kk - 1]) > 1e200) {
      for (auto& v : j) v *= 1e-200;
    }
  }
  const double true_j0 = std::sin(x) / x;
  const double true_j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double scale = std::abs(true_j0) >= std::abs(true_j1) ? true_j0 / j[0] : true_j1 / j[1];
  return j[static_cast<std::size_t>(l)] * scale;
}

}  // namespace

double spherical_bessel(int l, double x) {
  check_order(l);
  if (x < 0.0 || !std::isfinite(x)) throw InvalidArgument("spherical_bessel: x must be >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x < 1e-3 || (x < 0.5 * l && x < 6.0)) return series(l, x);

  const double j0 = std::sin(x) / x;
  if (l == 0) return j0;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (l == 1) return j1;
  if (x >= static_cast<double>(l)) {
    double jm = j0, jc = j1;
    for (int k = 1; k < l; ++k) {
      const double jn = (2.0 * k + 1.0) / x * jc - jm;
      jm = jc;
      jc = jn;
    }
    return jc;
  }
  return downward(l, x);
}

double bessel_zero(int l, int n) {
  check_order(l);
  if (n < 1) throw InvalidArgument("bessel_zero: n must be >= 1");
  if (l == 0) return n * std::numbers::pi;

  // Zeros of j_l interlace those of j_{l-1}: x_{l-1,n} < x_{l,n} < x_{l-1,n+1}.
  double lo = bessel_zero(l - 1, n);
  double hi = bessel_zero(l - 1, n + 1);
  double flo = spherical_bessel(l, lo);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fx = spherical_bessel(l, x);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    // Newton step with j_l' = j_{l-1} - (l+1)/x j_l, kept inside the bracket.
    const double dfx = spherical_bessel(l - 1, x) - (l + 1.0) / x * fx;
    double next = x - fx / dfx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * x || hi - lo <= 1e-15 * x) return next;
    x = next;
  }
  return x;
}

double BesselZeroTable::operator()(int l, int n) const {
  const auto key = std::make_pair(l, n);
  {
    std::shared_lock lock(mutex_);
    if (auto it = zeros_.find(key); it != zeros_.end()) return it->second;
  }
  const double value = bessel_zero(l, n);
  std::unique_lock lock(mutex_);
  zeros_.emplace(key, value);
  return value;
}

const BesselZeroTable& BesselZeroTable::global() {
  static const BesselZeroTable table;
  return table;
}

ZeroOrder zero_order(const ModelParams& params) {
  const double x = BesselZeroTable::global()(0, 1);
  const double R = params.R();
  const double te = x * x / (2.0 * R * R);
  const double tn = te / params.nuclear_mass();
  return {te + tn, te, tn};
}

double first_order_coulomb(double R, int nodes) {
  if (!(R > 0.0)) throw InvalidArgument("first_order_coulomb: R must be positive");
  if (nodes < 2) throw InvalidArgument("first_order_coulomb: need at least 2 nodes");

  // u(r)² = (2/R) sin²(πr/R); the monopole reduction leaves 1/max(r_e, r_n).
  // By symmetry, integrate the triangle r_e < r_n and double it.
  const double k = std::numbers::pi / R;
  auto density = [&](double r) {
    const double s = std::sin(k * r);
    return 2.0 / R * s * s;
  };
  const QuadratureRule rule = gauss_legendre(static_cast<std::size_t>(nodes));
  std::vector<double> xo, wo, xi, wi;
  map_rule(rule, 0.0, R, xo, wo);
  double sum = 0.0;
  for (std::size_t i = 0; i < xo.size(); ++i) {
    const double rn = xo[i];
    map_rule(rule, 0.0, rn, xi, wi);
    double inner = 0.0;
    for (std::size_t j = 0; j < xi.size(); ++j) inner += wi[j] * density(xi[j]);
    sum += wo[i] * density(rn) / rn * inner;
  }
  return -2.0 * sum;
}

PtResult pt_ground_state(const ModelParams& params, int nodes) {
  const ZeroOrder z = zero_order(params);
  PtResult out;
  out.R = params.R();
  out.T_e = z.T_e0;
  out.T_n = z.T_n0;
  out.T = z.E0;
  out.V = first_order_coulomb(params.R(), nodes);
  out.E = out.T + out.V;
  out.outside_validity = params.R() > 1.0;
  return out;
}

}  // namespace chbox
