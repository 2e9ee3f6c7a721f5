#include "chbox/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "chbox/errors.hpp"

namespace chbox {

void QuadratureSpec::validate() const {
  if (n_outer < 2 || n_inner < 2) {
    throw InvalidArgument("quadrature node counts must be >= 2");
  }
}

namespace {

struct LegendreValue {
  double p;   // P_n(x)
  double dp;  // P_n'(x)
};

LegendreValue legendre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_legendre: n must be >= 1");

  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 2.0;
    return rule;
  }

  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    // Initial guess for the i-th largest root, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double dp = legendre(n, x).dp;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    const double dp = legendre(n, 0.0).dp;
    rule.weights[n / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

void map_rule(const QuadratureRule& rule, double a, double b, std::vector<double>& x,
              std::vector<double>& w) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  x.resize(rule.size());
  w.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    x[i] = mid + half * rule.nodes[i];
    w[i] = half * rule.weights[i];
  }
}

double integrate_radial(const std::function<double(double)>& f, double R, std::size_t n) {
  if (!(R > 0.0)) throw InvalidArgument("integrate_radial: R must be positive");
  std::vector<double> x, w;
  map_rule(gauss_legendre(n), 0.0, R, x, w);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * x[i] * x[i] * f(x[i]);
  return sum;
}

std::vector<HylleraasNode> hylleraas_grid(double R, const QuadratureSpec& spec) {
  if (!(R > 0.0)) throw InvalidArgument("hylleraas_grid: R must be positive");
  spec.validate();

  const QuadratureRule outer = gauss_legendre(static_cast<std::size_t>(spec.n_outer));
  const QuadratureRule inner = gauss_legendre(static_cast<std::size_t>(spec.n_inner));

  std::vector<double> xe, we, xn, wn, xr, wr;
  map_rule(outer, 0.0, R, xe, we);

  std::vector<HylleraasNode> grid;
  grid.reserve(2 * outer.size() * outer.size() * inner.size());
  for (std::size_t i = 0; i < xe.size(); ++i) {
    const double re = xe[i];
    for (int side = 0; side < 2; ++side) {
      if (side == 0) {
        map_rule(outer, 0.0, re, xn, wn);
      } else {
        map_rule(outer, re, R, xn, wn);
      }
      for (std::size_t j = 0; j < xn.size(); ++j) {
        const double rn = xn[j];
        map_rule(inner, std::abs(re - rn), re + rn, xr, wr);
        const double outer_w = we[i] * wn[j] * re * rn;
        for (std::size_t k = 0; k < xr.size(); ++k) {
          grid.push_back({re, rn, xr[k], outer_w * wr[k] * xr[k]});
        }
      }
    }
  }
  return grid;
}

double integrate_hylleraas(const std::function<double(double, double, double)>& f, double R,
                           const QuadratureSpec& spec) {
  double sum = 0.0;
  for (const auto& node : hylleraas_grid(R, spec)) {
    sum += node.weight * f(node.r_e, node.r_n, node.r);
  }
  return sum;
}

}  // namespace chbox
