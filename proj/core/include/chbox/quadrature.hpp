#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace chbox {

/// Gauss–Legendre nodes (ascending) and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Node counts for the correlated three-body integrator.
struct QuadratureSpec {
  int n_outer = 40;  ///< per outer variable (r_e, and r_n on each side of r_n = r_e)
  int n_inner = 40;  ///< for the r integral over [|r_e - r_n|, r_e + r_n]

  void validate() const;
};

QuadratureRule gauss_legendre(std::size_t n);

/// ∫₀ᴿ f(r) r² dr with an n-point rule mapped onto [0, R].
double integrate_radial(const std::function<double(double)>& f, double R, std::size_t n);

/// One node of the Hylleraas product grid. `weight` already contains the
/// volume element r_e r_n r (the constant 8π² is never applied).
struct HylleraasNode {
  double r_e;
  double r_n;
  double r;
  double weight;
};

/// Tensor-product grid over 0 < r_e, r_n < R, |r_e - r_n| < r < r_e + r_n.
/// The r_n range is split at r_n = r_e so every panel sees a smooth integrand.
std::vector<HylleraasNode> hylleraas_grid(double R, const QuadratureSpec& spec);

/// ∫∫∫ f(r_e, r_n, r) r_e r_n r dr dr_n dr_e over the box domain.
double integrate_hylleraas(const std::function<double(double, double, double)>& f, double R,
                           const QuadratureSpec& spec);

/// Nodes/weights of `rule` mapped onto [a, b]; weights include (b - a)/2.
void map_rule(const QuadratureRule& rule, double a, double b, std::vector<double>& x,
              std::vector<double>& w);

}  // namespace chbox
