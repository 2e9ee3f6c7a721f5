#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace chbox {

/// Nuclear (proton) mass in electron masses.
inline constexpr double kProtonMass = 1836.15267261;

/// Physical configuration: box radius and nuclear mass, atomic units.
class ModelParams {
public:
  explicit ModelParams(double R, double nuclear_mass = kProtonMass);

  double R() const noexcept { return R_; }
  double nuclear_mass() const noexcept { return m_n_; }
  /// m_n / (m_n + 1)
  double reduced_mass() const noexcept { return m_reduced_; }

private:
  double R_;
  double m_n_;
  double m_reduced_;
};

/// r_e^n r_n^m r^l exp(-alpha r_e - beta r_n - gamma r), multiplied by the
/// wall factors (1 - r_e/R)(1 - r_n/R) when evaluated in a basis.
struct HylleraasTerm {
  int n = 0;
  int m = 0;
  int l = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  void validate() const;
  friend bool operator==(const HylleraasTerm&, const HylleraasTerm&) = default;
};

/// Whether the wall factors are applied. `None` exists for free-atom tests.
enum class Cutoff { Box, None };

/// A point in Hylleraas coordinates.
struct HylleraasPoint {
  double r_e;
  double r_n;
  double r;
};

/// Value plus every partial derivative the kinetic operator needs.
struct DerivativeBundle {
  double value = 0.0;
  double d_e = 0.0;
  double d_n = 0.0;
  double d_r = 0.0;
  double d_ee = 0.0;
  double d_nn = 0.0;
  double d_rr = 0.0;
  double d_er = 0.0;
  double d_nr = 0.0;

  DerivativeBundle& operator+=(const DerivativeBundle& o);
  DerivativeBundle operator*(double s) const;
};

/// f(x) = c(x) x^p exp(-a x) with c(x) = 1 - x/R (or 1), and its first two derivatives.
struct RadialFactor {
  double f;
  double df;
  double d2f;
};

RadialFactor radial_factor(double x, int power, double exponent, double R, Cutoff cutoff);

/// Same, with e^{-exponent x} supplied by the caller.
RadialFactor radial_factor(double x, int power, double exponent, double exp_factor, double R,
                           Cutoff cutoff);

class HylleraasBasis {
public:
  HylleraasBasis(std::vector<HylleraasTerm> terms, double R, Cutoff cutoff = Cutoff::Box);

  const std::vector<HylleraasTerm>& terms() const noexcept { return terms_; }
  double R() const noexcept { return R_; }
  Cutoff cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const HylleraasTerm& operator[](std::size_t i) const { return terms_[i]; }

  friend bool operator==(const HylleraasBasis&, const HylleraasBasis&) = default;

private:
  std::vector<HylleraasTerm> terms_;
  double R_;
  Cutoff cutoff_;
};

/// Linear combination of basis functions.
struct TrialState {
  HylleraasBasis basis;
  Eigen::VectorXd coeffs;

  void validate() const;
};

bool in_domain(double R, const HylleraasPoint& p);

double eval_term(const HylleraasTerm& term, double R, const HylleraasPoint& p,
                 Cutoff cutoff = Cutoff::Box);
DerivativeBundle eval_derivatives(const HylleraasTerm& term, double R, const HylleraasPoint& p,
                                  Cutoff cutoff = Cutoff::Box);
DerivativeBundle eval_derivatives(const TrialState& state, const HylleraasPoint& p);

/// (Tφ, T_eφ, T_nφ, Vφ) at one point. The r-Laplacian is shared between the
/// particles with weights 1/2 (electron) and 1/(2 m_n) (nucleus).
struct HamiltonianParts {
  double kinetic_e;
  double kinetic_n;
  double potential;

  double total() const noexcept { return kinetic_e + kinetic_n + potential; }
};

HamiltonianParts hamiltonian_parts(const DerivativeBundle& d, const ModelParams& params,
                                   const HylleraasPoint& p);

/// (Hφ)(p) assembled as electron group, nuclear group, relative group with
/// factor (m_n + 1)/(2 m_n), and the Coulomb term.
double apply_hamiltonian(const DerivativeBundle& d, const ModelParams& params,
                         const HylleraasPoint& p);
double apply_hamiltonian(const HylleraasTerm& term, const ModelParams& params,
                         const HylleraasPoint& p, Cutoff cutoff = Cutoff::Box);
double apply_hamiltonian(const TrialState& state, const ModelParams& params,
                         const HylleraasPoint& p);

// ---------------------------------------------------------------------------
// Presets

enum class PresetKind {
  Simple,      ///< exp(-gamma r)
  FourTerm,    ///< shared exponents, polynomial (1, r, r_n, r_e)
  CncStyle,    ///< shared exponents, powers r^0 .. r^N of the relative distance
  Custom,      ///< caller-supplied term list
};

struct Exponents {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

PresetKind parse_preset_kind(std::string_view name);
std::string_view to_string(PresetKind kind);

/// `max_power` is only used by CncStyle, `custom_terms` only by Custom.
HylleraasBasis preset_basis(PresetKind kind, double R, const Exponents& e, int max_power = 4,
                            const std::vector<HylleraasTerm>& custom_terms = {});

}  // namespace chbox
