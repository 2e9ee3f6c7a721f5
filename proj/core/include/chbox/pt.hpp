#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

#include "chbox/basis.hpp"

namespace chbox {

inline constexpr int kMaxBesselOrder = 10;

/// j_l(x) for 0 <= l <= 10, x >= 0.
double spherical_bessel(int l, double x);

/// n-th positive zero of j_l (n >= 1).
double bessel_zero(int l, int n);

/// Lazily filled cache of spherical Bessel zeros, safe for concurrent readers.
class BesselZeroTable {
public:
  double operator()(int l, int n) const;
  static const BesselZeroTable& global();

private:
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<int, int>, double> zeros_;
};

/// Both particles in the lowest box orbital j_0(π r / R).
struct ZeroOrder {
  double E0;
  double T_e0;
  double T_n0;
};

ZeroOrder zero_order(const ModelParams& params);

/// <ψ0| -1/|r_e - r_n| |ψ0> for the s⊗s ground product state.
double first_order_coulomb(double R, int nodes = 64);

struct PtResult {
  double R = 0.0;
  double E = 0.0;
  double T = 0.0;
  double T_e = 0.0;
  double T_n = 0.0;
  double V = 0.0;
  bool outside_validity = false;  ///< R > 1 bohr: weak-coupling side
};

PtResult pt_ground_state(const ModelParams& params, int nodes = 64);

}  // namespace chbox
