#include "chbox/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "chbox/errors.hpp"

namespace chbox {

void OptimizerConfig::validate() const {
  if (max_iterations < 1) throw InvalidArgument("optimizer: max_iterations must be >= 1");
  if (!(f_tolerance > 0.0) || !(x_tolerance > 0.0) || !(relative_step > 0.0)) {
    throw InvalidArgument("optimizer: tolerances and step must be positive");
  }
  if (restarts < 0) throw InvalidArgument("optimizer: restarts must be >= 0");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vertex {
  std::vector<double> x;
  double f;
};

class Simplex {
public:
  Simplex(const Objective& f, int& evaluations) : f_(f), evaluations_(evaluations) {}

  double eval(const std::vector<double>& x) {
    ++evaluations_;
    const double v = f_(std::span<const double>(x));
    return std::isfinite(v) ? v : kInf;
  }

private:
  const Objective& f_;
  int& evaluations_;
};

std::vector<double> initial_steps(const std::vector<double>& x0, const OptimizerConfig& cfg) {
  if (!cfg.initial_step.empty()) {
    if (cfg.initial_step.size() != x0.size()) {
      throw InvalidArgument("optimizer: initial_step size does not match parameter count");
    }
    return cfg.initial_step;
  }
  std::vector<double> steps(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    steps[i] = x0[i] != 0.0 ? cfg.relative_step * std::abs(x0[i]) : 2.5e-4;
  }
  return steps;
}

// One Nelder–Mead run from x0; appends to result.trace.
void run_simplex(Simplex& sx, std::vector<double> x0, const std::vector<double>& steps,
                 const OptimizerConfig& cfg, MinimizeResult& result, int& iterations_left) {
  const std::size_t n = x0.size();
  std::vector<Vertex> v;
  v.reserve(n + 1);
  const double f0 = sx.eval(x0);
  if (!std::isfinite(f0)) throw OptimizerStalled("nelder_mead: objective not finite at start");
  v.push_back({x0, f0});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    x[i] += steps[i];
    double fx = sx.eval(x);
    if (!std::isfinite(fx)) {
      x[i] = x0[i] - steps[i];
      fx = sx.eval(x);
    }
    v.push_back({std::move(x), fx});
  }

  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  while (iterations_left > 0) {
    std::stable_sort(v.begin(), v.end(), by_value);

    // Convergence: function spread and simplex diameter both small.
    const double fscale = std::max(1.0, std::abs(v.front().f));
    double diameter = 0.0, xscale = 1.0;
    for (std::size_t i = 0; i < n; ++i) xscale = std::max(xscale, std::abs(v.front().x[i]));
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        diameter = std::max(diameter, std::abs(v[k].x[i] - v.front().x[i]));
    if (std::isfinite(v.back().f) && v.back().f - v.front().f <= cfg.f_tolerance * fscale &&
        diameter <= cfg.x_tolerance * xscale) {
      result.converged = true;
      break;
    }

    --iterations_left;
    ++result.iterations;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += v[k].x[i] / static_cast<double>(n);

    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (v.back().x[i] - centroid[i]);
      return x;
    };

    bool any_finite = false;
    auto tried = [&](double value) {
      any_finite = any_finite || std::isfinite(value);
      return value;
    };

    std::vector<double> xr = along(-kReflect);
    const double fr = tried(sx.eval(xr));
    if (fr < v.front().f) {
      std::vector<double> xe = along(-kExpand);
      const double fe = tried(sx.eval(xe));
      v.back() = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
    } else if (fr < v[n - 1].f) {
      v.back() = {std::move(xr), fr};
    } else {
      const bool outside = fr < v.back().f;
      std::vector<double> xc = along(outside ? -kContract * kReflect : kContract);
      const double fc = tried(sx.eval(xc));
      if (outside ? fc <= fr : fc < v.back().f) {
        v.back() = {std::move(xc), fc};
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t i = 0; i < n; ++i)
            v[k].x[i] = v.front().x[i] + kShrink * (v[k].x[i] - v.front().x[i]);
          v[k].f = tried(sx.eval(v[k].x));
        }
      }
    }
    if (!any_finite) {
      throw OptimizerStalled("nelder_mead: objective non-finite at every trial point of iteration " +
                             std::to_string(result.iterations));
    }

    const auto best = std::min_element(v.begin(), v.end(), by_value);
    if (best->f < result.f) {
      result.f = best->f;
      result.x = best->x;
    }
    result.trace.push_back(result.f);
  }

  const auto best = std::min_element(v.begin(), v.end(), by_value);
  if (best->f < result.f || result.x.empty()) {
    result.f = best->f;
    result.x = best->x;
  }
}

}  // namespace

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  cfg.validate();
  if (x0.empty()) throw InvalidArgument("nelder_mead: empty parameter vector");

  MinimizeResult result;
  result.f = kInf;
  Simplex sx(f, result.evaluations);
  int iterations_left = cfg.max_iterations;

  run_simplex(sx, x0, initial_steps(x0, cfg), cfg, result, iterations_left);
  for (int r = 0; r < cfg.restarts && iterations_left > 0; ++r) {
    result.converged = false;
    const std::vector<double> start = result.x;
    run_simplex(sx, start, initial_steps(start, cfg), cfg, result, iterations_left);
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

HylleraasBasis make_basis(double R, const Exponents& e, const MncOptions& opts) {
  if (opts.preset == PresetKind::Custom) {
    throw InvalidArgument("MNC optimization needs a preset basis, not a custom one");
  }
  return preset_basis(opts.preset, R, e, opts.max_power);
}

// Parameter vector layout: simple -> (gamma); otherwise (beta, gamma[, alpha]).
Exponents unpack(std::span<const double> x, const MncSeed& seed, const MncOptions& opts) {
  if (opts.preset == PresetKind::Simple) return {0.0, 0.0, x[0]};
  return {opts.optimize_alpha ? x[2] : seed.alpha, x[0], x[1]};
}

bool admissible(const Exponents& e, const MncOptions& opts) {
  if (opts.preset == PresetKind::Simple) return e.gamma > 0.0;
  return e.beta > 0.0 && e.gamma > 0.0;
}

}  // namespace

double mnc_energy(double R, const Exponents& e, const MncOptions& opts) {
  const ModelParams params(R, opts.nuclear_mass);
  return solve_generalized(assemble(make_basis(R, e, opts), params, opts.quad)).eigenvalues[0];
}

MncResult solve_mnc_fixed(double R, const Exponents& e, const MncOptions& opts) {
  const ModelParams params(R, opts.nuclear_mass);
  const HylleraasBasis basis = make_basis(R, e, opts);
  const OperatorMatrices ops = assemble_operators(basis, params, opts.quad);
  const SpectralResult spec = solve_generalized({ops.H, ops.S});

  MncResult out;
  out.R = R;
  out.exponents = e;
  out.coeffs = spec.eigenvectors.col(0);
  out.obs = observables(ops, out.coeffs);
  return out;
}

MncResult optimize_mnc(double R, std::span<const MncSeed> seeds, const MncOptions& opts) {
  if (seeds.empty()) throw InvalidArgument("optimize_mnc: at least one seed is required");
  const ModelParams params(R, opts.nuclear_mass);
  const std::vector<HylleraasNode> grid = hylleraas_grid(R, opts.quad);

  std::vector<MncCandidate> candidates;
  std::vector<std::vector<double>> traces;
  for (const MncSeed& seed : seeds) {
    const bool with_alpha = opts.optimize_alpha && opts.preset != PresetKind::Simple;
    Objective objective = [&](std::span<const double> x) {
      const Exponents e = unpack(x, seed, opts);
      if (!admissible(e, opts)) return kInf;
      try {
        return solve_generalized(assemble(make_basis(R, e, opts), params, grid)).eigenvalues[0];
      } catch (const NumericalError&) {
        return kInf;
      }
    };
    std::vector<double> x0 = opts.preset == PresetKind::Simple
                                 ? std::vector<double>{seed.gamma}
                                 : std::vector<double>{seed.beta, seed.gamma};
    OptimizerConfig cfg = opts.optimizer;
    if (with_alpha) {
      x0.push_back(seed.alpha);
      // alpha usually starts at zero; give it a step on the scale of beta.
      if (cfg.initial_step.empty()) {
        cfg.initial_step = {cfg.relative_step * std::abs(seed.beta),
                            cfg.relative_step * std::abs(seed.gamma),
                            seed.alpha != 0.0 ? cfg.relative_step * std::abs(seed.alpha)
                                              : cfg.relative_step * std::abs(seed.gamma)};
      }
    }
    const MinimizeResult mr = nelder_mead(objective, x0, cfg);
    candidates.push_back({seed, unpack(mr.x, seed, opts), mr.f});
    traces.push_back(mr.trace);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (candidates[k].E < candidates[best].E) best = k;
  }

  MncResult out = solve_mnc_fixed(R, candidates[best].exponents, opts);
  out.candidates = std::move(candidates);
  out.trace = std::move(traces[best]);
  out.basin_differs = out.candidates.front().E - out.candidates[best].E > 1e-4;
  return out;
}

}  // namespace chbox
