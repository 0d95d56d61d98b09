#include "hyprelax/solve.hpp"

#include <cmath>
#include <string>

namespace hyprelax {

namespace {

// Extent of the stability region along the imaginary axis; the automatic
// step size targets wave-dominated spectra.
double stability_extent(Stepper s) {
  switch (s) {
    case Stepper::SSPRK33: return 1.73;
    case Stepper::RK4: return 2.82;
    case Stepper::IMEX: return 1.73;  // explicit part of ARS(3,4,3)
  }
  return 1.0;
}

bool finite(const State& s) {
  for (const auto& comp : s.components)
    for (const auto& v : comp)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace

double auto_dt(const SolveConfig& config) {
  const double nu = 0.4;
  const double limit = stability_extent(config.stepper);
  const PeriodicGrid& grid = *config.grid;
  const double kmax = grid.k_max();
  const double umax = max_abs(config.u0);
  const double tau = config.model.tau;

  if (config.hyperbolized) {
    // fastest characteristic: sqrt(1/tau) for m=2 (the cycle through the
    // q_0 row), but 1/tau for m>=3 where permutation cycles live entirely
    // in the tau-scaled block; add the advective estimate and source-term
    // eigenvalues of magnitude 1/tau
    const double s_wave =
        model_order(config.model) == 2 ? std::sqrt(1.0 / tau) : 1.0 / tau;
    const double s_max = s_wave + 3.0 * umax;
    return nu * limit / (kmax * s_max + 1.0 / tau);
  }
  if (config.stepper == Stepper::IMEX)
    return nu * grid.dx() / std::max(1.0, 3.0 * umax);
  if (config.model.kind == ModelKind::CamassaHolm) {
    // Helmholtz inversion tames the third derivative, leaving an
    // effectively advective operator of speed ~4|u|
    return nu * limit / (kmax * (1.0 + 4.0 * std::max(1.0, umax)));
  }
  // explicit original: bound the full spatial symbol over the grid
  RhsEvaluator eval(config.model, false, config.grid, config.dealias);
  const Field sym = eval.implicit_symbol();
  double lam = 0.0;
  for (const auto& v : sym) lam = std::max(lam, std::abs(v));
  if (!model_is_linear(config.model.kind)) lam += kmax * umax;
  return nu * limit / std::max(lam, 1e-300);
}

SolveResult solve(const SolveConfig& config) {
  if (!config.grid) throw SolveError("solve: missing grid");
  const PeriodicGrid& grid = *config.grid;
  if (config.u0.size() != grid.n)
    throw SolveError("solve: initial condition size mismatch");
  if (!(config.t_final > 0.0)) throw SolveError("solve: t_final must be > 0");
  std::vector<double> targets = config.snapshot_times;
  if (targets.empty()) targets = {config.t_final};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0.0 || targets[i] > config.t_final)
      throw SolveError("solve: snapshot time outside [0, t_final]");
    if (i > 0 && targets[i] <= targets[i - 1])
      throw SolveError("solve: snapshot times must be strictly increasing");
  }
  if (config.hyperbolized && config.stepper == Stepper::IMEX)
    throw SolveError("solve: IMEX supports only original models");

  RhsEvaluator eval(config.model, config.hyperbolized, config.grid,
                    config.dealias);
  const std::size_t m = eval.components();
  const bool is_real = model_is_real(config.model.kind) &&
                       max_abs_imag(config.u0) <= 1e-12 * std::max(1.0, max_abs(config.u0));
  State state = config.hyperbolized
                    ? init_state(config.grid, eval.fft(), config.u0, m, is_real)
                    : State{config.grid, {config.u0}, is_real};

  const double dt = config.dt > 0.0 ? config.dt : auto_dt(config);
  const RhsFn rhs = [&eval](const State& s) { return eval(s); };
  const RhsFn erhs = [&eval](const State& s) { return eval.explicit_rhs(s); };
  Field symbol;
  if (config.stepper == Stepper::IMEX) symbol = eval.implicit_symbol();

  SolveResult result;
  result.dt_used = dt;
  double t = 0.0;
  std::size_t target_i = 0;
  if (targets[0] == 0.0) {
    result.snapshots.push_back({0.0, state});
    ++target_i;
  }
  for (; target_i < targets.size(); ++target_i) {
    const double seg = targets[target_i] - t;
    const std::size_t nsteps =
        std::max<std::size_t>(1, std::size_t(std::ceil(seg / dt - 1e-12)));
    const double h = seg / double(nsteps);
    for (std::size_t step = 0; step < nsteps; ++step) {
      switch (config.stepper) {
        case Stepper::SSPRK33:
          state = step_ssprk33(rhs, state, h);
          break;
        case Stepper::RK4:
          state = step_rk4(rhs, state, h);
          break;
        case Stepper::IMEX:
          state = step_imex_ars343(erhs, symbol, eval.fft(), state, h);
          break;
      }
      t += h;
      if (!finite(state))
        throw SolveError("solve: non-finite value at t = " +
                         std::to_string(t));
    }
    t = targets[target_i];
    result.snapshots.push_back({t, state});
  }
  return result;
}

}  // namespace hyprelax
