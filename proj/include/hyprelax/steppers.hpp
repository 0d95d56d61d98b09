#pragma once

#include <functional>
#include <string>

#include "hyprelax/grid.hpp"

namespace hyprelax {

enum class Stepper { SSPRK33, RK4, IMEX };

std::string to_string(Stepper s);
Stepper stepper_from_string(const std::string& name);

using RhsFn = std::function<State(const State&)>;

/// Shu-Osher three-stage third-order SSP Runge-Kutta step.
State step_ssprk33(const RhsFn& rhs, const State& s, double dt);

/// Classical four-stage fourth-order Runge-Kutta step.
State step_rk4(const RhsFn& rhs, const State& s, double dt);

/// One step of the ARS(3,4,3) additive IMEX Runge-Kutta scheme for a
/// single-component equation u' = L u + N(u), where L is diagonal in
/// Fourier space with per-mode multiplier `symbol` and N is integrated
/// explicitly.  Each implicit stage is a per-mode scalar division.
State step_imex_ars343(const RhsFn& explicit_rhs, const Field& symbol,
                       const Fft& fft, const State& s, double dt);

}  // namespace hyprelax
