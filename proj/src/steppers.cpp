#include "hyprelax/steppers.hpp"

#include <stdexcept>

namespace hyprelax {

std::string to_string(Stepper s) {
  switch (s) {
    case Stepper::SSPRK33: return "ssprk33";
    case Stepper::RK4: return "rk4";
    case Stepper::IMEX: return "imex";
  }
  throw std::runtime_error("to_string: bad Stepper");
}

Stepper stepper_from_string(const std::string& name) {
  if (name == "ssprk33") return Stepper::SSPRK33;
  if (name == "rk4") return Stepper::RK4;
  if (name == "imex") return Stepper::IMEX;
  throw std::runtime_error("unknown stepper: " + name);
}

namespace {

State axpy(const State& y, double alpha, const State& x) {
  State out = y;
  for (std::size_t c = 0; c < out.components.size(); ++c)
    for (std::size_t i = 0; i < out.components[c].size(); ++i)
      out.components[c][i] += alpha * x.components[c][i];
  return out;
}

State blend(double a, const State& x, double b, const State& y) {
  State out = x;
  for (std::size_t c = 0; c < out.components.size(); ++c)
    for (std::size_t i = 0; i < out.components[c].size(); ++i)
      out.components[c][i] =
          a * x.components[c][i] + b * y.components[c][i];
  return out;
}

}  // namespace

State step_ssprk33(const RhsFn& rhs, const State& s, double dt) {
  const State u1 = axpy(s, dt, rhs(s));
  const State u2 = blend(0.75, s, 0.25, axpy(u1, dt, rhs(u1)));
  return blend(1.0 / 3.0, s, 2.0 / 3.0, axpy(u2, dt, rhs(u2)));
}

State step_rk4(const RhsFn& rhs, const State& s, double dt) {
  const State k1 = rhs(s);
  const State k2 = rhs(axpy(s, 0.5 * dt, k1));
  const State k3 = rhs(axpy(s, 0.5 * dt, k2));
  const State k4 = rhs(axpy(s, dt, k3));
  State out = s;
  for (std::size_t c = 0; c < out.components.size(); ++c)
    for (std::size_t i = 0; i < out.components[c].size(); ++i)
      out.components[c][i] +=
          dt / 6.0 *
          (k1.components[c][i] + 2.0 * k2.components[c][i] +
           2.0 * k3.components[c][i] + k4.components[c][i]);
  return out;
}

State step_imex_ars343(const RhsFn& explicit_rhs, const Field& symbol,
                       const Fft& fft, const State& s, double dt) {
  // Ascher-Ruuth-Spiteri (3,4,3): three implicit stages, four explicit
  // stages, third order, stiffly accurate.
  constexpr double g = 0.4358665215084590;  // gamma
  constexpr double ae21 = g;
  constexpr double ae31 = 0.3212788860286278, ae32 = 0.3966543747256017;
  constexpr double ae41 = -0.1058582960718797, ae42 = 0.5529291480359398,
                   ae43 = 0.5529291480359398;
  constexpr double b2 = 1.2084966491760101, b3 = -0.6443631706844691,
                   b4 = g;
  constexpr double ai32 = 0.2820667392457705;

  const std::size_t n = symbol.size();
  const Field yhat = fft.forward(s.components[0]);

  auto fe_hat = [&](const State& u) {
    return fft.forward(explicit_rhs(u).components[0]);
  };
  auto to_state = [&](const Field& uhat) {
    State u = s;
    u.components[0] = fft.inverse(uhat);
    return u;
  };
  auto implicit_stage = [&](const Field& rhshat, double aii) {
    Field uhat(n);
    for (std::size_t i = 0; i < n; ++i)
      uhat[i] = rhshat[i] / (1.0 - dt * aii * symbol[i]);
    return uhat;
  };

  const Field fe1 = fe_hat(s);

  Field r2(n);
  for (std::size_t i = 0; i < n; ++i) r2[i] = yhat[i] + dt * ae21 * fe1[i];
  const Field u2 = implicit_stage(r2, g);
  const Field fe2 = fe_hat(to_state(u2));

  Field r3(n);
  for (std::size_t i = 0; i < n; ++i)
    r3[i] = yhat[i] + dt * (ae31 * fe1[i] + ae32 * fe2[i]) +
            dt * ai32 * symbol[i] * u2[i];
  const Field u3 = implicit_stage(r3, g);
  const Field fe3 = fe_hat(to_state(u3));

  Field r4(n);
  for (std::size_t i = 0; i < n; ++i)
    r4[i] = yhat[i] +
            dt * (ae41 * fe1[i] + ae42 * fe2[i] + ae43 * fe3[i]) +
            dt * symbol[i] * (b2 * u2[i] + b3 * u3[i]);
  const Field u4 = implicit_stage(r4, g);
  const Field fe4 = fe_hat(to_state(u4));

  Field out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = yhat[i] + dt * (b2 * fe2[i] + b3 * fe3[i] + b4 * fe4[i]) +
             dt * symbol[i] * (b2 * u2[i] + b3 * u3[i] + b4 * u4[i]);
  return to_state(out);
}

}  // namespace hyprelax
