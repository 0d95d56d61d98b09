#include "hyprelax/models.hpp"

#include <cmath>

namespace hyprelax {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Heat: return "heat";
    case ModelKind::LinearKdV: return "linear-kdv";
    case ModelKind::KdV: return "kdv";
    case ModelKind::NLS: return "nls";
    case ModelKind::CamassaHolm: return "camassa-holm";
    case ModelKind::KuramotoSivashinsky: return "kuramoto-sivashinsky";
    case ModelKind::GeneralLinear: return "general-linear";
  }
  throw ModelError("to_string: bad ModelKind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "heat") return ModelKind::Heat;
  if (name == "linear-kdv") return ModelKind::LinearKdV;
  if (name == "kdv") return ModelKind::KdV;
  if (name == "nls") return ModelKind::NLS;
  if (name == "camassa-holm" || name == "ch") return ModelKind::CamassaHolm;
  if (name == "kuramoto-sivashinsky" || name == "ks")
    return ModelKind::KuramotoSivashinsky;
  if (name == "general-linear" || name == "linear")
    return ModelKind::GeneralLinear;
  throw ModelError("unknown model kind: " + name);
}

std::size_t model_order(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::Heat: return 2;
    case ModelKind::LinearKdV: return 3;
    case ModelKind::KdV: return 3;
    case ModelKind::NLS: return 2;
    case ModelKind::CamassaHolm: return 3;
    case ModelKind::KuramotoSivashinsky: return 4;
    case ModelKind::GeneralLinear:
      if (!spec.linear) throw ModelError("GeneralLinear needs a LinearModel");
      return spec.linear->m;
  }
  throw ModelError("model_order: bad ModelKind");
}

bool model_is_real(ModelKind kind) { return kind != ModelKind::NLS; }

bool model_is_linear(ModelKind kind) {
  return kind == ModelKind::Heat || kind == ModelKind::LinearKdV ||
         kind == ModelKind::GeneralLinear;
}

LinearModel linear_model_of(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::Heat: return LinearModel(2, -1);
    case ModelKind::LinearKdV: return LinearModel(3, 1);
    case ModelKind::GeneralLinear:
      if (!spec.linear) throw ModelError("GeneralLinear needs a LinearModel");
      return *spec.linear;
    default:
      throw ModelError("linear_model_of: " + to_string(spec.kind) +
                       " is not linear");
  }
}

RhsEvaluator::RhsEvaluator(ModelSpec spec, bool hyperbolized,
                           std::shared_ptr<const PeriodicGrid> grid,
                           bool dealias)
    : spec_(std::move(spec)),
      hyperbolized_(hyperbolized),
      grid_(std::move(grid)),
      dealias_(dealias),
      fft_(grid_->n) {
  if (spec_.tau <= 0.0) throw ModelError("RhsEvaluator: tau must be positive");
  if (hyperbolized_ && model_is_linear(spec_.kind)) {
    const LinearModel lm = linear_model_of(spec_);
    system_ = assemble_system(lm, stable_permutation(lm.m, lm.sigma0),
                              spec_.tau);
  }
}

std::size_t RhsEvaluator::components() const {
  return hyperbolized_ ? model_order(spec_) : 1;
}

Field RhsEvaluator::product(const Field& a, const Field& b) const {
  const std::size_t n = a.size();
  Field p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = a[i] * b[i];
  if (dealias_) {
    Field phat = fft_.forward(p);
    dealias_spectrum(*grid_, phat);
    p = fft_.inverse(phat);
  }
  return p;
}

namespace {

void axpy(Field& y, cd alpha, const Field& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

State RhsEvaluator::linear_hyperbolized_rhs(const State& s) const {
  const HyperbolicSystem& sys = *system_;
  const std::size_t m = sys.model.m;
  const std::size_t n = grid_->n;
  std::vector<Field> dxq(m);
  for (std::size_t j = 0; j < m; ++j) dxq[j] = dx(s.components[j]);
  State out;
  out.grid = s.grid;
  out.is_real = s.is_real;
  out.components.assign(m, Field(n));
  for (std::size_t i = 0; i < m; ++i) {
    Field& row = out.components[i];
    for (std::size_t c = 0; c < m; ++c) {
      if (sys.a(i, c) != 0.0) axpy(row, -sys.a(i, c), dxq[c]);
      if (sys.b(i, c) != 0.0) axpy(row, sys.b(i, c), s.components[c]);
    }
    if (i > 0)
      for (auto& v : row) v /= spec_.tau;
  }
  return out;
}

State RhsEvaluator::operator()(const State& s) const {
  if (s.components.size() != components())
    throw ModelError("rhs: component count mismatch");
  const std::size_t n = grid_->n;
  const double tau = spec_.tau;
  State out;
  out.grid = s.grid;
  out.is_real = s.is_real;

  if (hyperbolized_) {
    if (model_is_linear(spec_.kind)) return linear_hyperbolized_rhs(s);
    switch (spec_.kind) {
      case ModelKind::KdV: {
        const Field &q0 = s.components[0], &q1 = s.components[1],
                    &q2 = s.components[2];
        Field r0 = dx(product(q0, q0));
        const Field dxq2 = dx(q2);
        for (std::size_t i = 0; i < n; ++i) r0[i] = -0.5 * r0[i] - dxq2[i];
        Field r1 = dx(q1);
        for (std::size_t i = 0; i < n; ++i) r1[i] = (r1[i] - q2[i]) / tau;
        Field r2 = dx(q0);
        for (std::size_t i = 0; i < n; ++i) r2[i] = -(r2[i] - q1[i]) / tau;
        out.components = {std::move(r0), std::move(r1), std::move(r2)};
        return out;
      }
      case ModelKind::NLS: {
        const Field &q0 = s.components[0], &q1 = s.components[1];
        const cd I{0.0, 1.0};
        Field mod2(n);
        for (std::size_t i = 0; i < n; ++i) mod2[i] = std::norm(q0[i]);
        const Field cubic = product(mod2, q0);
        Field r0 = dx(q1);
        for (std::size_t i = 0; i < n; ++i)
          r0[i] = I * r0[i] + I * spec_.kappa * cubic[i];
        Field r1 = dx(q0);
        for (std::size_t i = 0; i < n; ++i)
          r1[i] = -I / tau * (r1[i] - q1[i]);
        out.components = {std::move(r0), std::move(r1)};
        return out;
      }
      case ModelKind::CamassaHolm: {
        const Field &q0 = s.components[0], &q1 = s.components[1],
                    &q2 = s.components[2];
        const Field dxq0 = dx(q0), dxq1 = dx(q1), dxq2 = dx(q2);
        const Field t1 = product(q0, dxq0);
        const Field t2 = product(q2, dxq0);
        const Field t3 = product(q0, dxq2);
        Field r0(n), r1(n), r2(n);
        for (std::size_t i = 0; i < n; ++i) {
          r0[i] = -3.0 * t1[i] + 2.0 * t2[i] + t3[i] +
                  (dxq0[i] - q1[i]) / tau;
          r1[i] = -(dxq1[i] - q2[i]) / tau;
          r2[i] = (dxq0[i] - q1[i]) / tau;
        }
        out.components = {std::move(r0), std::move(r1), std::move(r2)};
        return out;
      }
      case ModelKind::KuramotoSivashinsky: {
        const Field &q0 = s.components[0], &q1 = s.components[1],
                    &q2 = s.components[2], &q3 = s.components[3];
        const Field dxq0 = dx(q0), dxq1 = dx(q1), dxq2 = dx(q2),
                    dxq3 = dx(q3);
        Field sq = dx(product(q0, q0));
        Field r0(n), r1(n), r2(n), r3(n);
        for (std::size_t i = 0; i < n; ++i) {
          r0[i] = -dxq1[i] - dxq3[i] - 0.5 * sq[i];
          r1[i] = (dxq2[i] - q3[i]) / tau;
          r2[i] = (dxq1[i] - q2[i]) / tau;
          r3[i] = -(dxq0[i] - q1[i]) / tau;
        }
        out.components = {std::move(r0), std::move(r1), std::move(r2),
                          std::move(r3)};
        return out;
      }
      default:
        throw ModelError("rhs: unhandled hyperbolized model");
    }
  }

  // original PDEs, single component u
  const Field& u = s.components[0];
  switch (spec_.kind) {
    case ModelKind::Heat:
      out.components = {spectral_derivative(*grid_, fft_, u, 2)};
      return out;
    case ModelKind::LinearKdV: {
      Field r = spectral_derivative(*grid_, fft_, u, 3);
      for (auto& v : r) v = -v;
      out.components = {std::move(r)};
      return out;
    }
    case ModelKind::GeneralLinear: {
      Field uhat = fft_.forward(u);
      const Field sym = implicit_symbol();
      for (std::size_t i = 0; i < n; ++i) uhat[i] *= sym[i];
      out.components = {fft_.inverse(uhat)};
      return out;
    }
    case ModelKind::KdV: {
      Field r = spectral_derivative(*grid_, fft_, u, 3);
      const Field adv = dx(product(u, u));
      for (std::size_t i = 0; i < n; ++i) r[i] = -r[i] - 0.5 * adv[i];
      out.components = {std::move(r)};
      return out;
    }
    case ModelKind::NLS: {
      const cd I{0.0, 1.0};
      Field r = spectral_derivative(*grid_, fft_, u, 2);
      Field mod2(n);
      for (std::size_t i = 0; i < n; ++i) mod2[i] = std::norm(u[i]);
      const Field cubic = product(mod2, u);
      for (std::size_t i = 0; i < n; ++i)
        r[i] = I * r[i] + I * spec_.kappa * cubic[i];
      out.components = {std::move(r)};
      return out;
    }
    case ModelKind::CamassaHolm: {
      const Field ux = dx(u);
      const Field uxx = spectral_derivative(*grid_, fft_, u, 2);
      const Field uxxx = spectral_derivative(*grid_, fft_, u, 3);
      const Field t1 = product(u, ux), t2 = product(ux, uxx),
                  t3 = product(u, uxxx);
      Field nterm(n);
      for (std::size_t i = 0; i < n; ++i)
        nterm[i] = 3.0 * t1[i] - 2.0 * t2[i] - t3[i];
      // (1 - dx^2)^{-1} applied spectrally: divide by 1 + k^2
      Field nhat = fft_.forward(nterm);
      for (std::size_t i = 0; i < n; ++i) {
        const double k = grid_->wavenumbers[i];
        nhat[i] /= -(1.0 + k * k);
      }
      out.components = {fft_.inverse(nhat)};
      return out;
    }
    case ModelKind::KuramotoSivashinsky: {
      const Field u2 = spectral_derivative(*grid_, fft_, u, 2);
      const Field u4 = spectral_derivative(*grid_, fft_, u, 4);
      const Field adv = dx(product(u, u));
      Field r(n);
      for (std::size_t i = 0; i < n; ++i)
        r[i] = -u2[i] - u4[i] - 0.5 * adv[i];
      out.components = {std::move(r)};
      return out;
    }
  }
  throw ModelError("rhs: bad ModelKind");
}

Field RhsEvaluator::implicit_symbol() const {
  if (hyperbolized_)
    throw ModelError("implicit_symbol: only original models split");
  const std::size_t n = grid_->n;
  // powers of ik with the Nyquist mode zeroed at odd orders
  auto ik_pow = [&](std::size_t i, unsigned order) -> cd {
    if (order % 2 == 1 && i == n / 2) return cd{};
    cd f{1.0};
    const cd ik{0.0, grid_->wavenumbers[i]};
    for (unsigned p = 0; p < order; ++p) f *= ik;
    return f;
  };
  Field sym(n);
  switch (spec_.kind) {
    case ModelKind::Heat:
      for (std::size_t i = 0; i < n; ++i) sym[i] = ik_pow(i, 2);
      return sym;
    case ModelKind::LinearKdV:
    case ModelKind::KdV:
      for (std::size_t i = 0; i < n; ++i) sym[i] = -ik_pow(i, 3);
      return sym;
    case ModelKind::NLS: {
      const cd I{0.0, 1.0};
      for (std::size_t i = 0; i < n; ++i) sym[i] = I * ik_pow(i, 2);
      return sym;
    }
    case ModelKind::KuramotoSivashinsky:
      for (std::size_t i = 0; i < n; ++i)
        sym[i] = -ik_pow(i, 2) - ik_pow(i, 4);
      return sym;
    case ModelKind::GeneralLinear: {
      const LinearModel lm = linear_model_of(spec_);
      for (std::size_t i = 0; i < n; ++i) {
        cd s{};
        for (std::size_t j = 0; j < lm.m; ++j)
          if (lm.alpha_at(j) != 0.0) s += lm.alpha_at(j) * ik_pow(i, unsigned(j));
        s += double(lm.sigma0) * ik_pow(i, unsigned(lm.m));
        sym[i] = -s;
      }
      return sym;
    }
    case ModelKind::CamassaHolm:
      // no stiff diagonal part is split off; the model runs fully explicit
      return sym;
  }
  throw ModelError("implicit_symbol: bad ModelKind");
}

State RhsEvaluator::explicit_rhs(const State& s) const {
  if (hyperbolized_)
    throw ModelError("explicit_rhs: only original models split");
  const std::size_t n = grid_->n;
  const Field& u = s.components[0];
  State out;
  out.grid = s.grid;
  out.is_real = s.is_real;
  switch (spec_.kind) {
    case ModelKind::Heat:
    case ModelKind::LinearKdV:
    case ModelKind::GeneralLinear:
      out.components = {Field(n)};
      return out;
    case ModelKind::KdV:
    case ModelKind::KuramotoSivashinsky: {
      Field adv = dx(product(u, u));
      for (auto& v : adv) v *= -0.5;
      out.components = {std::move(adv)};
      return out;
    }
    case ModelKind::NLS: {
      const cd I{0.0, 1.0};
      Field mod2(n);
      for (std::size_t i = 0; i < n; ++i) mod2[i] = std::norm(u[i]);
      Field cubic = product(mod2, u);
      for (auto& v : cubic) v *= I * spec_.kappa;
      out.components = {std::move(cubic)};
      return out;
    }
    case ModelKind::CamassaHolm:
      return (*this)(s);
  }
  throw ModelError("explicit_rhs: bad ModelKind");
}

Field exact_linear_solution(const PeriodicGrid& grid, const Fft& fft,
                            const LinearModel& model, const Field& u0,
                            double t) {
  Field uhat = fft.forward(u0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const cd ik{0.0, grid.wavenumbers[i]};
    cd p{1.0}, sym{};
    for (std::size_t j = 0; j < model.m; ++j) {
      if (model.alpha_at(j) != 0.0) sym += model.alpha_at(j) * p;
      p *= ik;
    }
    sym += double(model.sigma0) * p;
    uhat[i] *= std::exp(-t * sym);
  }
  return fft.inverse(uhat);
}

double camassa_holm_pulse(double x) {
  const double pi_2 = 1.5707963267948966;
  if (x >= 0.0) {
    // rewrite via arctan(e^x) = pi/2 - arctan(e^-x) so the growing
    // exponentials cancel analytically instead of numerically
    const double em = std::exp(-x), ep = std::exp(x);
    return pi_2 * em + (ep - em) * std::atan(em) - 1.0;
  }
  const double ep = std::exp(x), em = std::exp(-x);
  return pi_2 * ep - (ep - em) * std::atan(ep) - 1.0;
}

}  // namespace hyprelax
