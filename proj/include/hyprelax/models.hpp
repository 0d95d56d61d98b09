#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "hyprelax/construction.hpp"
#include "hyprelax/grid.hpp"

namespace hyprelax {

enum class ModelKind {
  Heat,
  LinearKdV,
  KdV,
  NLS,
  CamassaHolm,
  KuramotoSivashinsky,
  GeneralLinear,
};

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::Heat;
  double kappa = 1.0;                 // NLS nonlinearity coefficient
  std::optional<LinearModel> linear;  // required for GeneralLinear
  double tau = 0.1;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of components of the hyperbolized system (= PDE order m).
std::size_t model_order(const ModelSpec& spec);
bool model_is_real(ModelKind kind);
bool model_is_linear(ModelKind kind);
/// The LinearModel for linear kinds (Heat, LinearKdV, GeneralLinear).
LinearModel linear_model_of(const ModelSpec& spec);

/// Right-hand-side evaluator for one model on one grid.  Owns the FFT plans
/// and scratch; one instance per solve (instances are not thread safe, but
/// distinct instances are independent).
class RhsEvaluator {
 public:
  RhsEvaluator(ModelSpec spec, bool hyperbolized,
               std::shared_ptr<const PeriodicGrid> grid, bool dealias);

  std::size_t components() const;
  const ModelSpec& spec() const { return spec_; }
  const Fft& fft() const { return fft_; }

  /// Full tendency dq/dt.
  State operator()(const State& s) const;

  /// Splitting used by the IMEX stepper (original models only): the full
  /// rhs equals explicit_rhs plus the per-mode multiplication of q_0 by
  /// implicit_symbol in Fourier space.
  Field implicit_symbol() const;
  State explicit_rhs(const State& s) const;

 private:
  Field dx(const Field& f) const { return spectral_derivative(*grid_, fft_, f, 1); }
  Field product(const Field& a, const Field& b) const;
  State linear_hyperbolized_rhs(const State& s) const;

  ModelSpec spec_;
  bool hyperbolized_;
  std::shared_ptr<const PeriodicGrid> grid_;
  bool dealias_;
  Fft fft_;
  std::optional<HyperbolicSystem> system_;  // linear kinds, hyperbolized
};

/// Per-mode exact evolution of the original linear PDE:
/// u_hat(t) = exp(-t (sum_j alpha_j (ik)^j + sigma0 (ik)^m)) u_hat(0).
Field exact_linear_solution(const PeriodicGrid& grid, const Fft& fft,
                            const LinearModel& model, const Field& u0,
                            double t);

/// Camassa-Holm initial pulse (pi/2) e^x - 2 sinh(x) arctan(e^x) - 1,
/// evaluated in a cancellation-free form for large |x|.
double camassa_holm_pulse(double x);

}  // namespace hyprelax
