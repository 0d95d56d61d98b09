#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyprelax/solve.hpp"

namespace hyprelax {

enum class Norm { Linf, L2 };
std::string to_string(Norm n);
Norm norm_from_string(const std::string& name);

double field_norm(const PeriodicGrid& grid, const Field& f, Norm norm);

/// A hyperbolization-error study: one model, one grid, one initial
/// condition, varying tau.
struct Problem {
  ModelSpec model;  // tau is overridden per run
  double x_left = -16.0;
  double x_right = 16.0;
  std::size_t n = 256;
  std::function<cd(double)> u0;
  Stepper stepper = Stepper::SSPRK33;
  /// Stepper for the refined original-model reference (nonlinear models).
  Stepper reference_stepper = Stepper::SSPRK33;
  bool dealias = true;
  double T = 1.0;
  /// Refinement of the reference solve relative to the base grid/step.
  std::size_t ref_space_factor = 2;
  std::size_t ref_time_factor = 4;
};

struct ConvergenceReport {
  std::string model_id;
  std::vector<double> tau_values;  // descending
  std::vector<double> errors;
  double fitted_order = 0.0;
  Norm norm = Norm::Linf;
  double T = 0.0;
};

/// Least-squares slope of log(error) vs log(tau).
double fit_order(const std::vector<double>& taus,
                 const std::vector<double>& errors);

/// The "true" solution of the original PDE at T on the problem's grid:
/// exact per-mode evolution for linear models, a refined-resolution solve
/// restricted to the coarse nodes otherwise.
Field reference_solution(const Problem& problem);

double hyperbolization_error(const Problem& problem, double tau, Norm norm);

/// Errors for each tau (>= 3, descending) plus the fitted order.  The
/// largest-tau point is dropped from the fit when its error exceeds half
/// the reference norm (outside the asymptotic regime).  Members run
/// concurrently, capped by the HYP_THREADS environment variable.
ConvergenceReport tau_sweep(const Problem& problem,
                            std::vector<double> tau_values, Norm norm);

struct CensusReport {
  std::size_t m = 0;
  int sigma0 = 1;
  std::size_t total_candidates = 0;
  std::size_t low_k_pass = 0;
  std::size_t high_k_pass = 0;
  std::size_t full_pass = 0;
  std::optional<SignedPermutation> unique_stable;
};

/// +1 for odd m, (-1)^{m/2} for even m.
int default_sigma0(std::size_t m);
CensusReport census_one(std::size_t m, int sigma0);
std::vector<CensusReport> census(std::size_t m_min, std::size_t m_max);

/// Figure-reproduction presets: heat, kdv, nls, ch, ks-solution, ks-error.
/// Each writes data.csv, meta.json and plot.svg under out_dir.
void reproduce(const std::string& preset,
               const std::filesystem::path& out_dir);
std::vector<std::string> preset_names();

}  // namespace hyprelax
