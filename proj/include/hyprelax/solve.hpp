#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "hyprelax/models.hpp"
#include "hyprelax/steppers.hpp"

namespace hyprelax {

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveConfig {
  ModelSpec model;
  bool hyperbolized = false;
  std::shared_ptr<const PeriodicGrid> grid;
  Stepper stepper = Stepper::SSPRK33;
  double dt = 0.0;  // <= 0 selects the automatic step size
  double t_final = 1.0;
  std::vector<double> snapshot_times;  // defaults to {t_final} when empty
  bool dealias = true;
  Field u0;
};

struct Snapshot {
  double t = 0.0;
  State state;
};

struct SolveResult {
  std::vector<Snapshot> snapshots;
  double dt_used = 0.0;
};

/// Step size chosen when dt is not given.  Explicit hyperbolized runs are
/// limited by both the fastest characteristic (k_max * s_max) and the
/// source-term eigenvalues of size 1/tau; IMEX original runs by the
/// advective CFL only.
double auto_dt(const SolveConfig& config);

SolveResult solve(const SolveConfig& config);

}  // namespace hyprelax
