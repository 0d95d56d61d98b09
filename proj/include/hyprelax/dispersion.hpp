#pragma once

#include <stdexcept>
#include <vector>

#include "hyprelax/construction.hpp"
#include "hyprelax/eig.hpp"

namespace hyprelax {

class DispersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frequencies omega_i(k) as eigenvalues of Lambda (kA + iB).
Spectrum dispersion(const HyperbolicSystem& system, double k);

/// Branches over a wavenumber grid; rows follow k_grid, columns are the m
/// branches sorted by (Re, Im).
struct DispersionSweep {
  std::vector<double> k_grid;
  std::vector<std::vector<cd>> branches;
  bool stable = false;
};

DispersionSweep sweep_dispersion(const HyperbolicSystem& system,
                                 const std::vector<double>& k_grid,
                                 double tol = 1e-8);

/// Eigenvalues of Lambda*A (the advective part), sorted ascending.  Throws
/// if a speed has an imaginary part beyond tolerance.
std::vector<double> characteristic_speeds(const HyperbolicSystem& system);

/// Exact single-mode evolution q_hat(t) = exp(t/tau L_tau) q_hat(0) with
/// q_hat_j(0) = (ik)^j u0_hat.  Uses the eigendecomposition of L_tau and
/// falls back to the scaling-and-squaring exponential when the eigenvector
/// matrix condition exceeds 1e8.
std::vector<cd> mode_evolution(const HyperbolicSystem& system, double k,
                               cd u0_hat, double t);

/// The eigenvalue of L_tau closest to zero (ties broken by smallest |Im|).
/// Throws when it is not separated from the rest (|l0| >= 0.5 min |others|).
cd slow_eigenvalue(const HyperbolicSystem& system, double k);

}  // namespace hyprelax
