#include "hyprelax/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace hyprelax {

namespace {

// Lambda (kA + iB) with Lambda = diag(1, 1/tau, ..., 1/tau).
CMat dispersion_matrix(const HyperbolicSystem& s, double k) {
  const std::size_t m = s.m();
  CMat mm(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double scale = (i == 0) ? 1.0 : 1.0 / s.tau;
    for (std::size_t j = 0; j < m; ++j)
      mm(i, j) = scale * cd{k * s.a(i, j), s.b(i, j)};
  }
  return mm;
}

}  // namespace

Spectrum dispersion(const HyperbolicSystem& system, double k) {
  return eigenvalues_dense(dispersion_matrix(system, k));
}

DispersionSweep sweep_dispersion(const HyperbolicSystem& system,
                                 const std::vector<double>& k_grid,
                                 double tol) {
  DispersionSweep sw;
  sw.k_grid = k_grid;
  sw.stable = true;
  for (double k : k_grid) {
    Spectrum sp = dispersion(system, k);
    double limit = 1.0;
    for (const auto& w : sp.eigenvalues) limit = std::max(limit, std::abs(w));
    if (sp.max_imag > tol * limit) sw.stable = false;
    sw.branches.push_back(std::move(sp.eigenvalues));
  }
  return sw;
}

std::vector<double> characteristic_speeds(const HyperbolicSystem& system) {
  const std::size_t m = system.m();
  CMat adv(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double scale = (i == 0) ? 1.0 : 1.0 / system.tau;
    for (std::size_t j = 0; j < m; ++j) adv(i, j) = scale * system.a(i, j);
  }
  const Spectrum sp = eigenvalues_dense(adv);
  std::vector<double> speeds;
  for (const auto& l : sp.eigenvalues) {
    if (std::abs(l.imag()) > 1e-8 * std::max(1.0, std::abs(l)))
      throw DispersionError(
          "characteristic_speeds: complex speed, system is not hyperbolic");
    speeds.push_back(l.real());
  }
  std::sort(speeds.begin(), speeds.end());
  return speeds;
}

std::vector<cd> mode_evolution(const HyperbolicSystem& system, double k,
                               cd u0_hat, double t) {
  if (t < 0.0) throw DispersionError("mode_evolution: t must be >= 0");
  const std::size_t m = system.m();
  const cd ik{0.0, k};
  std::vector<cd> q0(m);
  cd p{1.0};
  for (std::size_t j = 0; j < m; ++j) {
    q0[j] = p * u0_hat;
    p *= ik;
  }
  if (t == 0.0) return q0;
  const CMat L = relaxation_generator(system, k);
  const double t_over_tau = t / system.tau;
  const EigenDecomposition d = eigen_decompose(L);
  if (std::isfinite(d.condition) && d.condition <= 1e8) {
    std::vector<cd> c = Lu(d.vectors).solve(q0);
    for (std::size_t j = 0; j < m; ++j)
      c[j] *= std::exp(t_over_tau * d.values[j]);
    return d.vectors * c;
  }
  CMat scaled = L;
  scaled *= cd{t_over_tau};
  return expm(scaled) * q0;
}

cd slow_eigenvalue(const HyperbolicSystem& system, double k) {
  if (k == 0.0) return cd{};  // first row of L vanishes identically
  const CMat L = relaxation_generator(system, k);
  std::vector<cd> vals = eigenvalues_dense(L).eigenvalues;
  std::sort(vals.begin(), vals.end(), [](const cd& a, const cd& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::abs(a.imag()) < std::abs(b.imag());
  });
  if (vals.size() > 1 && !(std::abs(vals[0]) < 0.5 * std::abs(vals[1])))
    throw DispersionError(
        "slow_eigenvalue: eigenvalue not separated (tau too large for this k)");
  return vals[0];
}

}  // namespace hyprelax
