#include "hyprelax/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyprelax/dispersion.hpp"

namespace hyprelax {

SignedPermutation::SignedPermutation(std::vector<std::size_t> tgt,
                                     std::vector<int> sgn)
    : n(tgt.size()), target(std::move(tgt)), sign(std::move(sgn)) {
  if (sign.size() != n)
    throw ConstructionError("SignedPermutation: target/sign size mismatch");
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (target[i] >= n || hit[target[i]])
      throw ConstructionError("SignedPermutation: target is not a bijection");
    hit[target[i]] = true;
    if (sign[i] != 1 && sign[i] != -1)
      throw ConstructionError("SignedPermutation: signs must be +1 or -1");
  }
}

std::vector<int> SignedPermutation::dense() const {
  std::vector<int> d(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + target[i]] = sign[i];
  return d;
}

CMat SignedPermutation::dense_cmat() const {
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, target[i]) = double(sign[i]);
  return m;
}

std::vector<std::vector<std::size_t>> SignedPermutation::cycles() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      cyc.push_back(j);
      j = target[j];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

LinearModel::LinearModel(std::size_t m_, int sigma0_, std::vector<double> alpha_)
    : m(m_), sigma0(sigma0_), alpha(std::move(alpha_)) {
  if (m < 2) throw ConstructionError("LinearModel: m must be >= 2");
  if (sigma0 != 1 && sigma0 != -1)
    throw ConstructionError("LinearModel: sigma0 must be +1 or -1");
  if (m % 2 == 0) {
    const int required = (m / 2) % 2 == 0 ? 1 : -1;
    if (sigma0 != required)
      throw ConstructionError(
          "LinearModel: even m requires sigma0 = (-1)^(m/2)");
  }
  if (!alpha.empty() && alpha.size() != m)
    throw ConstructionError("LinearModel: alpha must have m entries");
  if (!alpha.empty() && alpha[0] < 0.0)
    throw ConstructionError("LinearModel: alpha_0 must be >= 0");
}

bool LinearModel::alpha_zero() const {
  return std::all_of(alpha.begin(), alpha.end(),
                     [](double a) { return a == 0.0; });
}

double LinearModel::alpha_at(std::size_t j) const {
  return alpha.empty() ? 0.0 : alpha[j];
}

CMat HyperbolicSystem::a_cmat() const {
  CMat c(m());
  for (std::size_t i = 0; i < m(); ++i)
    for (std::size_t j = 0; j < m(); ++j) c(i, j) = a(i, j);
  return c;
}

CMat HyperbolicSystem::b_cmat() const {
  CMat c(m());
  for (std::size_t i = 0; i < m(); ++i)
    for (std::size_t j = 0; j < m(); ++j) c(i, j) = b(i, j);
  return c;
}

SignedPermutation stable_permutation(std::size_t m, int sigma0) {
  LinearModel check(m, sigma0);  // validates the (m, sigma0) pairing
  const std::size_t n = m - 1;
  std::vector<std::size_t> target(n);
  std::vector<int> sign(n);
  for (std::size_t r = 0; r < n; ++r) {
    // 1-based: row i = r+1, column j = m-i, nonzero iff i+j = m.
    const std::size_t i = r + 1;
    const std::size_t j = m - i;
    target[r] = j - 1;
    const std::size_t exponent = (2 * j <= m) ? (j - 1) : (m - j);
    sign[r] = sigma0 * (exponent % 2 == 0 ? 1 : -1);
  }
  return SignedPermutation(std::move(target), std::move(sign));
}

HyperbolicSystem assemble_system(const LinearModel& model,
                                 const SignedPermutation& P, double tau) {
  const std::size_t m = model.m;
  if (P.n != m - 1)
    throw ConstructionError("assemble_system: P must have size m-1");
  if (!(tau > 0.0)) throw ConstructionError("assemble_system: tau must be > 0");
  HyperbolicSystem s;
  s.model = model;
  s.P = P;
  s.tau = tau;
  s.A.assign(m * m, 0.0);
  s.B.assign(m * m, 0.0);
  // First row: alpha_j multiplies dx q_{j-1}; sigma0 multiplies dx q_{m-1}.
  for (std::size_t j = 1; j < m; ++j) s.A[j - 1] = model.alpha_at(j);
  s.A[m - 1] = double(model.sigma0);
  s.B[0] = -model.alpha_at(0);
  // Rows 2..m carry P: A lower-left block, B lower-right block.
  for (std::size_t r = 0; r < m - 1; ++r) {
    s.A[(r + 1) * m + P.target[r]] = double(P.sign[r]);
    s.B[(r + 1) * m + P.target[r] + 1] = double(P.sign[r]);
  }
  return s;
}

bool classify_left_half_plane(const SignedPermutation& P) {
  for (const auto& cyc : P.cycles()) {
    if (cyc.size() == 1) {
      if (P.sign[cyc[0]] != -1) return false;
    } else if (cyc.size() == 2) {
      if (P.sign[cyc[0]] * P.sign[cyc[1]] != -1) return false;
    } else {
      return false;  // longer cycles always have an eigenvalue with Re > 0
    }
  }
  return true;
}

bool has_real_spectrum_A(const SignedPermutation& P, int sigma0) {
  // A is itself a signed permutation of size m; a real spectrum is
  // equivalent to A = A^T.
  const std::size_t m = P.n + 1;
  std::vector<std::size_t> target(m);
  std::vector<int> sign(m);
  target[0] = m - 1;
  sign[0] = sigma0;
  for (std::size_t r = 0; r < m - 1; ++r) {
    target[r + 1] = P.target[r];
    sign[r + 1] = P.sign[r];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = target[i];
    if (target[j] != i || sign[j] != sign[i]) return false;
  }
  return true;
}

CMat relaxation_generator(const HyperbolicSystem& system, double k) {
  if (!system.model.alpha_zero())
    throw ConstructionError(
        "relaxation_generator is defined for the pure model (alpha = 0)");
  const std::size_t m = system.m();
  const cd ik{0.0, k};
  CMat L(m);
  // L = tau*Lambda*B - ik*tau*Lambda*A; row 1 keeps the tau factor, the
  // relaxation rows lose it.
  L(0, m - 1) = -ik * system.tau * double(system.model.sigma0);
  for (std::size_t r = 0; r < m - 1; ++r) {
    const std::size_t c = system.P.target[r];
    const double s = double(system.P.sign[r]);
    L(r + 1, c) += -ik * s;
    L(r + 1, c + 1) += s;
  }
  return L;
}

std::vector<CandidateVerdict> enumerate_candidates(std::size_t m, int sigma0) {
  LinearModel model(m, sigma0);
  const std::size_t n = m - 1;
  double census = 1.0;
  for (std::size_t i = 2; i <= n; ++i) census *= double(i);
  census *= std::ldexp(1.0, int(n));
  if (census > 1e6)
    throw ConstructionError("enumerate_candidates: census exceeds 10^6");

  const std::vector<double> taus = {1e-3, 1e-1, 1.0};
  std::vector<double> ks;
  for (std::size_t i = 0; i < 100; ++i) {
    const double k = std::pow(10.0, -3.0 + 6.0 * double(i) / 99.0);
    ks.push_back(k);
    ks.push_back(-k);
  }

  std::vector<CandidateVerdict> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<int> sign(n);
      for (std::size_t i = 0; i < n; ++i)
        sign[i] = (mask >> i) & 1 ? -1 : 1;
      CandidateVerdict v;
      v.P = SignedPermutation(perm, std::move(sign));
      v.low_k = classify_left_half_plane(v.P);
      v.high_k = has_real_spectrum_A(v.P, sigma0);
      v.full = true;
      for (double tau : taus) {
        const HyperbolicSystem sys = assemble_system(model, v.P, tau);
        for (double k : ks) {
          const Spectrum sp = dispersion(sys, k);
          double limit = 1.0;
          for (const auto& w : sp.eigenvalues)
            limit = std::max(limit, std::abs(w));
          if (sp.max_imag > 1e-8 * limit) {
            v.full = false;
            break;
          }
        }
        if (!v.full) break;
      }
      out.push_back(std::move(v));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

nlohmann::json to_json(const HyperbolicSystem& system) {
  nlohmann::json jp;
  std::vector<std::size_t> target1;
  for (std::size_t t : system.P.target) target1.push_back(t + 1);
  jp["target"] = target1;
  jp["sign"] = system.P.sign;
  nlohmann::json j;
  j["m"] = system.m();
  j["sigma0"] = system.model.sigma0;
  j["alpha"] = system.model.alpha.empty()
                   ? std::vector<double>(system.m(), 0.0)
                   : system.model.alpha;
  j["tau"] = system.tau;
  j["P"] = jp;
  j["A"] = system.A;
  j["B"] = system.B;
  return j;
}

HyperbolicSystem system_from_json(const nlohmann::json& j) {
  const std::size_t m = j.at("m").get<std::size_t>();
  std::vector<double> alpha = j.at("alpha").get<std::vector<double>>();
  if (std::all_of(alpha.begin(), alpha.end(),
                  [](double a) { return a == 0.0; }))
    alpha.clear();
  LinearModel model(m, j.at("sigma0").get<int>(), std::move(alpha));
  std::vector<std::size_t> target = j.at("P").at("target");
  for (auto& t : target) {
    if (t == 0) throw ConstructionError("system_from_json: 1-based targets");
    --t;
  }
  SignedPermutation P(std::move(target),
                      j.at("P").at("sign").get<std::vector<int>>());
  return assemble_system(model, P, j.at("tau").get<double>());
}

}  // namespace hyprelax
