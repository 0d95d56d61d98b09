#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyprelax/linalg.hpp"

#include "json.hpp"

namespace hyprelax {

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Signed permutation matrix of size n: exactly one nonzero entry (+1 or -1)
/// per row and per column.  Row i carries sign[i] in column target[i].
///
/// Indices are 0-based throughout the code; the JSON form and any printed
/// matrix positions use 1-based indices, matching the usual p_ij notation.
struct SignedPermutation {
  std::size_t n = 0;
  std::vector<std::size_t> target;
  std::vector<int> sign;

  SignedPermutation() = default;
  SignedPermutation(std::vector<std::size_t> tgt, std::vector<int> sgn);

  /// Dense form, row-major, entries in {-1, 0, +1}.
  std::vector<int> dense() const;
  CMat dense_cmat() const;

  /// Disjoint cycle decomposition of the underlying permutation.
  std::vector<std::vector<std::size_t>> cycles() const;

  bool operator==(const SignedPermutation&) const = default;
};

/// The model PDE  du/dt + sum_j alpha_j d^j u/dx^j + sigma0 d^m u/dx^m = 0.
/// alpha has m entries alpha_0..alpha_{m-1}.
struct LinearModel {
  std::size_t m = 2;
  int sigma0 = -1;
  std::vector<double> alpha;  // empty means all-zero

  LinearModel() = default;
  LinearModel(std::size_t m_, int sigma0_, std::vector<double> alpha_ = {});

  bool alpha_zero() const;
  double alpha_at(std::size_t j) const;
};

/// First-order relaxation system  D dq/dt + A dq/dx = B q  with
/// D = diag(1, tau, ..., tau).  D is never stored; tau is kept as a scalar
/// and Lambda = D^{-1} applied analytically.
struct HyperbolicSystem {
  LinearModel model;
  SignedPermutation P;
  double tau = 1.0;
  std::vector<double> A;  // m*m row-major
  std::vector<double> B;  // m*m row-major

  std::size_t m() const { return model.m; }
  double a(std::size_t i, std::size_t j) const { return A[i * m() + j]; }
  double b(std::size_t i, std::size_t j) const { return B[i * m() + j]; }
  CMat a_cmat() const;
  CMat b_cmat() const;
};

/// The unique stability-compatible anti-diagonal signed permutation for the
/// pure model of order m.  Rejects even m with sigma0 != (-1)^{m/2}.
SignedPermutation stable_permutation(std::size_t m, int sigma0);

HyperbolicSystem assemble_system(const LinearModel& model,
                                 const SignedPermutation& P, double tau);

/// True iff every eigenvalue of P lies in the closed left half-plane;
/// decided structurally (1-cycles of sign -1, antisymmetric 2-cycles).
bool classify_left_half_plane(const SignedPermutation& P);

/// True iff the advective matrix A built from (P, sigma0) has only real
/// eigenvalues; decided structurally (A symmetric).
bool has_real_spectrum_A(const SignedPermutation& P, int sigma0);

/// L_tau = -i tau Lambda (kA + iB); defined for alpha = 0 only.
CMat relaxation_generator(const HyperbolicSystem& system, double k);

struct CandidateVerdict {
  SignedPermutation P;
  bool low_k = false;
  bool high_k = false;
  bool full = false;
};

/// All signed permutations of size m-1 with their stability verdicts.  The
/// full-spectrum verdict samples the dispersion relation over a log-spaced
/// k grid and several tau values.
std::vector<CandidateVerdict> enumerate_candidates(std::size_t m, int sigma0);

nlohmann::json to_json(const HyperbolicSystem& system);
HyperbolicSystem system_from_json(const nlohmann::json& j);

}  // namespace hyprelax
