#pragma once

#include <stdexcept>
#include <vector>

#include "hyprelax/linalg.hpp"

namespace hyprelax {

class EigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of a small dense matrix, sorted by (Re, Im) ascending.
struct Spectrum {
  std::vector<cd> eigenvalues;
  double max_imag = 0.0;
};

/// Full eigendecomposition: values[i] pairs with column i of vectors.
/// `condition` is the 1-norm condition estimate of the eigenvector matrix.
struct EigenDecomposition {
  std::vector<cd> values;
  CMat vectors;
  double condition = 0.0;
};

/// All eigenvalues via balancing, Hessenberg reduction and implicitly
/// shifted QR with Wilkinson shifts.  Deflation threshold is 1e-13 relative
/// to the neighboring diagonal entries; throws EigError after 100*n sweeps.
Spectrum eigenvalues_dense(const CMat& m);

/// Eigenvalues plus right eigenvectors (inverse iteration per eigenvalue).
EigenDecomposition eigen_decompose(const CMat& m);

/// Matrix exponential, scaling and squaring with the degree-13 Pade
/// approximant.
CMat expm(const CMat& m);

}  // namespace hyprelax
