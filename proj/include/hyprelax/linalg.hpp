#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hyprelax {

using cd = std::complex<double>;

/// Dense square complex matrix, row-major storage.  All matrices in this
/// project are small (n <= 64), so everything here is written for clarity
/// rather than cache performance.
class CMat {
 public:
  CMat() = default;
  explicit CMat(std::size_t n) : n_(n), a_(n * n) {}

  static CMat identity(std::size_t n) {
    CMat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }

  cd& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cd s);

  CMat adjoint() const;
  CMat transpose() const;

  /// Maximum absolute column sum.
  double norm_1() const;
  double norm_frobenius() const;
  /// Largest entry modulus.
  double norm_max() const;

 private:
  std::size_t n_ = 0;
  std::vector<cd> a_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(cd s, CMat a);
CMat operator*(const CMat& a, const CMat& b);
std::vector<cd> operator*(const CMat& a, const std::vector<cd>& x);

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// LU factorization with partial pivoting.
class Lu {
 public:
  explicit Lu(CMat a);

  bool singular() const { return singular_; }
  std::vector<cd> solve(std::vector<cd> b) const;
  CMat solve(CMat b) const;

 private:
  CMat lu_;
  std::vector<std::size_t> piv_;
  bool singular_ = false;
};

CMat inverse(const CMat& a);

}  // namespace hyprelax
