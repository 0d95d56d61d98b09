#include "hyprelax/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hyprelax {

CMat& CMat::operator+=(const CMat& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMat& CMat::operator*=(cd s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMat CMat::adjoint() const {
  CMat r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMat CMat::transpose() const {
  CMat r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

double CMat::norm_1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double CMat::norm_frobenius() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double CMat::norm_max() const {
  double best = 0.0;
  for (const auto& v : a_) best = std::max(best, std::abs(v));
  return best;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(cd s, CMat a) { return a *= s; }

CMat operator*(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cd aik = a(i, k);
      if (aik == cd{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<cd> operator*(const CMat& a, const std::vector<cd>& x) {
  const std::size_t n = a.size();
  std::vector<cd> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cd s{};
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Lu::Lu(CMat a) : lu_(std::move(a)), piv_(lu_.size()) {
  const std::size_t n = lu_.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    piv_[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    const cd inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cd m = lu_(i, k) * inv;
      lu_(i, k) = m;
      if (m == cd{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

std::vector<cd> Lu::solve(std::vector<cd> b) const {
  if (singular_) throw SingularMatrixError("Lu::solve: singular matrix");
  const std::size_t n = lu_.size();
  // Rows were swapped in full during factorization, so all pivots must be
  // applied to b before the forward sweep.
  for (std::size_t k = 0; k < n; ++k)
    if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) b[i] -= lu_(i, k) * b[k];
  for (std::size_t i = n; i-- > 0;) {
    cd s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * b[j];
    b[i] = s / lu_(i, i);
  }
  return b;
}

CMat Lu::solve(CMat b) const {
  const std::size_t n = lu_.size();
  CMat x(n);
  std::vector<cd> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    col = solve(std::move(col));
    for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
  }
  return x;
}

CMat inverse(const CMat& a) { return Lu(a).solve(CMat::identity(a.size())); }

}  // namespace hyprelax
