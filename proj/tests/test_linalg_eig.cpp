#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "hyprelax/eig.hpp"
#include "hyprelax/linalg.hpp"

using namespace hyprelax;

namespace {

// Deterministic generator for property-style checks.
struct Lcg {
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  double uniform() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return double(s >> 11) / double(1ull << 53) * 2.0 - 1.0;
  }
  cd complex() { return {uniform(), uniform()}; }
};

CMat random_matrix(std::size_t n, Lcg& rng) {
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.complex();
  return m;
}

bool contains_eigenvalue(const Spectrum& s, cd lambda, double tol) {
  for (const auto& l : s.eigenvalues)
    if (std::abs(l - lambda) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("lu solves random systems") {
  Lcg rng;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 8;
    CMat a = random_matrix(n, rng);
    std::vector<cd> x(n);
    for (auto& v : x) v = rng.complex();
    const std::vector<cd> b = a * x;
    const std::vector<cd> got = Lu(a).solve(b);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(got[i] - x[i]) < 1e-10);
  }
}

TEST_CASE("lu reports singular matrices") {
  CMat a(2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  Lu lu(a);
  CHECK(lu.singular());
  CHECK_THROWS_AS(lu.solve(std::vector<cd>{1.0, 1.0}), SingularMatrixError);
}

TEST_CASE("eigenvalues of diagonal matrix") {
  CMat m(2);
  m(0, 0) = 1.0;
  m(1, 1) = cd{0.0, 2.0};
  const Spectrum s = eigenvalues_dense(m);
  CHECK(contains_eigenvalue(s, cd{1.0, 0.0}, 1e-14));
  CHECK(contains_eigenvalue(s, cd{0.0, 2.0}, 1e-14));
  CHECK(s.max_imag == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues of rotation generator") {
  CMat m(2);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  const Spectrum s = eigenvalues_dense(m);
  CHECK(contains_eigenvalue(s, cd{0.0, 1.0}, 1e-14));
  CHECK(contains_eigenvalue(s, cd{0.0, -1.0}, 1e-14));
}

TEST_CASE("eigenvalue ordering is (Re, Im) ascending") {
  Lcg rng;
  const Spectrum s = eigenvalues_dense(random_matrix(6, rng));
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    const cd a = s.eigenvalues[i - 1], b = s.eigenvalues[i];
    CHECK((a.real() < b.real() ||
           (a.real() == b.real() && a.imag() <= b.imag())));
  }
}

TEST_CASE("eigenpairs satisfy the residual bound") {
  Lcg rng;
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const CMat m = random_matrix(n, rng);
    const EigenDecomposition d = eigen_decompose(m);
    const double norm = m.norm_frobenius();
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<cd> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = d.vectors(i, e);
      const std::vector<cd> mv = m * v;
      double resid = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        resid += std::norm(mv[i] - d.values[e] * v[i]);
      CHECK(std::sqrt(resid) <= 1e-9 * norm);
    }
  }
}

TEST_CASE("eigenvalues match the characteristic polynomial on a fixed 3x3") {
  // companion matrix of z^3 - (3+i) z^2 + 2 z - (1-i)
  CMat m(3);
  m(0, 2) = cd{1.0, -1.0};
  m(1, 0) = 1.0;
  m(1, 2) = -2.0;
  m(2, 1) = 1.0;
  m(2, 2) = cd{3.0, 1.0};
  const Spectrum s = eigenvalues_dense(m);
  for (const auto& z : s.eigenvalues) {
    const cd p = z * z * z - cd{3.0, 1.0} * z * z + 2.0 * z - cd{1.0, -1.0};
    CHECK(std::abs(p) < 1e-10);
  }
}

TEST_CASE("eigenvalues of a matrix with wide dynamic range") {
  // Balancing keeps accuracy when entries differ by orders of magnitude.
  CMat m(2);
  m(0, 1) = -1.0;
  m(1, 0) = -1e6;
  const Spectrum s = eigenvalues_dense(m);
  CHECK(contains_eigenvalue(s, cd{1e3, 0.0}, 1e-9));
  CHECK(contains_eigenvalue(s, cd{-1e3, 0.0}, 1e-9));
}

TEST_CASE("expm of zero and of a diagonal matrix") {
  const CMat z(3);
  const CMat e = expm(z);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(e(i, j) - (i == j ? cd{1.0} : cd{})) < 1e-14);

  CMat d(2);
  d(0, 0) = cd{1.0, 1.0};
  d(1, 1) = -2.0;
  const CMat ed = expm(d);
  CHECK(std::abs(ed(0, 0) - std::exp(cd{1.0, 1.0})) < 1e-13);
  CHECK(std::abs(ed(1, 1) - std::exp(cd{-2.0})) < 1e-13);
  CHECK(std::abs(ed(0, 1)) < 1e-15);
}

TEST_CASE("expm of a rotation generator is a rotation") {
  const double theta = 2.31;
  CMat g(2);
  g(0, 1) = theta;
  g(1, 0) = -theta;
  const CMat r = expm(g);
  CHECK(std::abs(r(0, 0) - std::cos(theta)) < 1e-13);
  CHECK(std::abs(r(0, 1) - std::sin(theta)) < 1e-13);
  CHECK(std::abs(r(1, 0) + std::sin(theta)) < 1e-13);
  CHECK(std::abs(r(1, 1) - std::cos(theta)) < 1e-13);
}

TEST_CASE("expm handles norms requiring scaling") {
  Lcg rng;
  CMat m = random_matrix(4, rng);
  m *= cd{20.0};
  const CMat e1 = expm(m);
  // exp(A) = exp(A/2)^2
  CMat half = m;
  half *= cd{0.5};
  const CMat eh = expm(half);
  const CMat e2 = eh * eh;
  CHECK((e1 - e2).norm_max() <= 1e-9 * e1.norm_max());
}
