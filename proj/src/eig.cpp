#include "hyprelax/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace hyprelax {

namespace {

constexpr double kDeflateTol = 1e-13;

// Parlett-Reinsch balancing with radix-2 scale factors.  Similarity
// transform, so eigenvalues are unchanged.
CMat balance(CMat a) {
  const std::size_t n = a.size();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        converged = false;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
      }
    }
  }
  return a;
}

void hessenberg(CMat& h) {
  const std::size_t n = h.size();
  if (n < 3) return;
  std::vector<cd> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cd x0 = h(k + 1, k);
    const cd phase = (x0 == cd{}) ? cd{1.0} : x0 / std::abs(x0);
    const cd beta = -phase * xnorm;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
      if (i == k + 1) v[i] -= beta;
      vnorm += std::norm(v[i]);
    }
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
    // Left: rows k+1..n-1.
    for (std::size_t j = k; j < n; ++j) {
      cd dot{};
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
    }
    // Right: columns k+1..n-1.
    for (std::size_t i = 0; i < n; ++i) {
      cd dot{};
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
    h(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cd s;
};

Givens make_givens(cd a, cd b) {
  const double aa = std::abs(a), ab = std::abs(b);
  if (ab == 0.0) return {1.0, cd{}};
  if (aa == 0.0) return {0.0, cd{1.0}};
  const double r = std::hypot(aa, ab);
  return {aa / r, (a / aa) * std::conj(b) / r};
}

std::pair<cd, cd> eig2x2(cd a, cd b, cd c, cd d) {
  const cd tr = a + d;
  const cd det = a * d - b * c;
  const cd disc = std::sqrt(tr * tr - 4.0 * det);
  const cd t1 = tr + disc, t2 = tr - disc;
  const cd big = (std::abs(t1) >= std::abs(t2)) ? t1 : t2;
  if (big == cd{}) return {cd{}, cd{}};
  const cd r1 = big / 2.0;
  return {r1, det / r1};
}

std::vector<cd> qr_eigenvalues(CMat h) {
  const std::size_t n = h.size();
  std::vector<cd> eigs;
  eigs.reserve(n);
  if (n == 0) return eigs;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  std::size_t total_iters = 0;
  std::size_t stuck = 0;
  const std::size_t max_iters = 100 * n;
  const double hnorm = std::max(h.norm_frobenius(),
                                std::numeric_limits<double>::min());
  while (hi >= 0) {
    // Locate the unreduced block lo..hi.
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      double d = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (d == 0.0) d = hnorm;
      if (sub <= kDeflateTol * d) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eigs.push_back(h(hi, hi));
      --hi;
      stuck = 0;
      continue;
    }
    if (lo == hi - 1) {
      auto [l1, l2] = eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
      eigs.push_back(l1);
      eigs.push_back(l2);
      hi -= 2;
      stuck = 0;
      continue;
    }
    cd mu;
    if (stuck > 0 && stuck % 25 == 0) {
      mu = h(hi, hi) + std::abs(h(hi, hi - 1));
    } else {
      auto [l1, l2] =
          eig2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
      mu = (std::abs(l1 - h(hi, hi)) <= std::abs(l2 - h(hi, hi))) ? l1 : l2;
    }
    // Single-shift bulge chase on lo..hi.
    cd x = h(lo, lo) - mu;
    cd y = h(lo + 1, lo);
    for (std::ptrdiff_t i = lo; i < hi; ++i) {
      const Givens g = make_givens(x, y);
      const std::ptrdiff_t j0 = (i == lo) ? lo : i - 1;
      for (std::size_t j = static_cast<std::size_t>(j0); j < n; ++j) {
        const cd t1 = g.c * h(i, j) + g.s * h(i + 1, j);
        const cd t2 = -std::conj(g.s) * h(i, j) + g.c * h(i + 1, j);
        h(i, j) = t1;
        h(i + 1, j) = t2;
      }
      const std::ptrdiff_t rmax = std::min<std::ptrdiff_t>(i + 2, hi);
      for (std::ptrdiff_t r = 0; r <= rmax; ++r) {
        const cd t1 = g.c * h(r, i) + std::conj(g.s) * h(r, i + 1);
        const cd t2 = -g.s * h(r, i) + g.c * h(r, i + 1);
        h(r, i) = t1;
        h(r, i + 1) = t2;
      }
      if (i < hi - 1) {
        x = h(i + 1, i);
        y = h(i + 2, i);
      }
    }
    ++total_iters;
    ++stuck;
    if (total_iters > max_iters)
      throw EigError("QR iteration failed to converge after " +
                     std::to_string(max_iters) + " sweeps");
  }
  return eigs;
}

void sort_eigenvalues(std::vector<cd>& v) {
  std::sort(v.begin(), v.end(), [](const cd& a, const cd& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}  // namespace

Spectrum eigenvalues_dense(const CMat& m) {
  if (m.size() > 64) throw EigError("eigenvalues_dense: matrix too large");
  CMat h = balance(m);
  hessenberg(h);
  Spectrum s;
  s.eigenvalues = qr_eigenvalues(std::move(h));
  sort_eigenvalues(s.eigenvalues);
  s.max_imag = -std::numeric_limits<double>::infinity();
  for (const auto& l : s.eigenvalues) s.max_imag = std::max(s.max_imag, l.imag());
  if (s.eigenvalues.empty()) s.max_imag = 0.0;
  return s;
}

EigenDecomposition eigen_decompose(const CMat& m) {
  const std::size_t n = m.size();
  EigenDecomposition d;
  d.values = eigenvalues_dense(m).eigenvalues;
  d.vectors = CMat(n);
  const double scale = std::max(m.norm_max(), 1e-300);
  for (std::size_t e = 0; e < n; ++e) {
    cd lambda = d.values[e];
    CMat shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    Lu lu(shifted);
    if (lu.singular()) {
      for (std::size_t i = 0; i < n; ++i)
        shifted(i, i) += cd{scale * 1e-14, scale * 1e-14};
      lu = Lu(shifted);
    }
    std::vector<cd> v(n, cd{1.0 / std::sqrt(double(n))});
    for (int it = 0; it < 3; ++it) {
      v = lu.solve(std::move(v));
      double nv = 0.0;
      for (const auto& x : v) nv += std::norm(x);
      nv = std::sqrt(nv);
      if (nv == 0.0 || !std::isfinite(nv)) {
        v.assign(n, cd{});
        v[e] = 1.0;
        break;
      }
      for (auto& x : v) x /= nv;
    }
    // Deterministic phase: largest-modulus entry made real positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (std::abs(v[imax]) > 0.0) {
      const cd ph = std::conj(v[imax]) / std::abs(v[imax]);
      for (auto& x : v) x *= ph;
    }
    for (std::size_t i = 0; i < n; ++i) d.vectors(i, e) = v[i];
  }
  Lu rlu(d.vectors);
  if (rlu.singular()) {
    d.condition = std::numeric_limits<double>::infinity();
  } else {
    d.condition =
        d.vectors.norm_1() * rlu.solve(CMat::identity(n)).norm_1();
  }
  return d;
}

CMat expm(const CMat& m) {
  const std::size_t n = m.size();
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const double nrm = m.norm_1();
  int s = 0;
  if (nrm > theta13) s = std::max(0, int(std::ceil(std::log2(nrm / theta13))));
  CMat a = m;
  a *= cd{std::ldexp(1.0, -s)};

  const CMat id = CMat::identity(n);
  const CMat a2 = a * a;
  const CMat a4 = a2 * a2;
  const CMat a6 = a2 * a4;
  CMat u = a6 * (cd{b[13]} * a6 + cd{b[11]} * a4 + cd{b[9]} * a2) +
           cd{b[7]} * a6 + cd{b[5]} * a4 + cd{b[3]} * a2 + cd{b[1]} * id;
  u = a * u;
  CMat v = a6 * (cd{b[12]} * a6 + cd{b[10]} * a4 + cd{b[8]} * a2) +
           cd{b[6]} * a6 + cd{b[4]} * a4 + cd{b[2]} * a2 + cd{b[0]} * id;
  CMat r = Lu(v - u).solve(v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

}  // namespace hyprelax
