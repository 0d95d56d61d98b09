#include "hyprelax/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>

namespace hyprelax {

namespace {
// FFTW plan creation/destruction is not thread safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

PeriodicGrid make_grid(double x_left, double x_right, std::size_t n) {
  if (!(x_right > x_left)) throw GridError("make_grid: empty domain");
  if (n < 8 || (n & (n - 1)) != 0)
    throw GridError("make_grid: n must be a power of two >= 8");
  PeriodicGrid g;
  g.x_left = x_left;
  g.x_right = x_right;
  g.n = n;
  const double L = x_right - x_left;
  g.nodes.resize(n);
  g.wavenumbers.resize(n);
  const double two_pi = 6.283185307179586;
  for (std::size_t j = 0; j < n; ++j) {
    g.nodes[j] = x_left + L * double(j) / double(n);
    const double jj = j < n / 2 ? double(j) : double(j) - double(n);
    g.wavenumbers[j] = two_pi * jj / L;
  }
  return g;
}

Fft::Fft(std::size_t n) : n_(n) {
  buf_in_ = reinterpret_cast<cd*>(fftw_malloc(sizeof(cd) * n));
  buf_out_ = reinterpret_cast<cd*>(fftw_malloc(sizeof(cd) * n));
  std::lock_guard<std::mutex> lock(plan_mutex());
  plan_fwd_ = fftw_plan_dft_1d(int(n),
                               reinterpret_cast<fftw_complex*>(buf_in_),
                               reinterpret_cast<fftw_complex*>(buf_out_),
                               FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(int(n),
                               reinterpret_cast<fftw_complex*>(buf_in_),
                               reinterpret_cast<fftw_complex*>(buf_out_),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

Field Fft::forward(const Field& f) const {
  std::memcpy(buf_in_, f.data(), sizeof(cd) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  return Field(buf_out_, buf_out_ + n_);
}

Field Fft::inverse(const Field& fhat) const {
  std::memcpy(buf_in_, fhat.data(), sizeof(cd) * n_);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  Field out(buf_out_, buf_out_ + n_);
  const double scale = 1.0 / double(n_);
  for (auto& v : out) v *= scale;
  return out;
}

Field spectral_derivative(const PeriodicGrid& grid, const Fft& fft,
                          const Field& f, unsigned order) {
  Field fhat = fft.forward(f);
  for (std::size_t j = 0; j < grid.n; ++j) {
    cd factor{1.0};
    const cd ik{0.0, grid.wavenumbers[j]};
    for (unsigned p = 0; p < order; ++p) factor *= ik;
    fhat[j] *= factor;
  }
  if (order % 2 == 1) fhat[grid.n / 2] = 0.0;
  return fft.inverse(fhat);
}

void dealias_spectrum(const PeriodicGrid& grid, Field& fhat) {
  const std::size_t n = grid.n;
  // keep |j| <= n/3 (indices j and n-j), zero the rest
  const std::size_t cut = n / 3;
  for (std::size_t j = cut + 1; j <= n - cut - 1; ++j) fhat[j] = 0.0;
}

State init_state(std::shared_ptr<const PeriodicGrid> grid, const Fft& fft,
                 const Field& u0, std::size_t m, bool is_real) {
  State s;
  s.grid = grid;
  s.is_real = is_real;
  s.components.reserve(m);
  s.components.push_back(u0);
  for (std::size_t j = 1; j < m; ++j)
    s.components.push_back(spectral_derivative(*grid, fft, u0, unsigned(j)));
  return s;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_imag(const Field& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, std::abs(v.imag()));
  return m;
}

}  // namespace hyprelax
