#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "hyprelax/linalg.hpp"

namespace hyprelax {

using Field = std::vector<cd>;

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Equispaced periodic grid on [x_left, x_right) with FFT wavenumber
/// ordering: k_j = 2*pi*j/L for j < n/2 and 2*pi*(j-n)/L otherwise.
struct PeriodicGrid {
  double x_left = 0.0;
  double x_right = 0.0;
  std::size_t n = 0;
  std::vector<double> nodes;
  std::vector<double> wavenumbers;

  double length() const { return x_right - x_left; }
  double dx() const { return length() / double(n); }
  /// Largest resolved |k| (the Nyquist wavenumber).
  double k_max() const { return 3.141592653589793 * double(n) / length(); }
};

/// Throws GridError unless n is a power of two >= 8 and the domain is proper.
PeriodicGrid make_grid(double x_left, double x_right, std::size_t n);

/// Forward/inverse complex FFT of a fixed size, backed by FFTW.  Plan
/// creation is serialized internally; each instance owns its buffers, so
/// distinct instances may be used concurrently.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return n_; }
  /// Unnormalized forward transform (sum of exp(-ikx) terms).
  Field forward(const Field& f) const;
  /// Inverse transform including the 1/n normalization.
  Field inverse(const Field& fhat) const;

 private:
  std::size_t n_;
  void* plan_fwd_;
  void* plan_bwd_;
  cd* buf_in_;
  cd* buf_out_;
};

/// d^order/dx^order via multiplication by (ik)^order in Fourier space.
/// The Nyquist mode is zeroed for odd orders (it has no well-defined sign).
Field spectral_derivative(const PeriodicGrid& grid, const Fft& fft,
                          const Field& f, unsigned order);

/// 2/3-rule dealiasing: zero the top third of modes (applied in place to a
/// spectral-space field).
void dealias_spectrum(const PeriodicGrid& grid, Field& fhat);

/// Multi-component solution snapshot.  All components live on `grid`.
struct State {
  std::shared_ptr<const PeriodicGrid> grid;
  std::vector<Field> components;
  bool is_real = false;
};

/// q_j = spectral_derivative(u0, j), j = 0..m-1.
State init_state(std::shared_ptr<const PeriodicGrid> grid, const Fft& fft,
                 const Field& u0, std::size_t m, bool is_real);

double max_abs(const Field& f);
double max_abs_imag(const Field& f);

}  // namespace hyprelax
