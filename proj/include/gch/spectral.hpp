#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "gch/model.hpp"

namespace gch {

using Spectrum = std::vector<std::complex<double>>;

/// Fourier machinery on a periodic grid: differentiation, the Helmholtz
/// operator 1 - d_xx and its inverse, the Green's-function convolution form
/// of the inverse, 2/3-rule dealiasing and trigonometric interpolation.
///
/// Immutable after construction. FFTW plans are shared between copies and
/// executed through the new-array interface, so one workspace may be used
/// from several threads at once; every call allocates its own scratch.
class SpectralWorkspace {
 public:
  explicit SpectralWorkspace(const GridSpec& grid, double tolerance = 1e-12);

  const GridSpec& grid() const { return grid_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return static_cast<std::size_t>(grid_.n()); }
  std::size_t spectrum_size() const { return size() / 2 + 1; }

  /// Signed wavenumbers k_j = pi j / L in FFT order (length n).
  std::span<const double> wavenumbers() const { return wavenumbers_; }
  /// 1 + k_j^2 in FFT order (length n).
  std::span<const double> helmholtz_symbol() const { return helmholtz_symbol_; }

  /// Highest retained mode index of the 2/3 rule.
  int dealias_cutoff() const { return grid_.n() / 3; }

  Spectrum forward(std::span<const double> f) const;
  Field inverse(const Spectrum& f_hat) const;

  /// Derivative of the trigonometric interpolant; the Nyquist mode is dropped.
  Field dx(std::span<const double> f) const;
  Field dxx(std::span<const double> f) const;

  Field helmholtz_apply(std::span<const double> u) const;
  Field helmholtz_invert(std::span<const double> m) const;

  /// Lambda^{-2} by direct quadrature against the periodized kernel
  /// e^{-|x|}/2, i.e. cosh(s - L) / (2 sinh L) for s in [0, 2L).
  /// The kernel kink at s = 0 is handled with Euler-Maclaurin end
  /// corrections through fourth order, so the result agrees with
  /// helmholtz_invert to O(dx^6). O(n^2).
  Field green_convolve(std::span<const double> m) const;

  Field dealias(std::span<const double> f) const;
  void dealias_in_place(Spectrum& f_hat) const;

  /// Discrete H^s norm sqrt(sum (1 + k^2)^s |u_k|^2) scaled to match the
  /// continuum L2 pairing on [-L, L).
  double sobolev_norm(std::span<const double> u, double s) const;

  /// Returns F(x) = int_{-L}^x f, computed spectrally for the periodic part
  /// plus the linear contribution of the mean.
  Field antiderivative(std::span<const double> f) const;

  struct PointValue {
    double value = 0.0;
    double slope = 0.0;
  };

  /// Evaluates the trigonometric interpolant and its derivative at an
  /// arbitrary x (wrapped periodically).
  PointValue interpolate(const Spectrum& f_hat, double x) const;
  std::vector<PointValue> interpolate(const Spectrum& f_hat, std::span<const double> xs) const;

 private:
  struct Plans;

  GridSpec grid_;
  double tolerance_;
  std::vector<double> wavenumbers_;
  std::vector<double> helmholtz_symbol_;
  std::vector<double> half_k_;
  std::vector<double> kernel_;
  std::shared_ptr<const Plans> plans_;
};

/// Builds a consistent state: m = helmholtz_apply(u).
FieldState make_state(Field u, const SpectralWorkspace& ws, double t = 0.0);

/// Discrete norms with spectral u_x; every integral is the rectangle rule.
NormBundle norms(const FieldState& state, const SpectralWorkspace& ws);

}  // namespace gch
