#include "gch/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace gch {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

struct SpectralWorkspace::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  explicit Plans(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    double* real = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* cplx = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c = fftw_plan_dft_r2c_1d(n, real, cplx, flags);
    c2r = fftw_plan_dft_c2r_1d(n, cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
    if (r2c == nullptr || c2r == nullptr) throw std::runtime_error("FFTW plan creation failed");
  }

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

SpectralWorkspace::SpectralWorkspace(const GridSpec& grid, double tolerance)
    : grid_(grid), tolerance_(tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("spectral tolerance must be positive");
  const int n = grid.n();
  const double k0 = std::numbers::pi / grid.half_length();
  wavenumbers_.resize(size());
  helmholtz_symbol_.resize(size());
  for (int j = 0; j < n; ++j) {
    const int signed_j = j <= n / 2 ? j : j - n;
    const double k = k0 * signed_j;
    wavenumbers_[static_cast<std::size_t>(j)] = k;
    helmholtz_symbol_[static_cast<std::size_t>(j)] = 1.0 + k * k;
  }
  half_k_.assign(wavenumbers_.begin(), wavenumbers_.begin() + static_cast<long>(spectrum_size()));

  // Periodized Green kernel on s = j dx in [0, 2L), written so that large L
  // does not overflow: cosh(s - L) / (2 sinh L) = (e^{s-2L} + e^{-s}) / (2 (1 - e^{-2L})).
  const double L = grid.half_length();
  const double denom = 2.0 * (-std::expm1(-2.0 * L));
  kernel_.resize(size());
  for (int j = 0; j < n; ++j) {
    const double s = j * grid.dx();
    kernel_[static_cast<std::size_t>(j)] = (std::exp(s - 2.0 * L) + std::exp(-s)) / denom;
  }

  plans_ = std::make_shared<const Plans>(n);
}

Spectrum SpectralWorkspace::forward(std::span<const double> f) const {
  if (f.size() != size()) throw std::invalid_argument("field length does not match grid");
  std::vector<double> in(f.begin(), f.end());
  Spectrum out(spectrum_size());
  fftw_execute_dft_r2c(plans_->r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

Field SpectralWorkspace::inverse(const Spectrum& f_hat) const {
  if (f_hat.size() != spectrum_size()) throw std::invalid_argument("spectrum length does not match grid");
  Spectrum scratch(f_hat);  // c2r overwrites its input
  Field out(size());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
  const double scale = 1.0 / static_cast<double>(size());
  for (double& v : out) v *= scale;
  return out;
}

Field SpectralWorkspace::dx(std::span<const double> f) const {
  Spectrum h = forward(f);
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] *= i * half_k_[j];
  h.back() = 0.0;
  return inverse(h);
}

Field SpectralWorkspace::dxx(std::span<const double> f) const {
  Spectrum h = forward(f);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] *= -half_k_[j] * half_k_[j];
  return inverse(h);
}

Field SpectralWorkspace::helmholtz_apply(std::span<const double> u) const {
  Spectrum h = forward(u);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] *= helmholtz_symbol_[j];
  return inverse(h);
}

Field SpectralWorkspace::helmholtz_invert(std::span<const double> m) const {
  Spectrum h = forward(m);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] /= helmholtz_symbol_[j];
  return inverse(h);
}

Field SpectralWorkspace::green_convolve(std::span<const double> m) const {
  if (m.size() != size()) throw std::invalid_argument("field length does not match grid");
  const std::size_t n = size();
  const double h = grid_.dx();
  const double h2 = h * h;

  // Fourth-order central second difference for the correction terms.
  Field m2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mm2 = m[(i + n - 2) % n];
    const double mm1 = m[(i + n - 1) % n];
    const double mp1 = m[(i + 1) % n];
    const double mp2 = m[(i + 2) % n];
    m2[i] = (-mm2 + 16.0 * mm1 - 30.0 * m[i] + 16.0 * mp1 - mp2) / (12.0 * h2);
  }

  Field u(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += kernel_[j] * m[(i + n - j) % n];
    // The kernel's first and third derivatives jump by 1 across s = 0.
    u[i] = h * acc - (h2 / 12.0) * m[i] + (h2 * h2 / 720.0) * (m[i] + 3.0 * m2[i]);
  }
  return u;
}

void SpectralWorkspace::dealias_in_place(Spectrum& f_hat) const {
  const std::size_t cutoff = static_cast<std::size_t>(dealias_cutoff());
  for (std::size_t j = cutoff + 1; j < f_hat.size(); ++j) f_hat[j] = 0.0;
}

Field SpectralWorkspace::dealias(std::span<const double> f) const {
  Spectrum h = forward(f);
  dealias_in_place(h);
  return inverse(h);
}

double SpectralWorkspace::sobolev_norm(std::span<const double> u, double s) const {
  const Spectrum h = forward(u);
  const std::size_t nyq = h.size() - 1;
  double acc = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double weight = (j == 0 || j == nyq) ? 1.0 : 2.0;
    acc += weight * std::pow(helmholtz_symbol_[j], s) * std::norm(h[j]);
  }
  return std::sqrt(acc * grid_.dx() / static_cast<double>(size()));
}

Field SpectralWorkspace::antiderivative(std::span<const double> f) const {
  Spectrum h = forward(f);
  const double mean = h[0].real() / static_cast<double>(size());
  h[0] = 0.0;
  h.back() = 0.0;
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t j = 1; j + 1 < h.size(); ++j) h[j] /= i * half_k_[j];
  Field out = inverse(h);
  const double base = out[0];
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] += mean * (grid_.x(static_cast<int>(j)) + grid_.half_length()) - base;
  }
  return out;
}

SpectralWorkspace::PointValue SpectralWorkspace::interpolate(const Spectrum& f_hat, double x) const {
  if (f_hat.size() != spectrum_size()) throw std::invalid_argument("spectrum length does not match grid");
  const double theta = grid_.wrap(x) + grid_.half_length();
  const double k0 = half_k_[1];
  const std::size_t nyq = f_hat.size() - 1;
  double value = f_hat[0].real();
  double slope = 0.0;
  std::complex<double> step = std::polar(1.0, k0 * theta);
  std::complex<double> z = 1.0;
  for (std::size_t j = 1; j < nyq; ++j) {
    // Resynchronise the phasor periodically so rounding does not accumulate.
    z = (j % 64 == 0) ? std::polar(1.0, half_k_[j] * theta) : z * step;
    const std::complex<double> term = f_hat[j] * z;
    value += 2.0 * term.real();
    slope -= 2.0 * half_k_[j] * term.imag();
  }
  value += f_hat[nyq].real() * std::cos(half_k_[nyq] * theta);
  const double scale = 1.0 / static_cast<double>(size());
  return {value * scale, slope * scale};
}

std::vector<SpectralWorkspace::PointValue> SpectralWorkspace::interpolate(
    const Spectrum& f_hat, std::span<const double> xs) const {
  std::vector<PointValue> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(interpolate(f_hat, x));
  return out;
}

FieldState make_state(Field u, const SpectralWorkspace& ws, double t) {
  FieldState s;
  s.t = t;
  s.m = ws.helmholtz_apply(u);
  s.u = std::move(u);
  return s;
}

NormBundle norms(const FieldState& state, const SpectralWorkspace& ws) {
  const double dx = ws.grid().dx();
  const Field ux = ws.dx(state.u);
  NormBundle b;
  double h1sq = 0.0;
  for (std::size_t j = 0; j < state.u.size(); ++j) {
    const double u = state.u[j];
    h1sq += u * u + ux[j] * ux[j];
    b.linf_u = std::max(b.linf_u, std::abs(u));
    b.mass_u += u;
  }
  for (double m : state.m) {
    b.l1_m += std::abs(m);
    b.mass_m += m;
  }
  b.h1 = std::sqrt(h1sq * dx);
  b.l1_m *= dx;
  b.mass_u *= dx;
  b.mass_m *= dx;
  return b;
}

}  // namespace gch
