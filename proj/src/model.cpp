#include "gch/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gch {

void ModelParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma) ||
      !std::isfinite(big_gamma)) {
    throw std::invalid_argument("model parameters must be finite");
  }
}

GridSpec::GridSpec(double half_length, int n)
    : half_length_(half_length), n_(n), dx_(2.0 * half_length / n) {}

GridSpec make_grid(double half_length, int n) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw std::invalid_argument("grid half-length must be positive and finite");
  }
  if (n < 16 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
  return GridSpec(half_length, n);
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> xs(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) xs[static_cast<std::size_t>(j)] = x(j);
  return xs;
}

double GridSpec::wrap(double x) const {
  const double period = length();
  double shifted = std::fmod(x + half_length_, period);
  if (shifted < 0.0) shifted += period;
  // fmod can return exactly `period` after the correction for tiny negatives
  if (shifted >= period) shifted -= period;
  return shifted - half_length_;
}

double eval_h(const ModelParams& p, double u) {
  const double u2 = u * u;
  return (p.alpha + p.big_gamma) * u + (p.beta / 3.0) * u2 * u + (p.gamma / 4.0) * u2 * u2;
}

Field eval_h(const ModelParams& p, std::span<const double> u) {
  Field out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = eval_h(p, u[i]);
  return out;
}

double eval_h_prime(const ModelParams& p, double u) {
  return (p.alpha + p.big_gamma) + p.beta * u * u + p.gamma * u * u * u;
}

RotationPreset rotation_preset(double omega) {
  if (!std::isfinite(omega)) throw std::invalid_argument("Omega must be finite");
  RotationPreset r;
  r.omega = omega;
  const double c = std::sqrt(1.0 + omega * omega) - omega;
  const double c2 = c * c;
  const double one_c2 = 1.0 + c2;
  r.c = c;
  r.alpha_f = c2 / one_c2;
  r.beta0 = c * (c2 * c2 + 6.0 * c2 - 1.0) / (6.0 * one_c2 * one_c2);
  r.beta_f = (3.0 * c2 * c2 + 8.0 * c2 - 1.0) / (6.0 * one_c2 * one_c2);
  r.omega1 = -3.0 * c * (c2 - 1.0) * (c2 - 2.0) / (2.0 * std::pow(one_c2, 3));
  r.omega2 = (c2 - 1.0) * (c2 - 1.0) * (c2 - 2.0) * (8.0 * c2 - 1.0) / (2.0 * std::pow(one_c2, 5));
  if (r.beta_f == 0.0) {
    throw std::domain_error("rotation preset: beta_f vanishes, Omega unsupported");
  }
  r.params.alpha = -c;
  // + 0.0 folds the -0.0 produced at Omega = 0
  r.params.beta = -r.omega1 / (r.alpha_f * r.alpha_f) + 0.0;
  r.params.gamma = -r.omega2 / (r.alpha_f * r.alpha_f * r.alpha_f) + 0.0;
  r.params.big_gamma = r.beta0 / r.beta_f;
  return r;
}

}  // namespace gch
