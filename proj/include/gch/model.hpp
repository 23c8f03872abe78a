#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gch {

using Field = std::vector<double>;

/// Coefficients of m_t + u m_x + 2 u_x m = alpha u_x + beta u^2 u_x + gamma u^3 u_x + Gamma u_xxx.
struct ModelParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double big_gamma = 0.0;

  /// Throws std::invalid_argument if any coefficient is not finite.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Uniform periodic grid on [-L, L) with n nodes, x_j = -L + j dx.
class GridSpec {
 public:
  double half_length() const { return half_length_; }
  int n() const { return n_; }
  double dx() const { return dx_; }
  double length() const { return 2.0 * half_length_; }

  double x(int j) const { return -half_length_ + j * dx_; }
  std::vector<double> nodes() const;

  /// Maps an arbitrary position onto [-L, L).
  double wrap(double x) const;

 private:
  friend GridSpec make_grid(double half_length, int n);
  GridSpec(double half_length, int n);

  double half_length_;
  int n_;
  double dx_;
};

/// Throws std::invalid_argument unless half_length > 0 and n is a power of two >= 16.
GridSpec make_grid(double half_length, int n);

struct FieldState {
  double t = 0.0;
  Field u;
  Field m;
};

struct NormBundle {
  double h1 = 0.0;
  double l1_m = 0.0;
  double linf_u = 0.0;
  double mass_u = 0.0;
  double mass_m = 0.0;

  bool operator==(const NormBundle&) const = default;
};

/// h(u) = (alpha + Gamma) u + (beta/3) u^3 + (gamma/4) u^4.
double eval_h(const ModelParams& params, double u);
Field eval_h(const ModelParams& params, std::span<const double> u);

/// h'(u), used for the characteristic source term d_x h(u) = h'(u) u_x.
double eval_h_prime(const ModelParams& params, double u);

/// Constants of the rotation (Coriolis) Camassa-Holm model and the
/// coefficients they induce on the generalized family.
struct RotationPreset {
  double omega = 0.0;
  double c = 0.0;
  double alpha_f = 0.0;
  double beta0 = 0.0;
  double beta_f = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  ModelParams params;
};

/// alpha = -c, beta = -omega1/alpha_f^2, gamma = -omega2/alpha_f^3, Gamma = beta0/beta_f.
/// Throws std::domain_error when beta_f vanishes (unsupported Omega).
RotationPreset rotation_preset(double omega);

}  // namespace gch
