#pragma once

#include <optional>
#include <span>
#include <string>

#include "gch/model.hpp"
#include "gch/spectral.hpp"

namespace gch {

/// K = 4 max{|alpha|, |beta|/3, |gamma|/4, |Gamma|}.
double k_of(const ModelParams& params);

/// Largest admissible sigma, 1 / (1 + 36 K).
double sigma_default(double K);

/// Returns sigma after checking 0 < sigma <= 1 / (1 + 36 K); throws std::invalid_argument otherwise.
double validate_sigma(double sigma, double K);

/// p in {1, 3, 4} such that h1^p = max{h1, h1^3, h1^4}. Ties at h1 = 1 go to 4.
/// Throws std::domain_error for h1 <= 0 (degenerate data).
int p_exponent(double h1);

enum class PatternKind { SingleSign, NegThenPos };

std::string to_string(PatternKind k);
std::optional<PatternKind> pattern_kind_from_string(const std::string& s);

struct BreakingCertificate {
  double K = 0.0;
  double sigma = 0.0;
  int p = 0;
  double h1 = 0.0;
  double y0 = 0.0;
  double x_star = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool degenerate = false;
  double eps = 0.0;      // meaningful only when holds
  double t_bound = 0.0;  // 4 / (eps |y0|), meaningful only when holds

  bool operator==(const BreakingCertificate&) const = default;
};

/// Evaluates the steep-slope breaking criterion on sampled data:
/// holds iff sqrt(2 sigma) y0 < min{-h1, -h1^(p/2)} with y0 = min u0'.
BreakingCertificate breaking_certificate(std::span<const double> u0, const ModelParams& params,
                                         const SpectralWorkspace& ws,
                                         std::optional<double> sigma_override = std::nullopt);

struct GlobalCertificate {
  PatternKind kind = PatternKind::SingleSign;
  std::optional<double> x0;
  double l1_m0 = 0.0;
  double h1_u0 = 0.0;
  bool holds = false;
  bool degenerate = false;  // m0 vanishes identically at the threshold
  double slope_floor = 0.0;

  bool operator==(const GlobalCertificate&) const = default;
};

/// Default sign threshold: entries with |m| <= rel * max|m| count as zero.
inline constexpr double kDefaultSignTolerance = 1e-8;

/// Tests the sign pattern of m0 required by the global existence results.
/// The threshold is tol_sign * max|m0|.
GlobalCertificate global_certificate(std::span<const double> u0, std::span<const double> m0,
                                     const SpectralWorkspace& ws, PatternKind kind,
                                     double tol_sign = kDefaultSignTolerance);

}  // namespace gch
