#pragma once

#include <array>
#include <map>
#include <vector>

#include "gch/symbolic/jet_poly.hpp"

namespace gch::sym {

/// Coefficient of the f'''' v_xx^2 term at order eps^4: c^2/480 or c/480.
enum class HfReading { CSquared, CLinear };

const char* to_string(HfReading r);

/// Polynomials in v (jet v0 only) whose coefficients may contain parameters.
struct DubrovinAnsatz {
  JetPoly f, c, p, s;
};

JetPoly eps();
/// Coefficient of eps^k.
JetPoly eps_coefficient(const JetPoly& p, int k);

/// k-th coefficient of the binomial series of (1 - x)^(-1/2): 1, 1/2, 3/8, ...
Rational inverse_sqrt_coefficient(int k);

/// Applies (1 - eps^2 D^2)^(-1/2) truncated at eps^order.
JetPoly apply_inverse_sqrt(const JetPoly& p, int order = 4);

/// u as a series in v: v + eps^2 v_2 / 2 + 3 eps^4 v_4 / 8.
JetPoly u_in_v(int order = 4);

/// Flux Phi(u) with m_t = D Phi for the rescaled equation:
/// 3u^2/4 + alpha u + beta u^3/3 + gamma u^4/4 - eps^2 (u u_2/2 + u_1^2/4 - Gamma u_2),
/// written in the V jets standing for u.
JetPoly rescaled_flux_in_u();

/// Right side of v_t after u = (1 - eps^2 D^2)^(-1/2) v, truncated at eps^order,
/// with the sign convention v_t = -(F00 + H0) - ... Throws TruncationOverflow
/// for order > 4.
JetPoly expand_to_v(int order = 4);
/// The same as a flux: expand_to_v() = -D expand_flux_to_v().
JetPoly expand_flux_to_v(int order = 4);

JetPoly hamiltonian_density(const DubrovinAnsatz& a, HfReading reading = HfReading::CSquared);

using ParamValues = std::map<SymbolId, JetPoly>;

/// v_t - (expanded right side) evaluated on v_t = -D (delta H_f / delta v),
/// split by order eps^0, eps^2, eps^4. `params` is substituted into the result.
std::array<JetPoly, 3> dubrovin_residuals(const DubrovinAnsatz& a, HfReading reading = HfReading::CSquared,
                                          const ParamValues& params = {});

/// The same before the outer x-derivative: delta H_f / delta v - expand_flux_to_v.
std::array<JetPoly, 3> dubrovin_flux_residuals(const DubrovinAnsatz& a, HfReading reading = HfReading::CSquared,
                                               const ParamValues& params = {});

/// f = v^3/4 + alpha v^2/2 + beta v^4/12 + gamma v^5/20.
JetPoly dgh_f();
/// c = 8 (v + alpha + Gamma), p = (v + alpha + Gamma)/3, s = 0.
JetPoly dgh_c();
JetPoly dgh_p();

/// Splits a residual into equations: coefficients of every jet monomial,
/// then of every power of v.
std::vector<JetPoly> coefficient_equations(const JetPoly& residual);

struct SampleFamily {
  Rational alpha, big_gamma;
  Rational beta, gamma;
  JetPoly c;
  bool eps4_obstructed = false;
  std::vector<JetPoly> eps4_obstructions;
};

struct DubrovinAnalysis {
  HfReading reading = HfReading::CSquared;

  JetPoly f;                       // order eps^0 solution, free constants set to 0
  std::vector<SymbolId> f_free;    // integration constants left free
  bool f_matches = false;          // f == dgh_f()

  JetPoly flux_v2;                 // order eps^2 flux coefficient of v_2 (c a cubic ansatz)
  JetPoly flux_v1sq;               // order eps^2 flux coefficient of v_1^2
  bool v1sq_is_half_derivative = false;

  std::vector<JetPoly> generic_obstructions;  // in alpha, beta, gamma, Gamma after eliminating c
  std::vector<JetPoly> beta_gamma_system;     // the above split over alpha, Gamma monomials
  std::vector<std::map<SymbolId, Rational>> beta_gamma_solutions;
  bool beta_gamma_complete = false;
  bool forced_beta_gamma_zero = false;

  JetPoly c;                       // order eps^2 solution at beta = gamma = 0
  bool c_matches = false;
  JetPoly p, s;                    // order eps^4 solution at beta = gamma = 0
  bool ps_unique = false;
  bool ps_match = false;
  std::array<JetPoly, 3> residuals;  // at the claimed f, c, p, s with beta = gamma = 0
  bool residuals_vanish = false;

  std::vector<SampleFamily> samples;
  bool samples_confirm = false;    // every nontrivial sample family is obstructed at eps^4
};

DubrovinAnalysis analyze_dubrovin(HfReading reading = HfReading::CSquared);

}  // namespace gch::sym
