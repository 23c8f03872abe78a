#pragma once

#include <array>

#include "gch/symbolic/forms.hpp"

namespace gch::sym {

enum class SignChoice { Upper, Lower };

/// Time derivative on the jet space: D_tau v_k = vt_k. Parameters are constant.
JetPoly total_tau(const JetPoly& p);

/// n = v - v_2 in the jet variables.
JetPoly momentum_n();
/// n_tau = vt - vt_2.
JetPoly momentum_n_tau();

/// Replaces n_tau by an expression in v-jets: vt -> vt_2 + rhs and
/// vt_1 -> vt_3 + D_chi rhs.
struct PdeRule {
  JetPoly n_tau;

  JetPoly apply(const JetPoly& p) const;
};

/// n_tau = -v n_chi - 2 v_chi n + alpha v_chi + Gamma v_chichichi.
PdeRule dgh_rule();

/// Left-minus-right side of n_tau + v n_chi + 2 v_chi n = alpha v_chi + Gamma v_chichichi.
JetPoly dgh_pde_polynomial();

/// eta^2 -> 2 + 2b + alpha + Gamma.
JetPoly eta_relation();
JetPoly normalize_eta(const JetPoly& p);

/// The triplet in the moving frame (tau, chi) with symbolic alpha, Gamma, b, eta.
std::array<OneForm, 3> pss_triplet(SignChoice sign);

/// Triplet in the original frame (t, x) at Gamma = 0, written with v for u
/// and n for m; the coefficient of dx goes in A and that of dt in B.
std::array<OneForm, 3> static_frame_triplet(SignChoice sign);

/// Pullback with dt -> dtau, dx -> dchi - Gamma dtau: A dx + B dt -> A dchi + (B - Gamma A) dtau.
OneForm pullback_moving_frame(const OneForm& w);

struct PssResiduals {
  /// d th1 - th3^th2, d th2 - th1^th3, d th3 - th1^th2 after the eta rewrite.
  std::array<TwoForm, 3> raw;
  /// The same after n_tau has been eliminated with the PDE.
  std::array<TwoForm, 3> reduced;
};

PssResiduals pss_residuals(SignChoice sign);

}  // namespace gch::sym
