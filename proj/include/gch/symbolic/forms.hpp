#pragma once

#include <functional>

#include "gch/symbolic/jet_poly.hpp"

namespace gch::sym {

/// A dchi + B dtau.
struct OneForm {
  JetPoly A;
  JetPoly B;

  bool operator==(const OneForm&) const = default;
};

/// C dchi ^ dtau.
struct TwoForm {
  JetPoly C;

  bool is_zero() const { return C.is_zero(); }
  bool operator==(const TwoForm&) const = default;
};

inline TwoForm operator-(const TwoForm& a, const TwoForm& b) { return {a.C - b.C}; }
inline TwoForm operator+(const TwoForm& a, const TwoForm& b) { return {a.C + b.C}; }

inline TwoForm wedge(const OneForm& a, const OneForm& b) { return {a.A * b.B - a.B * b.A}; }

using Derivation = std::function<JetPoly(const JetPoly&)>;

/// d(A dchi + B dtau) = (D_chi B - D_tau A) dchi ^ dtau.
inline TwoForm exterior_d(const OneForm& w, const Derivation& d_tau) { return {total_x(w.B) - d_tau(w.A)}; }

}  // namespace gch::sym
