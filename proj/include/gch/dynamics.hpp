#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include "gch/model.hpp"
#include "gch/spectral.hpp"

namespace gch {

/// Time derivative of u in evolution form:
///   u_t = -(u + Gamma) u_x - Lambda^{-2} d_x (u^2 + u_x^2 / 2 - h(u)).
/// With dealias set, u is first filtered to the 2/3 band and every nonlinear
/// product is projected back onto it.
Field rhs(std::span<const double> u, const ModelParams& params, const SpectralWorkspace& ws,
          bool dealias = false);
Field rhs(const FieldState& state, const ModelParams& params, const SpectralWorkspace& ws,
          bool dealias = false);

/// Lagrangian markers following q' = u(t, q) + Gamma, q(0) = x0.
/// Besides q and q_x the state carries two running integrals:
/// log_qx = int_0^t u_x(s, q) ds (a second route to q_x) and
/// source = int_0^t q_x^2 d_x h(u)(s, q) ds.
struct CharacteristicsState {
  std::vector<double> x0;
  std::vector<double> q;  // wrapped into [-L, L)
  std::vector<long> winding;
  std::vector<double> qx;
  std::vector<double> log_qx;
  std::vector<double> source;
  std::vector<double> m0;  // m(0, x0)
  std::size_t wrap_events = 0;

  std::size_t size() const { return q.size(); }
  /// Unwrapped position q + 2L * winding.
  double position(std::size_t i, double half_length) const {
    return q[i] + 2.0 * half_length * static_cast<double>(winding[i]);
  }
};

CharacteristicsState seed_characteristics(const FieldState& state, const SpectralWorkspace& ws,
                                          std::span<const double> markers);

/// One classical RK4 step; m is refreshed from u afterwards. If chars is
/// non-null the markers are advanced in the same stages as the field.
/// Throws NonFiniteError when the new state contains NaN or Inf.
FieldState step_rk4(const FieldState& state, double dt, const ModelParams& params,
                    const SpectralWorkspace& ws, bool dealias = false,
                    CharacteristicsState* chars = nullptr);

/// Advances the markers over one RK4 step of the field that starts at state.
CharacteristicsState advance_characteristics(const CharacteristicsState& chars, const FieldState& state,
                                             double dt, const ModelParams& params,
                                             const SpectralWorkspace& ws, bool dealias = false);

struct NonFiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationControls {
  double t_end = 1.0;
  double dt_max = 1e-2;
  double cfl = 0.5;
  double dt_min = 1e-10;
  double cfl_floor = 1e-14;  // added to the CFL denominator
  /// dt <= slope_dt / |min u_x| when positive; resolves the slope's own time scale.
  double slope_dt = 0.05;
  double output_interval = 0.1;
  bool dealias = true;
  /// Boundary contamination when max |u| over the outer 1% of the box exceeds
  /// boundary_tol * max |u0|.
  double boundary_tol = 1e-3;
  /// Stops the run once min u_x drops below -slope_stop.
  double slope_stop = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;
  std::vector<double> markers;
  bool keep_states = true;
};

enum class StopReason { ReachedEnd, BlowupTrigger, DtUnderflow, NonFinite, StepLimit };

std::string to_string(StopReason r);
std::optional<StopReason> stop_reason_from_string(const std::string& s);

struct IntegrationStatus {
  StopReason stop = StopReason::ReachedEnd;
  double t_stop = 0.0;
  std::size_t steps = 0;
  bool boundary_contaminated = false;
  double boundary_time = 0.0;
  double max_boundary = 0.0;

  bool operator==(const IntegrationStatus&) const = default;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<FieldState> states;  // empty unless keep_states
  std::vector<double> dt_history;  // every accepted step
  std::vector<CharacteristicsState> characteristics;  // one per output time when markers are seeded
};

/// Invoked at t = 0, at every output time and at the final state.
/// dt_last is the step that produced the state (0 at the start).
using OutputObserver =
    std::function<void(const FieldState&, const CharacteristicsState*, double dt_last)>;

struct IntegrationResult {
  Trajectory trajectory;
  IntegrationStatus status;
  FieldState final_state;
};

/// Step size from the CFL rule, the slope limit and the controls.
double choose_dt(const FieldState& state, const SpectralWorkspace& ws, const ModelParams& params,
                 const IntegrationControls& controls, std::span<const double> ux);

IntegrationResult integrate(Field u0, const ModelParams& params, const SpectralWorkspace& ws,
                            const IntegrationControls& controls, const OutputObserver& observer = {});

}  // namespace gch
