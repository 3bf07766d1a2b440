#pragma once

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace perifrac {

/// Raised when the state leaves the admissible range; carries the step.
struct BlowupError : std::runtime_error {
  long long step;
  explicit BlowupError(long long k)
      : std::runtime_error("numerical blow-up at step " + std::to_string(k)),
        step(k) {}
};

struct SimState {
  std::vector<double> u;       // U_k
  std::vector<double> u_prev;  // U_{k-1}
  std::vector<double> v;       // V_k
  double t = 0.0;
  long long k = 0;
};

/// Strong nodal constraints applied after every update: the top collar is
/// clamped, the bottom strips on either side of the crack get a prescribed
/// x-velocity (and the matching x-displacement); y stays free there.
struct BCSpec {
  std::vector<int> collar_nodes;
  std::vector<int> bottom_left_nodes;
  std::vector<int> bottom_right_nodes;
  double speed = 0.0;  // magnitude of the prescribed x-velocity

  void validate() const;  // predicates must be disjoint
  void apply(std::span<double> u, std::span<double> v, double t) const;
};

struct TimeLoopConfig {
  double dt = 0.0;
  double t_end = 0.0;
  long long cadence = 1;
  bool linearized = false;
};

// Assembled right-hand side F(u, t) = F_pd + F_body.
using ForceFn =
    std::function<void(std::span<const double>, double, std::span<double>)>;

struct StepContext {
  ForceFn force;
  std::span<const double> lumped_mass;
  const BCSpec* bc = nullptr;
  double blowup_limit = std::numeric_limits<double>::infinity();
};

// U_1 = U_0 + dt V_0 + dt^2/2 M^-1 F(U_0, 0); advances state to k = 1.
void startup_step(SimState& state, const StepContext& ctx, double dt);

// U_{k+1} = dt^2 M^-1 F^k + 2 U_k - U_{k-1}; V_{k+1} = (U_{k+1} - U_k)/dt.
void step(SimState& state, const StepContext& ctx, double dt);

// Startup then steps to t_end, emitting at k = 0 and every cadence-th step.
void run(SimState& state, const StepContext& ctx, const TimeLoopConfig& cfg,
         const std::function<void(const SimState&)>& emit);

}  // namespace perifrac
