#include "perifrac/integrator.hpp"

#include <cmath>
#include <unordered_set>

namespace perifrac {

void BCSpec::validate() const {
  std::unordered_set<int> seen;
  const auto check = [&](const std::vector<int>& nodes) {
    for (const int n : nodes)
      if (!seen.insert(n).second)
        throw std::invalid_argument("BC node sets are not disjoint");
  };
  check(collar_nodes);
  check(bottom_left_nodes);
  check(bottom_right_nodes);
}

void BCSpec::apply(std::span<double> u, std::span<double> v, double t) const {
  for (const int n : collar_nodes) {
    u[2 * n] = 0.0;
    u[2 * n + 1] = 0.0;
    v[2 * n] = 0.0;
    v[2 * n + 1] = 0.0;
  }
  for (const int n : bottom_left_nodes) {
    u[2 * n] = -speed * t;
    v[2 * n] = -speed;
  }
  for (const int n : bottom_right_nodes) {
    u[2 * n] = speed * t;
    v[2 * n] = speed;
  }
}

namespace {

void check_finite(const SimState& state, double limit) {
  for (const double x : state.u)
    if (!std::isfinite(x) || std::abs(x) > limit) throw BlowupError(state.k);
}

}  // namespace

void startup_step(SimState& state, const StepContext& ctx, double dt) {
  const std::size_t n = state.u.size();
  std::vector<double> f(n, 0.0);
  ctx.force(state.u, state.t, f);
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i)
    next[i] = state.u[i] + dt * state.v[i] +
              0.5 * dt * dt * f[i] / ctx.lumped_mass[i];
  for (std::size_t i = 0; i < n; ++i)
    state.v[i] = (next[i] - state.u[i]) / dt;
  state.u_prev = state.u;
  state.u = std::move(next);
  state.k = 1;
  state.t = dt;
  if (ctx.bc) ctx.bc->apply(state.u, state.v, state.t);
  check_finite(state, ctx.blowup_limit);
}

void step(SimState& state, const StepContext& ctx, double dt) {
  const std::size_t n = state.u.size();
  std::vector<double> f(n, 0.0);
  ctx.force(state.u, state.t, f);
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i)
    next[i] = dt * dt * f[i] / ctx.lumped_mass[i] + 2.0 * state.u[i] -
              state.u_prev[i];
  for (std::size_t i = 0; i < n; ++i)
    state.v[i] = (next[i] - state.u[i]) / dt;
  state.u_prev = std::move(state.u);
  state.u = std::move(next);
  state.k += 1;
  state.t = state.k * dt;
  if (ctx.bc) ctx.bc->apply(state.u, state.v, state.t);
  check_finite(state, ctx.blowup_limit);
}

void run(SimState& state, const StepContext& ctx, const TimeLoopConfig& cfg,
         const std::function<void(const SimState&)>& emit) {
  if (cfg.dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (cfg.t_end < cfg.dt)
    throw std::invalid_argument("t_end must be at least dt");
  const long long n_steps =
      static_cast<long long>(std::llround(cfg.t_end / cfg.dt));
  if (emit) emit(state);
  if (state.k == 0 && n_steps > 0) {
    startup_step(state, ctx, cfg.dt);
    if (emit && state.k % cfg.cadence == 0) emit(state);
  }
  while (state.k < n_steps) {
    step(state, ctx, cfg.dt);
    if (emit && state.k % cfg.cadence == 0) emit(state);
  }
}

}  // namespace perifrac
