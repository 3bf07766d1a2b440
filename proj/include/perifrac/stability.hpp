#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "perifrac/kernel.hpp"

namespace perifrac {

// Action of the (symmetric) linearized stiffness K_l on a nodal vector.
using OperatorFn =
    std::function<void(std::span<const double>, std::span<double>)>;

struct CflReport {
  double lambda_max = 0.0;  // largest generalized eigenvalue of K_l x = l M x
  double dt_max = 0.0;      // 2 / sqrt(lambda_max)
  int iterations = 0;
  double residual = 0.0;    // last relative eigenvalue change
  bool absolute_branch = false;  // |g''(0)| substituted to keep K_l PSD
  bool unbounded = false;        // lambda_max <= 0: no stiffness
};

// Power iteration on M^(-1/2) K_l M^(-1/2) with a seeded start vector;
// stops at relative eigenvalue change < tol or max_iter.
CflReport estimate_cfl(const OperatorFn& stiffness,
                       std::span<const double> lumped_mass,
                       uint64_t seed = 0x9e3779b97f4a7c15ull,
                       double tol = 1e-8, int max_iter = 5000);

// K_l apply for a kernel context. When g''(0) < 0 the hydrostatic part makes
// the operator indefinite; the CFL operator then uses |g''(0)| (conservative
// bound) and reports absolute_branch.
struct CflOperator {
  OperatorFn apply;
  bool absolute_branch = false;
};
CflOperator make_cfl_operator(const Mesh& mesh, const QuadPointSet& qps,
                              const NeighborTable& tbl,
                              const MaterialModel& mat);

// Discrete energy of the central-difference linearized scheme:
// E = 1/2 [ |d+u|_M^2 - dt^2/4 a_l(d+u, d+u) + a_l(ubar, ubar) ]
// with d+u = (U_{k+1} - U_k)/dt and ubar = (U_{k+1} + U_k)/2.
double discrete_energy(std::span<const double> u_k,
                       std::span<const double> u_kp1, double dt,
                       const OperatorFn& stiffness,
                       std::span<const double> lumped_mass);

}  // namespace perifrac
