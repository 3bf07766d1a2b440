#include "perifrac/stability.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace perifrac {

CflReport estimate_cfl(const OperatorFn& stiffness,
                       std::span<const double> lumped_mass, uint64_t seed,
                       double tol, int max_iter) {
  const std::size_t n = lumped_mass.size();
  std::vector<double> inv_sqrt_m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lumped_mass[i] <= 0.0)
      throw std::invalid_argument("lumped mass must be positive");
    inv_sqrt_m[i] = 1.0 / std::sqrt(lumped_mass[i]);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> w(n);
  for (double& x : w) x = dist(rng);

  std::vector<double> z(n);
  std::vector<double> kz(n);
  CflReport report;
  double lambda_prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    double norm = 0.0;
    for (const double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    for (double& x : w) x /= norm;
    // A w = M^(-1/2) K M^(-1/2) w
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_sqrt_m[i] * w[i];
    stiffness(z, kz);
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_sqrt_m[i] * kz[i];
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += w[i] * z[i];
    report.iterations = it;
    report.lambda_max = lambda;
    report.residual = std::abs(lambda - lambda_prev) /
                      std::max(std::abs(lambda), 1e-300);
    if (it > 1 && report.residual < tol) break;
    lambda_prev = lambda;
    w = z;
  }

  if (report.lambda_max <= 0.0) {
    report.unbounded = true;
    report.dt_max = std::numeric_limits<double>::infinity();
  } else {
    report.dt_max = 2.0 / std::sqrt(report.lambda_max);
  }
  return report;
}

CflOperator make_cfl_operator(const Mesh& mesh, const QuadPointSet& qps,
                              const NeighborTable& tbl,
                              const MaterialModel& mat) {
  CflOperator op;
  MaterialModel cfl_mat = mat;
  if (mat.g.gpp0() < 0.0) {
    cfl_mat.g = HydrostaticPotential::quadratic(std::abs(mat.g.gpp0()));
    op.absolute_branch = true;
  }
  op.apply = [&mesh, &qps, &tbl, cfl_mat](std::span<const double> u,
                                          std::span<double> out) {
    apply_linearized_operator(mesh, qps, tbl, cfl_mat, u, out);
  };
  return op;
}

double discrete_energy(std::span<const double> u_k,
                       std::span<const double> u_kp1, double dt,
                       const OperatorFn& stiffness,
                       std::span<const double> lumped_mass) {
  const std::size_t n = u_k.size();
  std::vector<double> du(n);
  std::vector<double> ubar(n);
  for (std::size_t i = 0; i < n; ++i) {
    du[i] = (u_kp1[i] - u_k[i]) / dt;
    ubar[i] = 0.5 * (u_kp1[i] + u_k[i]);
  }
  std::vector<double> tmp(n);
  double kinetic = 0.0;
  for (std::size_t i = 0; i < n; ++i) kinetic += lumped_mass[i] * du[i] * du[i];
  stiffness(du, tmp);
  double a_du = 0.0;
  for (std::size_t i = 0; i < n; ++i) a_du += du[i] * tmp[i];
  stiffness(ubar, tmp);
  double a_bar = 0.0;
  for (std::size_t i = 0; i < n; ++i) a_bar += ubar[i] * tmp[i];
  return 0.5 * (kinetic - 0.25 * dt * dt * a_du + a_bar);
}

}  // namespace perifrac
