#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "perifrac/geometry.hpp"
#include "perifrac/material.hpp"

namespace perifrac {

// Whether the boundary function is the smoothstep cutoff over an eps-wide
// layer or identically 1 (free-space test mode).
enum class OmegaMode { Boundary, One };

// omega(x): 0 on the boundary of [0,width]x[0,height], 1 at distance >= eps,
// cubic smoothstep t^2 (3 - 2t) in between.
double boundary_function(const Vec2& x, double width, double height,
                         double eps);

/// Horizon neighborhoods of the quadrature-point cloud, CSR layout.
/// Entries keep the neighbor id plus a severed bit for bonds crossing the
/// pre-crack. Bond geometry (distance, direction) is recomputed from
/// positions; weights live in the QuadPointSet.
struct NeighborTable {
  static constexpr uint32_t kSeveredBit = 0x80000000u;

  double horizon = 0.0;
  std::vector<uint64_t> offsets;  // size N+1
  std::vector<uint32_t> entries;
  std::vector<double> omega;  // cached omega(x_p)

  std::size_t point_count() const { return omega.size(); }
  std::size_t degree(std::size_t p) const {
    return offsets[p + 1] - offsets[p];
  }
  static uint32_t id(uint32_t entry) { return entry & ~kSeveredBit; }
  static bool intact(uint32_t entry) { return (entry & kSeveredBit) == 0; }
  std::size_t intact_count() const;
};

// Uniform spatial hashing with cell size eps; per-point neighbor lists sorted
// by id. dist in (0, eps) strictly; intact = false exactly when the bond
// segment properly crosses the crack.
NeighborTable build_neighbor_table(const QuadPointSet& qps, double eps,
                                   const std::optional<CrackSegment>& crack,
                                   double width, double height,
                                   OmegaMode omega_mode = OmegaMode::Boundary);

// S = ((u_y - u_x) / |y - x|) . e_{y-x}
inline double bond_strain(const Vec2& u_y, const Vec2& u_x, double dist,
                          const Vec2& dir) {
  return (u_y - u_x).dot(dir) / dist;
}

// theta at one quadrature point: horizon average of omega(y) J S |y-x|.
double hydrostatic_strain(std::size_t p, std::span<const Vec2> u_at_qp,
                          const QuadPointSet& qps, const NeighborTable& tbl,
                          const MaterialModel& mat);

// L_T + L_D at one quadrature point; theta must be precomputed for all
// points (two-pass contract).
Vec2 force_density(std::size_t p, std::span<const Vec2> u_at_qp,
                   std::span<const double> theta, const QuadPointSet& qps,
                   const NeighborTable& tbl, const MaterialModel& mat);

// Same with f'' (0) S and g''(0) theta in place of the nonlinear laws.
Vec2 linearized_force_density(std::size_t p, std::span<const Vec2> u_at_qp,
                              std::span<const double> theta,
                              const QuadPointSet& qps, const NeighborTable& tbl,
                              const MaterialModel& mat);

// Parallel passes over all quadrature points. Each point accumulates over its
// own neighbor list in fixed order, so results do not depend on the worker
// count.
void compute_hydrostatic(const QuadPointSet& qps, const NeighborTable& tbl,
                         const MaterialModel& mat, std::span<const Vec2> u,
                         std::span<double> theta_out);

void compute_forces(const QuadPointSet& qps, const NeighborTable& tbl,
                    const MaterialModel& mat, std::span<const Vec2> u,
                    std::span<const double> theta, std::span<Vec2> force_out,
                    bool linearized = false);

// Pointwise peridynamic energy densities: the |y-x|-weighted bond potential
// and the hydrostatic potential, both including the boundary function.
double bond_energy_density(std::size_t p, std::span<const Vec2> u_at_qp,
                           const QuadPointSet& qps, const NeighborTable& tbl,
                           const MaterialModel& mat);
double hydrostatic_energy_density(std::size_t p, double theta_p,
                                  const NeighborTable& tbl,
                                  const MaterialModel& mat);

// K_l action on a nodal vector (2N interleaved): FEM assembly of -L_l, so
// that v^T (K_l u) = a_l(u_h, v_h). Symmetric and linear.
void apply_linearized_operator(const Mesh& mesh, const QuadPointSet& qps,
                               const NeighborTable& tbl,
                               const MaterialModel& mat,
                               std::span<const double> u_nodal,
                               std::span<double> out);

}  // namespace perifrac
