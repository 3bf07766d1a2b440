#pragma once

#include <optional>
#include <span>
#include <vector>

#include "perifrac/fem.hpp"
#include "perifrac/kernel.hpp"

namespace perifrac {

/// Node-to-node bonds within the horizon (distinct from the quadrature-point
/// table); damage treats mesh edges between nodes as bonds.
struct NodeNeighborTable {
  double horizon = 0.0;
  std::vector<uint64_t> offsets;
  std::vector<uint32_t> entries;  // neighbor node id | severed bit

  std::size_t node_count() const { return offsets.size() - 1; }
};

NodeNeighborTable build_node_neighbor_table(
    const Mesh& mesh, double eps, const std::optional<CrackSegment>& crack);

struct DamageField {
  std::vector<double> z;  // per node, >= 0
};

// Z(x) = max over intact neighbor nodes of S(y,x;u) / S_c+(|y-x|), clamped
// at 0.
DamageField damage_field(std::span<const double> u_nodal, const Mesh& mesh,
                         const NodeNeighborTable& bonds,
                         const MaterialModel& mat);

// Peridynamic energy restricted to quad points whose interpolated Z >= 1.
double crack_zone_energy(const Mesh& mesh, const QuadPointSet& qps,
                         const NeighborTable& tbl, const MaterialModel& mat,
                         std::span<const Vec2> u_at_qp,
                         std::span<const double> theta,
                         const DamageField& damage);

// G.E. = Gc * l
double griffith_energy(double fracture_toughness, double crack_length);

// Initial length plus the vertical extent of the connected Z >= 1 node region
// grown from the initial tip; spurious disconnected islands are ignored.
double crack_length(const DamageField& damage, const Mesh& mesh,
                    const CrackSegment& crack, double eps);

struct EnergyReport {
  double kinetic = 0.0;       // 1/2 V^T M V
  double potential_pd = 0.0;  // PD energy (bond + hydrostatic)
  double total = 0.0;         // kinetic + potential_pd
  double pe_crack = 0.0;      // PD energy of the Z >= 1 zone
  double ge = 0.0;            // Griffith energy Gc * l
  double crack_len = 0.0;
};

EnergyReport total_energy(std::span<const double> v_nodal,
                          std::span<const Vec2> u_at_qp,
                          std::span<const double> theta, const Mesh& mesh,
                          const QuadPointSet& qps, const NeighborTable& tbl,
                          const MaterialModel& mat,
                          std::span<const double> lumped_mass,
                          const DamageField* damage = nullptr,
                          double fracture_toughness = 0.0);

// alpha = (log |u1-u2| - log |u2-u3|) / log r with weighted discrete L2
// norms; fields sampled on a common comparison grid.
double convergence_rate(std::span<const Vec2> u1, std::span<const Vec2> u2,
                        std::span<const Vec2> u3,
                        std::span<const double> weights, double ratio);

// Area-averaged nodal xx component of the symmetric displacement gradient.
std::vector<double> strain_xx_nodal(const Mesh& mesh,
                                    std::span<const double> u_nodal);

}  // namespace perifrac
