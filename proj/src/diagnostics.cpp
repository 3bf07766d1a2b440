#include "perifrac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace perifrac {

NodeNeighborTable build_node_neighbor_table(
    const Mesh& mesh, double eps, const std::optional<CrackSegment>& crack) {
  const std::size_t n = mesh.node_count();
  NodeNeighborTable tbl;
  tbl.horizon = eps;
  tbl.offsets.assign(n + 1, 0);

  double minx = 0.0, miny = 0.0, maxx = 0.0, maxy = 0.0;
  if (n > 0) {
    minx = maxx = mesh.nodes[0].x;
    miny = maxy = mesh.nodes[0].y;
    for (const Vec2& pos : mesh.nodes) {
      minx = std::min(minx, pos.x);
      maxx = std::max(maxx, pos.x);
      miny = std::min(miny, pos.y);
      maxy = std::max(maxy, pos.y);
    }
  }
  const int ncx = std::max(1, static_cast<int>((maxx - minx) / eps) + 1);
  const int ncy = std::max(1, static_cast<int>((maxy - miny) / eps) + 1);
  const auto cell_of = [&](const Vec2& pos) {
    const int cx = std::min(static_cast<int>((pos.x - minx) / eps), ncx - 1);
    const int cy = std::min(static_cast<int>((pos.y - miny) / eps), ncy - 1);
    return cy * ncx + cx;
  };
  std::vector<uint32_t> cell_start(static_cast<std::size_t>(ncx) * ncy + 1, 0);
  for (std::size_t p = 0; p < n; ++p) ++cell_start[cell_of(mesh.nodes[p]) + 1];
  for (std::size_t c = 1; c < cell_start.size(); ++c)
    cell_start[c] += cell_start[c - 1];
  std::vector<uint32_t> cell_items(n);
  {
    std::vector<uint32_t> cursor(cell_start.begin(), cell_start.end() - 1);
    for (std::size_t p = 0; p < n; ++p)
      cell_items[cursor[cell_of(mesh.nodes[p])]++] = static_cast<uint32_t>(p);
  }
  const double eps2 = eps * eps;
  std::vector<std::vector<uint32_t>> lists(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Vec2 xp = mesh.nodes[p];
    const int cx = std::min(static_cast<int>((xp.x - minx) / eps), ncx - 1);
    const int cy = std::min(static_cast<int>((xp.y - miny) / eps), ncy - 1);
    for (int gy = std::max(0, cy - 1); gy <= std::min(ncy - 1, cy + 1); ++gy) {
      for (int gx = std::max(0, cx - 1); gx <= std::min(ncx - 1, cx + 1);
           ++gx) {
        const std::size_t c = static_cast<std::size_t>(gy) * ncx + gx;
        for (uint32_t k = cell_start[c]; k < cell_start[c + 1]; ++k) {
          const uint32_t q = cell_items[k];
          if (q == p) continue;
          const Vec2 dx = mesh.nodes[q] - xp;
          const double r2 = dx.dot(dx);
          if (!(r2 > 0.0 && r2 < eps2)) continue;
          uint32_t entry = q;
          if (crack && segments_properly_cross(xp, mesh.nodes[q], crack->p0,
                                               crack->p1))
            entry |= NeighborTable::kSeveredBit;
          lists[p].push_back(entry);
        }
      }
    }
    std::sort(lists[p].begin(), lists[p].end(), [](uint32_t a, uint32_t b) {
      return NeighborTable::id(a) < NeighborTable::id(b);
    });
    tbl.offsets[p + 1] = tbl.offsets[p] + lists[p].size();
  }
  tbl.entries.reserve(tbl.offsets[n]);
  for (const auto& l : lists)
    tbl.entries.insert(tbl.entries.end(), l.begin(), l.end());
  return tbl;
}

DamageField damage_field(std::span<const double> u_nodal, const Mesh& mesh,
                         const NodeNeighborTable& bonds,
                         const MaterialModel& mat) {
  const std::size_t n = mesh.node_count();
  DamageField field;
  field.z.assign(n, 0.0);
  const double rp = mat.damage_r_plus();
  const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long ip = 0; ip < nn; ++ip) {
    const std::size_t p = static_cast<std::size_t>(ip);
    const Vec2 xp = mesh.nodes[p];
    const Vec2 up{u_nodal[2 * p], u_nodal[2 * p + 1]};
    double z = 0.0;
    for (uint64_t i = bonds.offsets[p]; i < bonds.offsets[p + 1]; ++i) {
      const uint32_t ent = bonds.entries[i];
      if (!NeighborTable::intact(ent)) continue;
      const uint32_t q = NeighborTable::id(ent);
      const Vec2 dx = mesh.nodes[q] - xp;
      const double r = dx.norm();
      const Vec2 uq{u_nodal[2 * q], u_nodal[2 * q + 1]};
      const double S = (uq - up).dot(dx) / (r * r);
      // S_c+ = r+ / sqrt(r)
      z = std::max(z, S * std::sqrt(r) / rp);
    }
    field.z[p] = z;
  }
  return field;
}

double crack_zone_energy(const Mesh& mesh, const QuadPointSet& qps,
                         const NeighborTable& tbl, const MaterialModel& mat,
                         std::span<const Vec2> u_at_qp,
                         std::span<const double> theta,
                         const DamageField& damage) {
  const long long n = static_cast<long long>(qps.size());
  std::vector<double> density(qps.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (long long ip = 0; ip < n; ++ip) {
    const std::size_t p = static_cast<std::size_t>(ip);
    const auto& el = mesh.elements[qps.element[p]];
    const auto& b = qps.bary[p];
    const double z = b[0] * damage.z[el[0]] + b[1] * damage.z[el[1]] +
                     b[2] * damage.z[el[2]];
    if (z < 1.0) continue;
    density[p] = bond_energy_density(p, u_at_qp, qps, tbl, mat) +
                 hydrostatic_energy_density(p, theta[p], tbl, mat);
  }
  double pe = 0.0;
  for (std::size_t p = 0; p < qps.size(); ++p) pe += qps.weight[p] * density[p];
  return pe;
}

double griffith_energy(double fracture_toughness, double crack_length) {
  if (crack_length < 0.0)
    throw std::invalid_argument("crack length must be nonnegative");
  return fracture_toughness * crack_length;
}

double crack_length(const DamageField& damage, const Mesh& mesh,
                    const CrackSegment& crack, double eps) {
  const Vec2 tip = crack.p0.y >= crack.p1.y ? crack.p0 : crack.p1;
  const double init_len = (crack.p1 - crack.p0).norm();

  // Node adjacency from shared element edges.
  const std::size_t n = mesh.node_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& el : mesh.elements) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i != j) adj[el[i]].push_back(el[j]);
      }
    }
  }

  std::vector<char> in_zone(n, 0);
  for (std::size_t i = 0; i < n; ++i) in_zone[i] = damage.z[i] >= 1.0;

  // Flood from damaged nodes within one horizon of the initial tip.
  std::vector<char> visited(n, 0);
  std::queue<int> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_zone[i] && (mesh.nodes[i] - tip).norm() <= eps) {
      visited[i] = 1;
      frontier.push(static_cast<int>(i));
    }
  }
  double max_y = tip.y;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    max_y = std::max(max_y, mesh.nodes[i].y);
    for (const int j : adj[i]) {
      if (in_zone[j] && !visited[j]) {
        visited[j] = 1;
        frontier.push(j);
      }
    }
  }
  return init_len + (max_y - tip.y);
}

EnergyReport total_energy(std::span<const double> v_nodal,
                          std::span<const Vec2> u_at_qp,
                          std::span<const double> theta, const Mesh& mesh,
                          const QuadPointSet& qps, const NeighborTable& tbl,
                          const MaterialModel& mat,
                          std::span<const double> lumped_mass,
                          const DamageField* damage,
                          double fracture_toughness) {
  EnergyReport report;
  for (std::size_t i = 0; i < v_nodal.size(); ++i)
    report.kinetic += 0.5 * lumped_mass[i] * v_nodal[i] * v_nodal[i];

  const long long n = static_cast<long long>(qps.size());
  std::vector<double> density(qps.size());
#pragma omp parallel for schedule(static)
  for (long long ip = 0; ip < n; ++ip) {
    const std::size_t p = static_cast<std::size_t>(ip);
    density[p] = bond_energy_density(p, u_at_qp, qps, tbl, mat) +
                 hydrostatic_energy_density(p, theta[p], tbl, mat);
  }
  for (std::size_t p = 0; p < qps.size(); ++p)
    report.potential_pd += qps.weight[p] * density[p];
  report.total = report.kinetic + report.potential_pd;

  if (damage) {
    report.pe_crack =
        crack_zone_energy(mesh, qps, tbl, mat, u_at_qp, theta, *damage);
    if (mesh.crack) {
      report.crack_len = crack_length(*damage, mesh, *mesh.crack, mat.horizon);
      report.ge = griffith_energy(fracture_toughness, report.crack_len);
    }
  }
  return report;
}

double convergence_rate(std::span<const Vec2> u1, std::span<const Vec2> u2,
                        std::span<const Vec2> u3,
                        std::span<const double> weights, double ratio) {
  if (ratio <= 1.0)
    throw std::invalid_argument("mesh ratio must be greater than 1");
  if (u1.size() != weights.size() || u2.size() != weights.size() ||
      u3.size() != weights.size())
    throw std::invalid_argument("fields must share the comparison grid");
  double n12 = 0.0;
  double n23 = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Vec2 d12 = u1[i] - u2[i];
    const Vec2 d23 = u2[i] - u3[i];
    n12 += weights[i] * d12.dot(d12);
    n23 += weights[i] * d23.dot(d23);
  }
  n12 = std::sqrt(n12);
  n23 = std::sqrt(n23);
  if (n12 == 0.0 || n23 == 0.0)
    throw std::invalid_argument("identical fields have no convergence rate");
  return (std::log(n12) - std::log(n23)) / std::log(ratio);
}

std::vector<double> strain_xx_nodal(const Mesh& mesh,
                                    std::span<const double> u_nodal) {
  const std::size_t n = mesh.node_count();
  std::vector<double> acc(n, 0.0);
  std::vector<double> area(n, 0.0);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const Vec2& a = mesh.nodes[el[0]];
    const Vec2& b = mesh.nodes[el[1]];
    const Vec2& c = mesh.nodes[el[2]];
    const double two_a = (b - a).cross(c - a);
    // grad phi_i = rot90(opposite edge) / (2A)
    const Vec2 ga{(b.y - c.y) / two_a, (c.x - b.x) / two_a};
    const Vec2 gb{(c.y - a.y) / two_a, (a.x - c.x) / two_a};
    const Vec2 gc{(a.y - b.y) / two_a, (b.x - a.x) / two_a};
    const double exx = u_nodal[2 * el[0]] * ga.x + u_nodal[2 * el[1]] * gb.x +
                       u_nodal[2 * el[2]] * gc.x;
    const double ae = 0.5 * two_a;
    for (int i = 0; i < 3; ++i) {
      acc[el[i]] += 2.0 * exx * ae;  // xx of grad u + grad u^T
      area[el[i]] += ae;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (area[i] > 0.0) acc[i] /= area[i];
  return acc;
}

}  // namespace perifrac
