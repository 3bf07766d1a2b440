#include "perifrac/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perifrac/fem.hpp"

namespace perifrac {

double boundary_function(const Vec2& x, double width, double height,
                         double eps) {
  const double d =
      std::min(std::min(x.x, width - x.x), std::min(x.y, height - x.y));
  const double t = d / eps;
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * (3.0 - 2.0 * t);
}

std::size_t NeighborTable::intact_count() const {
  std::size_t n = 0;
  for (const uint32_t e : entries)
    if (intact(e)) ++n;
  return n;
}

NeighborTable build_neighbor_table(const QuadPointSet& qps, double eps,
                                   const std::optional<CrackSegment>& crack,
                                   double width, double height,
                                   OmegaMode omega_mode) {
  if (eps <= 0.0) throw std::invalid_argument("horizon must be positive");
  const std::size_t n = qps.size();
  NeighborTable tbl;
  tbl.horizon = eps;
  tbl.offsets.assign(n + 1, 0);
  tbl.omega.resize(n);
  for (std::size_t p = 0; p < n; ++p)
    tbl.omega[p] = omega_mode == OmegaMode::One
                       ? 1.0
                       : boundary_function(qps.position[p], width, height, eps);

  // Bin points into an eps-sized grid over the bounding box.
  double minx = 0.0, miny = 0.0, maxx = 0.0, maxy = 0.0;
  if (n > 0) {
    minx = maxx = qps.position[0].x;
    miny = maxy = qps.position[0].y;
    for (const Vec2& pos : qps.position) {
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
  for (std::size_t p = 0; p < n; ++p) ++cell_start[cell_of(qps.position[p]) + 1];
  for (std::size_t c = 1; c < cell_start.size(); ++c)
    cell_start[c] += cell_start[c - 1];
  std::vector<uint32_t> cell_items(n);
  {
    std::vector<uint32_t> cursor(cell_start.begin(), cell_start.end() - 1);
    for (std::size_t p = 0; p < n; ++p)
      cell_items[cursor[cell_of(qps.position[p])]++] = static_cast<uint32_t>(p);
  }

  const double eps2 = eps * eps;

  // Pass 1: neighbor counts.
#pragma omp parallel for schedule(static)
  for (long long ip = 0; ip < static_cast<long long>(n); ++ip) {
    const std::size_t p = static_cast<std::size_t>(ip);
    const Vec2 xp = qps.position[p];
    const int cx = std::min(static_cast<int>((xp.x - minx) / eps), ncx - 1);
    const int cy = std::min(static_cast<int>((xp.y - miny) / eps), ncy - 1);
    uint64_t count = 0;
    for (int gy = std::max(0, cy - 1); gy <= std::min(ncy - 1, cy + 1); ++gy) {
      for (int gx = std::max(0, cx - 1); gx <= std::min(ncx - 1, cx + 1);
           ++gx) {
        const std::size_t c = static_cast<std::size_t>(gy) * ncx + gx;
        for (uint32_t k = cell_start[c]; k < cell_start[c + 1]; ++k) {
          const uint32_t q = cell_items[k];
          if (q == p) continue;
          const Vec2 dx = qps.position[q] - xp;
          const double r2 = dx.dot(dx);
          if (r2 > 0.0 && r2 < eps2) ++count;
        }
      }
    }
    tbl.offsets[p + 1] = count;
  }
  for (std::size_t p = 0; p < n; ++p) tbl.offsets[p + 1] += tbl.offsets[p];
  tbl.entries.resize(tbl.offsets[n]);

  // Pass 2: fill, mark severed bonds, sort each list by id.
#pragma omp parallel for schedule(static)
  for (long long ip = 0; ip < static_cast<long long>(n); ++ip) {
    const std::size_t p = static_cast<std::size_t>(ip);
    const Vec2 xp = qps.position[p];
    const int cx = std::min(static_cast<int>((xp.x - minx) / eps), ncx - 1);
    const int cy = std::min(static_cast<int>((xp.y - miny) / eps), ncy - 1);
    uint64_t at = tbl.offsets[p];
    for (int gy = std::max(0, cy - 1); gy <= std::min(ncy - 1, cy + 1); ++gy) {
      for (int gx = std::max(0, cx - 1); gx <= std::min(ncx - 1, cx + 1);
           ++gx) {
        const std::size_t c = static_cast<std::size_t>(gy) * ncx + gx;
        for (uint32_t k = cell_start[c]; k < cell_start[c + 1]; ++k) {
          const uint32_t q = cell_items[k];
          if (q == p) continue;
          const Vec2 dx = qps.position[q] - xp;
          const double r2 = dx.dot(dx);
          if (!(r2 > 0.0 && r2 < eps2)) continue;
          uint32_t entry = q;
          if (crack && segments_properly_cross(xp, qps.position[q], crack->p0,
                                               crack->p1))
            entry |= NeighborTable::kSeveredBit;
          tbl.entries[at++] = entry;
        }
      }
    }
    std::sort(tbl.entries.begin() + tbl.offsets[p],
              tbl.entries.begin() + tbl.offsets[p + 1],
              [](uint32_t a, uint32_t b) {
                return NeighborTable::id(a) < NeighborTable::id(b);
              });
  }
  return tbl;
}

namespace {

double horizon_volume_scale(const MaterialModel& mat, double eps) {
  double epsd = 1.0;
  for (int i = 0; i < mat.dim; ++i) epsd *= eps;
  return epsd * mat.unit_ball_volume();
}

}  // namespace

double hydrostatic_strain(std::size_t p, std::span<const Vec2> u_at_qp,
                          const QuadPointSet& qps, const NeighborTable& tbl,
                          const MaterialModel& mat) {
  const double eps = tbl.horizon;
  const double inv_eps = 1.0 / eps;
  const bool one_minus_r = mat.J.kind == InfluenceFunction::Kind::OneMinusR;
  const Vec2 xp = qps.position[p];
  const Vec2 up = u_at_qp[p];
  double acc = 0.0;
  for (uint64_t i = tbl.offsets[p]; i < tbl.offsets[p + 1]; ++i) {
    const uint32_t ent = tbl.entries[i];
    if (!NeighborTable::intact(ent)) continue;
    const uint32_t q = NeighborTable::id(ent);
    const Vec2 dx = qps.position[q] - xp;
    const double r = std::sqrt(dx.dot(dx));
    const double jval = one_minus_r ? 1.0 - r * inv_eps : 1.0;
    const Vec2 du = u_at_qp[q] - up;
    // J * S * |y-x| = J * (du . e);  weight carries omega(y).
    acc += tbl.omega[q] * qps.weight[q] * jval * (du.dot(dx) / r);
  }
  return acc / horizon_volume_scale(mat, eps);
}

namespace {

template <bool Linearized>
Vec2 force_density_impl(std::size_t p, std::span<const Vec2> u_at_qp,
                        std::span<const double> theta, const QuadPointSet& qps,
                        const NeighborTable& tbl, const MaterialModel& mat) {
  const double eps = tbl.horizon;
  const double inv_eps = 1.0 / eps;
  const bool one_minus_r = mat.J.kind == InfluenceFunction::Kind::OneMinusR;
  const double scale = horizon_volume_scale(mat, eps);
  const double pref_t = 2.0 / (scale * eps) * tbl.omega[p];
  const double pref_d = 1.0 / (scale * eps * eps) * tbl.omega[p];
  const double c = mat.f.c;
  const double beta = mat.f.beta;
  const double fpp0 = mat.f.fpp0();
  const double gpp0 = mat.g.gpp0();
  const double gp_p =
      Linearized ? gpp0 * theta[p] : mat.g.gp(theta[p]);
  const Vec2 xp = qps.position[p];
  const Vec2 up = u_at_qp[p];
  double accx = 0.0;
  double accy = 0.0;
  for (uint64_t i = tbl.offsets[p]; i < tbl.offsets[p + 1]; ++i) {
    const uint32_t ent = tbl.entries[i];
    if (!NeighborTable::intact(ent)) continue;
    const uint32_t q = NeighborTable::id(ent);
    const Vec2 dx = qps.position[q] - xp;
    const double r2 = dx.dot(dx);
    const double r = std::sqrt(r2);
    const double jval = one_minus_r ? 1.0 - r * inv_eps : 1.0;
    const Vec2 du = u_at_qp[q] - up;
    const double S = du.dot(dx) / r2;
    // (J / |y-x|) dS f(sqrt(|y-x|) S): the tension kernel. For the
    // exponential family (1/sqrt(r)) f'(sqrt(r) S) = 2 c beta S e^(-beta r
    // S^2); linearized it is f''(0) S.
    double tension;
    if constexpr (Linearized) {
      tension = jval * fpp0 * S;
    } else {
      tension = jval * 2.0 * c * beta * S * std::exp(-beta * r * S * S);
    }
    double hydro;
    if constexpr (Linearized) {
      hydro = jval * (gpp0 * theta[q] + gp_p);
    } else {
      hydro = jval * (mat.g.gp(theta[q]) + gp_p);
    }
    const double factor = (pref_t * tension + pref_d * hydro) *
                          qps.weight[q] * tbl.omega[q] / r;
    accx += factor * dx.x;
    accy += factor * dx.y;
  }
  return {accx, accy};
}

}  // namespace

Vec2 force_density(std::size_t p, std::span<const Vec2> u_at_qp,
                   std::span<const double> theta, const QuadPointSet& qps,
                   const NeighborTable& tbl, const MaterialModel& mat) {
  if (theta.size() != qps.size())
    throw std::invalid_argument("theta length does not match quad points");
  return force_density_impl<false>(p, u_at_qp, theta, qps, tbl, mat);
}

Vec2 linearized_force_density(std::size_t p, std::span<const Vec2> u_at_qp,
                              std::span<const double> theta,
                              const QuadPointSet& qps, const NeighborTable& tbl,
                              const MaterialModel& mat) {
  if (theta.size() != qps.size())
    throw std::invalid_argument("theta length does not match quad points");
  return force_density_impl<true>(p, u_at_qp, theta, qps, tbl, mat);
}

void compute_hydrostatic(const QuadPointSet& qps, const NeighborTable& tbl,
                         const MaterialModel& mat, std::span<const Vec2> u,
                         std::span<double> theta_out) {
  const long long n = static_cast<long long>(qps.size());
#pragma omp parallel for schedule(static)
  for (long long p = 0; p < n; ++p)
    theta_out[p] = hydrostatic_strain(static_cast<std::size_t>(p), u, qps, tbl,
                                      mat);
}

void compute_forces(const QuadPointSet& qps, const NeighborTable& tbl,
                    const MaterialModel& mat, std::span<const Vec2> u,
                    std::span<const double> theta, std::span<Vec2> force_out,
                    bool linearized) {
  if (theta.size() != qps.size())
    throw std::invalid_argument("theta length does not match quad points");
  const long long n = static_cast<long long>(qps.size());
  if (linearized) {
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < n; ++p)
      force_out[p] = force_density_impl<true>(static_cast<std::size_t>(p), u,
                                              theta, qps, tbl, mat);
  } else {
#pragma omp parallel for schedule(static)
    for (long long p = 0; p < n; ++p)
      force_out[p] = force_density_impl<false>(static_cast<std::size_t>(p), u,
                                               theta, qps, tbl, mat);
  }
}

double bond_energy_density(std::size_t p, std::span<const Vec2> u_at_qp,
                           const QuadPointSet& qps, const NeighborTable& tbl,
                           const MaterialModel& mat) {
  const double eps = tbl.horizon;
  const double inv_eps = 1.0 / eps;
  const bool one_minus_r = mat.J.kind == InfluenceFunction::Kind::OneMinusR;
  const Vec2 xp = qps.position[p];
  const Vec2 up = u_at_qp[p];
  double acc = 0.0;
  for (uint64_t i = tbl.offsets[p]; i < tbl.offsets[p + 1]; ++i) {
    const uint32_t ent = tbl.entries[i];
    if (!NeighborTable::intact(ent)) continue;
    const uint32_t q = NeighborTable::id(ent);
    const Vec2 dx = qps.position[q] - xp;
    const double r2 = dx.dot(dx);
    const double r = std::sqrt(r2);
    const double jval = one_minus_r ? 1.0 - r * inv_eps : 1.0;
    const Vec2 du = u_at_qp[q] - up;
    const double S = du.dot(dx) / r2;
    // |y-x| W = omega omega (J / eps) f(sqrt(r) S)
    acc += tbl.omega[q] * qps.weight[q] * jval * mat.f.f(std::sqrt(r) * S);
  }
  return tbl.omega[p] * acc /
         (eps * horizon_volume_scale(mat, eps));
}

double hydrostatic_energy_density(std::size_t p, double theta_p,
                                  const NeighborTable& tbl,
                                  const MaterialModel& mat) {
  const double eps = tbl.horizon;
  return tbl.omega[p] * mat.g.g(theta_p) / (eps * eps);
}

void apply_linearized_operator(const Mesh& mesh, const QuadPointSet& qps,
                               const NeighborTable& tbl,
                               const MaterialModel& mat,
                               std::span<const double> u_nodal,
                               std::span<double> out) {
  const std::size_t n = qps.size();
  std::vector<Vec2> u_at_qp(n);
  std::vector<double> theta(n);
  std::vector<Vec2> force(n);
  interpolate_at_quad_points(mesh, qps, u_nodal, u_at_qp);
  compute_hydrostatic(qps, tbl, mat, u_at_qp, theta);
  compute_forces(qps, tbl, mat, u_at_qp, theta, force, /*linearized=*/true);
  assemble_force(mesh, qps, force, {}, out);
  for (double& v : out) v = -v;
}

}  // namespace perifrac
