#include "perifrac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace perifrac {

QuadratureRule QuadratureRule::triangle_degree2() {
  QuadratureRule rule;
  rule.points = {{{0.5, 0.5, 0.0}}, {{0.0, 0.5, 0.5}}, {{0.5, 0.0, 0.5}}};
  rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  rule.degree = 2;
  return rule;
}

QuadratureRule QuadratureRule::triangle_centroid() {
  QuadratureRule rule;
  rule.points = {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}};
  rule.weights = {1.0};
  rule.degree = 1;
  return rule;
}

double Mesh::element_area(int e) const {
  const auto& el = elements[e];
  const Vec2 d1 = nodes[el[1]] - nodes[el[0]];
  const Vec2 d2 = nodes[el[2]] - nodes[el[0]];
  return 0.5 * d1.cross(d2);
}

double Mesh::domain_area() const {
  double area = 0.0;
  for (std::size_t e = 0; e < elements.size(); ++e)
    area += element_area(static_cast<int>(e));
  return area;
}

int Mesh::locate(const Vec2& p) const {
  if (nx > 0 && ny > 0) {
    if (p.x < -1e-12 || p.y < -1e-12 || p.x > width + 1e-12 ||
        p.y > height + 1e-12)
      return -1;
    int ix = std::min(static_cast<int>(std::floor(p.x / h)), nx - 1);
    int iy = std::min(static_cast<int>(std::floor(p.y / h)), ny - 1);
    ix = std::max(ix, 0);
    iy = std::max(iy, 0);
    const double lx = p.x - ix * h;
    const double ly = p.y - iy * h;
    return 2 * (iy * nx + ix) + (ly > lx ? 1 : 0);
  }
  // Hand-built meshes: linear scan.
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto b = barycentric(static_cast<int>(e), p);
    if (b[0] >= -1e-12 && b[1] >= -1e-12 && b[2] >= -1e-12)
      return static_cast<int>(e);
  }
  return -1;
}

std::array<double, 3> Mesh::barycentric(int e, const Vec2& p) const {
  const auto& el = elements[e];
  const Vec2& a = nodes[el[0]];
  const Vec2& b = nodes[el[1]];
  const Vec2& c = nodes[el[2]];
  const double denom = (b - a).cross(c - a);
  const double l1 = (b - p).cross(c - p) / denom;
  const double l2 = (c - p).cross(a - p) / denom;
  return {l1, l2, 1.0 - l1 - l2};
}

namespace {

// h must divide extent to 1e-9 relative.
int divisions(double extent, double h, const char* name) {
  const double ratio = extent / h;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
    std::ostringstream msg;
    msg << "mesh size h=" << h << " does not divide " << name << "=" << extent;
    throw std::invalid_argument(msg.str());
  }
  return static_cast<int>(rounded);
}

bool on_grid(double v, double h) {
  const double r = v / h;
  return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, std::abs(r));
}

}  // namespace

Mesh build_uniform_mesh(double width, double height, double h,
                        std::optional<CrackSegment> crack) {
  if (h <= 0.0) throw std::invalid_argument("mesh size h must be positive");
  Mesh mesh;
  mesh.width = width;
  mesh.height = height;
  mesh.h = h;
  mesh.nx = divisions(width, h, "width");
  mesh.ny = divisions(height, h, "height");

  if (crack) {
    const Vec2 p0 = crack->p0;
    const Vec2 p1 = crack->p1;
    const bool vertical = p0.x == p1.x;
    const bool horizontal = p0.y == p1.y;
    if ((!vertical && !horizontal) || (p0.x == p1.x && p0.y == p1.y))
      throw std::invalid_argument(
          "crack must be a nondegenerate axis-aligned segment");
    if (!on_grid(p0.x, h) || !on_grid(p0.y, h) || !on_grid(p1.x, h) ||
        !on_grid(p1.y, h))
      throw std::invalid_argument("crack endpoints must lie on mesh lines");
    const auto inside = [&](const Vec2& p) {
      return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    };
    if (!inside(p0) || !inside(p1))
      throw std::invalid_argument("crack must lie inside the closed domain");
    mesh.crack = crack;
  }

  const int nxn = mesh.nx + 1;
  const int nyn = mesh.ny + 1;
  mesh.nodes.reserve(static_cast<std::size_t>(nxn) * nyn);
  mesh.node_tags.reserve(static_cast<std::size_t>(nxn) * nyn);
  for (int iy = 0; iy < nyn; ++iy) {
    for (int ix = 0; ix < nxn; ++ix) {
      mesh.nodes.emplace_back(ix * h, iy * h);
      uint8_t tag = TagInterior;
      if (ix == 0) tag |= TagLeft;
      if (ix == mesh.nx) tag |= TagRight;
      if (iy == 0) tag |= TagBottom;
      if (iy == mesh.ny) tag |= TagTop;
      mesh.node_tags.push_back(tag);
    }
  }

  mesh.elements.reserve(static_cast<std::size_t>(mesh.nx) * mesh.ny * 2);
  for (int iy = 0; iy < mesh.ny; ++iy) {
    for (int ix = 0; ix < mesh.nx; ++ix) {
      const int a = iy * nxn + ix;
      const int b = a + 1;
      const int c = b + nxn;
      const int d = a + nxn;
      mesh.elements.push_back({a, b, c});
      mesh.elements.push_back({a, c, d});
    }
  }
  return mesh;
}

std::array<double, 3> shape_values(const std::array<double, 3>& barycentric) {
  const double sum = barycentric[0] + barycentric[1] + barycentric[2];
  if (barycentric[0] < -1e-12 || barycentric[1] < -1e-12 ||
      barycentric[2] < -1e-12 || std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("invalid barycentric coordinates");
  return barycentric;
}

Vec2 interpolate(const Mesh& mesh, std::span<const Vec2> nodal_field,
                 const Vec2& point) {
  const int e = mesh.locate(point);
  if (e < 0) throw std::domain_error("interpolation point outside mesh");
  const auto b = mesh.barycentric(e, point);
  const auto& el = mesh.elements[e];
  return nodal_field[el[0]] * b[0] + nodal_field[el[1]] * b[1] +
         nodal_field[el[2]] * b[2];
}

bool segments_properly_cross(const Vec2& a, const Vec2& b, const Vec2& c,
                             const Vec2& d) {
  const auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q - p).cross(r - p);
  };
  const double o1 = orient(c, d, a);
  const double o2 = orient(c, d, b);
  const double o3 = orient(a, b, c);
  const double o4 = orient(a, b, d);
  return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

QuadPointSet build_quad_points(const Mesh& mesh, const QuadratureRule& rule) {
  QuadPointSet qps;
  const std::size_t n = mesh.element_count() * rule.points.size();
  qps.position.reserve(n);
  qps.weight.reserve(n);
  qps.element.reserve(n);
  qps.bary.reserve(n);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const double area = mesh.element_area(static_cast<int>(e));
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
      const auto& b = rule.points[k];
      const Vec2 pos = mesh.nodes[el[0]] * b[0] + mesh.nodes[el[1]] * b[1] +
                       mesh.nodes[el[2]] * b[2];
      qps.position.push_back(pos);
      qps.weight.push_back(rule.weights[k] * area);
      qps.element.push_back(static_cast<int>(e));
      qps.bary.push_back(b);
    }
  }
  return qps;
}

}  // namespace perifrac
