#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace perifrac {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::sqrt(x * x + y * y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Straight pre-crack inside the domain; enforced downstream by bond severing.
struct CrackSegment {
  Vec2 p0;
  Vec2 p1;
};

// Geometric boundary tags (bitmask); BC predicates are built on top of these.
enum NodeTag : uint8_t {
  TagInterior = 0,
  TagLeft = 1,
  TagRight = 2,
  TagBottom = 4,
  TagTop = 8,
};

struct QuadratureRule {
  std::vector<std::array<double, 3>> points;  // barycentric coordinates
  std::vector<double> weights;                // reference-triangle measure, sum to 1
  int degree = 0;

  // Degree-2 rule with points at the edge midpoints, weights 1/3. The point
  // cloud of this rule on a uniform triangulation is inversion-symmetric
  // about each of its points, which the nonlocal kernel relies on for exact
  // interior force cancellation under homogeneous strain.
  static QuadratureRule triangle_degree2();
  // One-point centroid rule (degree 1).
  static QuadratureRule triangle_centroid();
};

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> elements;  // node index triples, CCW
  std::vector<uint8_t> node_tags;
  double width = 0.0;
  double height = 0.0;
  double h = 0.0;  // nominal mesh size
  int nx = 0;      // cells along x (0 for hand-built meshes)
  int ny = 0;
  std::optional<CrackSegment> crack;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t element_count() const { return elements.size(); }
  double element_area(int e) const;
  double domain_area() const;

  // Element containing p (-1 if outside). O(1) for uniform meshes.
  int locate(const Vec2& p) const;
  std::array<double, 3> barycentric(int e, const Vec2& p) const;
};

// Structured triangulation of [0,width]x[0,height]: nodes row-major by y then
// x, two CCW triangles per cell. The mesh is not slit; a crack must lie on
// mesh lines and is enforced later via bond severing.
Mesh build_uniform_mesh(double width, double height, double h,
                        std::optional<CrackSegment> crack = std::nullopt);

// Linear shape function values at a barycentric point (Lagrange basis).
std::array<double, 3> shape_values(const std::array<double, 3>& barycentric);

// Piecewise-linear interpolant of a nodal field. Throws if point is outside.
Vec2 interpolate(const Mesh& mesh, std::span<const Vec2> nodal_field,
                 const Vec2& point);

struct QuadPointSet {
  std::vector<Vec2> position;
  std::vector<double> weight;  // reference weight x element area
  std::vector<int> element;
  std::vector<std::array<double, 3>> bary;

  std::size_t size() const { return position.size(); }
};

// Element-major, then rule order; deterministic.
QuadPointSet build_quad_points(const Mesh& mesh, const QuadratureRule& rule);

// Proper (interior) crossing of segments [a,b] and [c,d]. Touching an
// endpoint, e.g. the crack tip, does not count.
bool segments_properly_cross(const Vec2& a, const Vec2& b, const Vec2& c,
                             const Vec2& d);

}  // namespace perifrac
