#pragma once

#include <span>
#include <vector>

#include "perifrac/geometry.hpp"

namespace perifrac {

/// Compressed-row sparse matrix over interleaved x/y nodal dofs (2N x 2N).
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> vals;

  void multiply(std::span<const double> x, std::span<double> y) const;
  double max_abs() const;
};

// Consistent mass: element block (rho A / 12) [[2,1,1],[1,2,1],[1,1,2]] per
// scalar component.
SparseMatrix assemble_mass(const Mesh& mesh, double rho);

// Row-sum lumping; throws on a nonpositive row sum (degenerate mesh).
SparseMatrix lump(const SparseMatrix& consistent);

// The lumped diagonal as a plain vector.
std::vector<double> lumped_diagonal(const SparseMatrix& consistent);

// Nodal values of a field u_h at every quadrature point.
void interpolate_at_quad_points(const Mesh& mesh, const QuadPointSet& qps,
                                std::span<const double> nodal,
                                std::span<Vec2> out);

// F_i += sum_p w_p phi_i(p) (L(x_p) + b(x_p)); body may be empty. The scatter
// is a single ordered loop so results are reproducible.
void assemble_force(const Mesh& mesh, const QuadPointSet& qps,
                    std::span<const Vec2> qp_force,
                    std::span<const Vec2> qp_body, std::span<double> out);

// L2 projection: solve M x = rhs with conjugate gradients (relative residual
// 1e-12, at most 10 * dim iterations; throws on non-convergence).
std::vector<double> l2_project(const Mesh& mesh, const SparseMatrix& mass,
                               const QuadPointSet& qps,
                               std::span<const Vec2> values_at_qp);

// Matrix dump in MatrixMarket coordinate format (debugging aid).
void write_matrix_market(const SparseMatrix& m, const std::string& path);

}  // namespace perifrac
