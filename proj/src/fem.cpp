#include "perifrac/fem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace perifrac {

void SparseMatrix::multiply(std::span<const double> x,
                            std::span<double> y) const {
  for (int i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      acc += vals[k] * x[col_idx[k]];
    y[i] = acc;
  }
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (const double v : vals) m = std::max(m, std::abs(v));
  return m;
}

namespace {

struct Triplet {
  int row;
  int col;
  double val;
};

SparseMatrix compress(int rows, int cols, std::vector<Triplet>& t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    double acc = 0.0;
    while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col)
      acc += t[j++].val;
    m.col_idx.push_back(t[i].col);
    m.vals.push_back(acc);
    ++m.row_ptr[t[i].row + 1];
    i = j;
  }
  for (int r = 0; r < rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  return m;
}

}  // namespace

SparseMatrix assemble_mass(const Mesh& mesh, double rho) {
  if (rho <= 0.0) throw std::invalid_argument("density must be positive");
  const int n2 = static_cast<int>(mesh.node_count()) * 2;
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.element_count() * 18);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.elements[e];
    const double s = rho * mesh.element_area(static_cast<int>(e)) / 12.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double v = s * (i == j ? 2.0 : 1.0);
        triplets.push_back({2 * el[i], 2 * el[j], v});
        triplets.push_back({2 * el[i] + 1, 2 * el[j] + 1, v});
      }
    }
  }
  return compress(n2, n2, triplets);
}

SparseMatrix lump(const SparseMatrix& consistent) {
  SparseMatrix m;
  m.rows = consistent.rows;
  m.cols = consistent.cols;
  m.row_ptr.resize(consistent.rows + 1);
  m.col_idx.resize(consistent.rows);
  m.vals.resize(consistent.rows);
  for (int i = 0; i < consistent.rows; ++i) {
    double sum = 0.0;
    for (int k = consistent.row_ptr[i]; k < consistent.row_ptr[i + 1]; ++k)
      sum += consistent.vals[k];
    if (sum <= 0.0)
      throw std::runtime_error("nonpositive lumped mass row sum at dof " +
                               std::to_string(i));
    m.row_ptr[i] = i;
    m.col_idx[i] = i;
    m.vals[i] = sum;
  }
  m.row_ptr[consistent.rows] = consistent.rows;
  return m;
}

std::vector<double> lumped_diagonal(const SparseMatrix& consistent) {
  const SparseMatrix d = lump(consistent);
  return d.vals;
}

void interpolate_at_quad_points(const Mesh& mesh, const QuadPointSet& qps,
                                std::span<const double> nodal,
                                std::span<Vec2> out) {
  const long long n = static_cast<long long>(qps.size());
#pragma omp parallel for schedule(static)
  for (long long p = 0; p < n; ++p) {
    const auto& el = mesh.elements[qps.element[p]];
    const auto& b = qps.bary[p];
    double x = 0.0;
    double y = 0.0;
    for (int i = 0; i < 3; ++i) {
      x += b[i] * nodal[2 * el[i]];
      y += b[i] * nodal[2 * el[i] + 1];
    }
    out[p] = {x, y};
  }
}

void assemble_force(const Mesh& mesh, const QuadPointSet& qps,
                    std::span<const Vec2> qp_force,
                    std::span<const Vec2> qp_body, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t p = 0; p < qps.size(); ++p) {
    Vec2 f = qp_force.empty() ? Vec2{} : qp_force[p];
    if (!qp_body.empty()) f += qp_body[p];
    const double w = qps.weight[p];
    const auto& el = mesh.elements[qps.element[p]];
    const auto& b = qps.bary[p];
    for (int i = 0; i < 3; ++i) {
      out[2 * el[i]] += w * b[i] * f.x;
      out[2 * el[i] + 1] += w * b[i] * f.y;
    }
  }
}

std::vector<double> l2_project(const Mesh& mesh, const SparseMatrix& mass,
                               const QuadPointSet& qps,
                               std::span<const Vec2> values_at_qp) {
  const std::size_t dim = static_cast<std::size_t>(mass.rows);
  std::vector<double> rhs(dim, 0.0);
  assemble_force(mesh, qps, values_at_qp, {}, rhs);

  std::vector<double> x(dim, 0.0);
  std::vector<double> r = rhs;
  std::vector<double> p = r;
  std::vector<double> ap(dim, 0.0);
  const auto dot = [&](const std::vector<double>& a,
                       const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  double rr = dot(r, r);
  const double target = 1e-12 * std::sqrt(rr);
  if (std::sqrt(rr) == 0.0) return x;
  const std::size_t max_iter = 10 * dim;
  for (std::size_t it = 0; it < max_iter; ++it) {
    mass.multiply(p, ap);
    const double alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < dim; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    if (std::sqrt(rr_new) <= target) return x;
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < dim; ++i) p[i] = r[i] + beta * p[i];
  }
  throw std::runtime_error("conjugate gradient failed to converge");
}

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows << " " << m.cols << " " << m.vals.size() << "\n";
  char buf[64];
  for (int i = 0; i < m.rows; ++i) {
    for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i + 1, m.col_idx[k] + 1,
                    m.vals[k]);
      out << buf;
    }
  }
}

}  // namespace perifrac
