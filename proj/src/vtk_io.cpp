#include "perifrac/vtk_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace perifrac {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void write_vtk_snapshot(const std::string& path, const Mesh& mesh,
                        std::span<const VtkField> fields,
                        const std::string& title) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");

  out << "# vtk DataFile Version 3.0\n";
  out << title << "\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.node_count() << " double\n";
  for (const Vec2& p : mesh.nodes)
    out << num(p.x) << " " << num(p.y) << " 0\n";

  const std::size_t m = mesh.element_count();
  out << "CELLS " << m << " " << 4 * m << "\n";
  for (const auto& el : mesh.elements)
    out << "3 " << el[0] << " " << el[1] << " " << el[2] << "\n";
  out << "CELL_TYPES " << m << "\n";
  for (std::size_t e = 0; e < m; ++e) out << "5\n";

  if (!fields.empty()) {
    out << "POINT_DATA " << mesh.node_count() << "\n";
    for (const VtkField& f : fields) {
      if (f.components == 1) {
        if (f.data.size() != mesh.node_count())
          throw std::invalid_argument("scalar field size mismatch: " + f.name);
        out << "SCALARS " << f.name << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (const double v : f.data) out << num(v) << "\n";
      } else if (f.components == 2) {
        if (f.data.size() != 2 * mesh.node_count())
          throw std::invalid_argument("vector field size mismatch: " + f.name);
        out << "VECTORS " << f.name << " double\n";
        for (std::size_t i = 0; i < mesh.node_count(); ++i)
          out << num(f.data[2 * i]) << " " << num(f.data[2 * i + 1]) << " 0\n";
      } else {
        throw std::invalid_argument("unsupported component count: " + f.name);
      }
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace perifrac
