#pragma once

#include <span>
#include <string>
#include <vector>

#include "perifrac/geometry.hpp"

namespace perifrac {

/// One point-data array; components is 1 (scalar) or 2 (vector, padded with a
/// zero z in the file).
struct VtkField {
  std::string name;
  int components = 1;
  std::span<const double> data;  // node-major, interleaved for vectors
};

// Legacy ASCII VTK 3.0 unstructured grid (triangle cells, type 5) with the
// given POINT_DATA fields. Floats are written with 9 significant digits.
void write_vtk_snapshot(const std::string& path, const Mesh& mesh,
                        std::span<const VtkField> fields,
                        const std::string& title = "perifrac snapshot");

}  // namespace perifrac
