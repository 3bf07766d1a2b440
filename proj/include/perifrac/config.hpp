#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perifrac/geometry.hpp"
#include "perifrac/material.hpp"

namespace perifrac {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  // [domain]
  double width = 0.0;
  double height = 0.0;
  std::optional<CrackSegment> crack;

  // [material]
  double density = 0.0;
  double bulk_modulus = 0.0;
  double poisson_ratio = 0.0;
  double fracture_toughness = 0.0;
  double horizon = 0.0;
  InfluenceFunction::Kind influence = InfluenceFunction::Kind::OneMinusR;
  HydrostaticPotential::Kind hydrostatic_kind =
      HydrostaticPotential::Kind::Quadratic;
  InflectionConvention inflection = InflectionConvention::Analytic;

  // [discretization]
  double h = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  int quadrature_order = 2;
  bool skip_cfl_check = false;

  // [bc]
  double collar_thickness = -1.0;  // -1: default to horizon
  double bottom_velocity = 1.0;
  std::string bc_mode = "crack_drive";  // or "none"

  // [ic]
  std::string ic_mode = "zero";  // or "smooth_bump"
  double ic_amplitude = 0.0;

  // [output]
  std::string output_dir = "out";
  long long cadence = 100;
  bool write_vtk_files = true;

  // [study]
  std::vector<double> study_mesh_sizes;
  std::vector<double> study_times;

  bool operator==(const Config& o) const;

  double resolved_collar() const {
    return collar_thickness < 0.0 ? horizon : collar_thickness;
  }
};

// Sectioned key=value text. Unknown or malformed input is rejected with the
// line number; unknown keys suggest the closest known one.
Config parse_config(const std::string& text);

// Canonical form; parse_config(emit_config(c)) == c.
std::string emit_config(const Config& config);

// Range checks; throws ConfigError naming the key path.
void validate_config(const Config& config);

}  // namespace perifrac
