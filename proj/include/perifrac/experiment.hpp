#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perifrac/config.hpp"
#include "perifrac/diagnostics.hpp"
#include "perifrac/fem.hpp"
#include "perifrac/integrator.hpp"
#include "perifrac/kernel.hpp"
#include "perifrac/stability.hpp"

namespace perifrac {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnergyRow {
  long long step = 0;
  double t = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double crack_length = 0.0;
  double pe_crack = 0.0;
  double ge = 0.0;
};

// Fixed CSV contract: header + one %.17g row per emission.
std::string energy_csv(const std::vector<EnergyRow>& rows);

/// Everything assembled for one mesh size.
struct SimContext {
  Config cfg;
  Mesh mesh;
  QuadPointSet qps;
  MaterialModel mat;
  Calibration cal;
  NeighborTable table;
  NodeNeighborTable node_bonds;
  SparseMatrix mass;
  std::vector<double> lumped;
  BCSpec bc;
  bool has_bc = false;

  void eval_force(std::span<const double> u_nodal, std::span<double> out,
                  bool linearized) const;
};

SimContext build_context(const Config& cfg);

// CFL estimate for a context (kernel-backed operator, lumped mass).
CflReport context_cfl(const SimContext& ctx, uint64_t seed, double tol,
                      int max_iter);

struct RunOptions {
  int workers = 0;  // 0 keeps the process default
  bool linearized = false;
  std::vector<double> capture_times;  // snapshot nodal displacement
  bool write_outputs = true;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct RunResult {
  std::vector<EnergyRow> rows;
  std::vector<std::vector<double>> captures;
  std::vector<double> final_u;
  std::vector<double> final_v;
  long long steps = 0;
  CflReport cfl;
};

// Mesh -> material -> tables -> CFL guard -> time loop -> diagnostics.
RunResult run_experiment(const Config& cfg, const RunOptions& opts);

struct RateRow {
  double time = 0.0;
  double alpha = 0.0;
  double norm_coarse_mid = 0.0;
  double norm_mid_fine = 0.0;
};

// Runs the pipeline for each study mesh size (shared dt), interpolates the
// captured fields onto the finest grid and evaluates the rate formula at each
// comparison time.
std::vector<RateRow> convergence_study(const Config& cfg,
                                       const RunOptions& opts);

std::string rate_csv(const std::vector<RateRow>& rows);

void set_worker_count(int workers);

}  // namespace perifrac
