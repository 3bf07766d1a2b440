#pragma once

#include <cmath>
#include <utility>

namespace perifrac {

/// Radial weight J on [0,1); J(r) = 0 for r >= 1.
struct InfluenceFunction {
  enum class Kind { OneMinusR, Const };
  Kind kind = Kind::OneMinusR;

  double operator()(double r) const {
    if (r >= 1.0) return 0.0;
    return kind == Kind::OneMinusR ? 1.0 - r : 1.0;
  }
  // Profile without the cutoff, for moment integrals over the closed [0,1].
  double on_unit(double r) const {
    return kind == Kind::OneMinusR ? 1.0 - r : 1.0;
  }
  double bound() const { return 1.0; }
};

// J_bar(alpha) = (1/w_d) int_{H_1(0)} J(|xi|) |xi|^-alpha dxi
//             = d * int_0^1 J(r) r^(d-1-alpha) dr.
// Adaptive quadrature, relative tolerance 1e-10. Throws for alpha >= d.
double moment(const InfluenceFunction& J, double alpha, int dim);

// M_J = int_0^1 J(r) r^2 dr  (1/12 for J = 1-r).
double shape_moment(const InfluenceFunction& J);

/// Bond potential f(r) = c (1 - exp(-beta r^2)): convex near zero, concave
/// past the inflection, bounded by c.
struct PairwisePotential {
  double c = 0.0;
  double beta = 0.0;
  double r_plus = 0.0;   // inflection of f, found by bisection on f''
  double r_minus = 0.0;
  double sup_fpp = 0.0;  // C2 = sup |f''|

  static PairwisePotential make(double c, double beta);

  double f(double r) const { return c * (1.0 - std::exp(-beta * r * r)); }
  double fp(double r) const {
    return 2.0 * c * beta * r * std::exp(-beta * r * r);
  }
  double fpp(double r) const {
    return 2.0 * c * beta * (1.0 - 2.0 * beta * r * r) *
           std::exp(-beta * r * r);
  }
  double fpp0() const { return 2.0 * c * beta; }
};

struct HydrostaticPotential {
  enum class Kind { Quadratic, ConvexConcave };
  Kind kind = Kind::Quadratic;
  double Cbar = 0.0;    // quadratic: g(r) = Cbar r^2 / 2
  double cg = 0.0;      // convex-concave: g(r) = cg (1 - exp(-betag r^2))
  double betag = 0.0;
  double r_star_plus = 0.0;
  double r_star_minus = 0.0;
  double sup_gpp = 0.0;  // C2 for the convex-concave branch

  static HydrostaticPotential quadratic(double Cbar);
  static HydrostaticPotential convex_concave(double cg, double betag);

  double g(double r) const {
    if (kind == Kind::Quadratic) return 0.5 * Cbar * r * r;
    return cg * (1.0 - std::exp(-betag * r * r));
  }
  double gp(double r) const {
    if (kind == Kind::Quadratic) return Cbar * r;
    return 2.0 * cg * betag * r * std::exp(-betag * r * r);
  }
  double gpp(double r) const {
    if (kind == Kind::Quadratic) return Cbar;
    return 2.0 * cg * betag * (1.0 - 2.0 * betag * r * r) *
           std::exp(-betag * r * r);
  }
  double gpp0() const { return kind == Kind::Quadratic ? Cbar : 2.0 * cg * betag; }
};

// Which inflection the damage reports use: the analytic root of f''
// (1/sqrt(2 beta) for the exponential family) or the commonly quoted
// 1/sqrt(beta); they differ by a factor sqrt(2).
enum class InflectionConvention { Analytic, Stated };

struct MaterialModel {
  double rho = 0.0;      // kg/m^3
  double horizon = 0.0;  // m
  int dim = 2;
  InfluenceFunction J;
  PairwisePotential f;
  HydrostaticPotential g;
  InflectionConvention inflection = InflectionConvention::Analytic;

  double unit_ball_volume() const;  // w_d (pi for d=2)
  // Inflection used for critical-strain / damage reporting.
  double damage_r_plus() const;
};

struct Calibration {
  double c = 0.0;
  double beta = 0.0;
  double Cbar = 0.0;
  double lambda = 0.0;  // Lame constants implied by (K, nu)
  double mu = 0.0;
  double MJ = 0.0;
};

// Peridynamic parameters from bulk modulus, Poisson ratio and critical energy
// release rate:  c = pi Gc / (4 MJ),  beta = 4 mu / (c MJ),
// Cbar = 2 (lambda - mu) / MJ^2, with lambda = 3 K nu / (1 + nu) and
// mu = 3 K (1 - 2 nu) / (2 (1 + nu)).
Calibration calibrate(double bulk_modulus, double poisson_ratio,
                      double fracture_toughness, const InfluenceFunction& J);

// Critical strains (S_c+, S_c-) = (r+, r-) / sqrt(bond_length).
std::pair<double, double> critical_bond_strain(const MaterialModel& mat,
                                               double bond_length);

// L / eps^2 with L = 4 (C2_f Jbar_1 + |g''(0)| Jbar_0^2) for quadratic g and
// C2_g in place of |g''(0)| for the convex-concave branch.
double lipschitz_constant(const MaterialModel& mat);

}  // namespace perifrac
