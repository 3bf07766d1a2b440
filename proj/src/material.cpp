#include "perifrac/material.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace perifrac {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = std::max(std::abs(whole), 1e-30) * rel_tol;
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

// Root of fn by bisection on a sign change in [lo, hi].
double bisect(const std::function<double(double)>& fn, double lo, double hi) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo * fhi > 0.0)
    throw std::runtime_error("bisection bracket has no sign change");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = fn(mid);
    if (fmid == 0.0) return mid;
    if (flo * fmid < 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

// sup |fn| over [0, hi]: dense grid then golden-section refinement.
double sup_abs(const std::function<double(double)>& fn, double hi) {
  const int samples = 4000;
  double best = 0.0;
  double best_r = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double r = hi * i / samples;
    const double v = std::abs(fn(r));
    if (v > best) {
      best = v;
      best_r = r;
    }
  }
  double lo = std::max(0.0, best_r - hi / samples);
  double up = std::min(hi, best_r + hi / samples);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = up - phi * (up - lo);
  double x2 = lo + phi * (up - lo);
  double f1 = std::abs(fn(x1));
  double f2 = std::abs(fn(x2));
  for (int i = 0; i < 120; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (up - lo);
      f2 = std::abs(fn(x2));
    } else {
      up = x2;
      x2 = x1;
      f2 = f1;
      x1 = up - phi * (up - lo);
      f1 = std::abs(fn(x1));
    }
  }
  return std::max(best, std::max(f1, f2));
}

}  // namespace

double moment(const InfluenceFunction& J, double alpha, int dim) {
  if (alpha >= static_cast<double>(dim))
    throw std::domain_error("moment integral diverges for alpha >= dim");
  const double q = dim - 1 - alpha;  // exponent, > -1
  // Substitute r = s^p with p large enough that the transformed integrand
  // d * J(s^p) s^(p q + p - 1) * p has a nonnegative exponent.
  int p = 1;
  if (q < 0.0) p = static_cast<int>(std::ceil(2.0 / (q + 1.0)));
  const double pd = static_cast<double>(p);
  const auto integrand = [&](double s) {
    const double r = std::pow(s, pd);
    return J.on_unit(r) * std::pow(s, pd * q + pd - 1.0) * pd;
  };
  return dim * integrate(integrand, 0.0, 1.0, 1e-11);
}

double shape_moment(const InfluenceFunction& J) {
  return integrate([&](double r) { return J.on_unit(r) * r * r; }, 0.0, 1.0,
                   1e-13);
}

PairwisePotential PairwisePotential::make(double c, double beta) {
  if (c <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("pairwise potential needs c > 0, beta > 0");
  PairwisePotential p;
  p.c = c;
  p.beta = beta;
  const double hi = 10.0 / std::sqrt(beta);
  const auto fpp = [&](double r) {
    return 2.0 * c * beta * (1.0 - 2.0 * beta * r * r) *
           std::exp(-beta * r * r);
  };
  p.r_plus = bisect(fpp, 1e-12 * hi, hi);
  p.r_minus = -p.r_plus;
  p.sup_fpp = sup_abs(fpp, hi);
  return p;
}

HydrostaticPotential HydrostaticPotential::quadratic(double Cbar) {
  HydrostaticPotential g;
  g.kind = Kind::Quadratic;
  g.Cbar = Cbar;
  return g;
}

HydrostaticPotential HydrostaticPotential::convex_concave(double cg,
                                                          double betag) {
  if (cg <= 0.0 || betag <= 0.0)
    throw std::invalid_argument(
        "convex-concave hydrostatic potential needs cg > 0, betag > 0");
  HydrostaticPotential g;
  g.kind = Kind::ConvexConcave;
  g.cg = cg;
  g.betag = betag;
  const double hi = 10.0 / std::sqrt(betag);
  const auto gpp = [&](double r) {
    return 2.0 * cg * betag * (1.0 - 2.0 * betag * r * r) *
           std::exp(-betag * r * r);
  };
  g.r_star_plus = bisect(gpp, 1e-12 * hi, hi);
  g.r_star_minus = -g.r_star_plus;
  g.sup_gpp = sup_abs(gpp, hi);
  return g;
}

double MaterialModel::unit_ball_volume() const {
  if (dim == 2) return std::numbers::pi;
  if (dim == 3) return 4.0 * std::numbers::pi / 3.0;
  throw std::invalid_argument("unsupported dimension");
}

double MaterialModel::damage_r_plus() const {
  if (inflection == InflectionConvention::Analytic) return f.r_plus;
  return 1.0 / std::sqrt(f.beta);
}

Calibration calibrate(double bulk_modulus, double poisson_ratio,
                      double fracture_toughness, const InfluenceFunction& J) {
  if (bulk_modulus <= 0.0)
    throw std::invalid_argument("bulk_modulus must be positive");
  if (poisson_ratio <= -1.0 || poisson_ratio >= 0.5)
    throw std::invalid_argument("poisson_ratio must lie in (-1, 0.5)");
  if (fracture_toughness <= 0.0)
    throw std::invalid_argument("fracture_toughness must be positive");

  Calibration cal;
  cal.MJ = shape_moment(J);
  cal.lambda = 3.0 * bulk_modulus * poisson_ratio / (1.0 + poisson_ratio);
  cal.mu = 3.0 * bulk_modulus * (1.0 - 2.0 * poisson_ratio) /
           (2.0 * (1.0 + poisson_ratio));
  cal.c = std::numbers::pi * fracture_toughness / (4.0 * cal.MJ);
  cal.beta = 4.0 * cal.mu / (cal.c * cal.MJ);
  cal.Cbar = 2.0 * (cal.lambda - cal.mu) / (cal.MJ * cal.MJ);
  return cal;
}

std::pair<double, double> critical_bond_strain(const MaterialModel& mat,
                                               double bond_length) {
  if (bond_length <= 0.0)
    throw std::invalid_argument("bond length must be positive");
  const double rp = mat.damage_r_plus();
  const double s = std::sqrt(bond_length);
  return {rp / s, -rp / s};
}

double lipschitz_constant(const MaterialModel& mat) {
  const double J1 = moment(mat.J, 1.0, mat.dim);
  const double J0 = moment(mat.J, 0.0, mat.dim);
  const double hydro = mat.g.kind == HydrostaticPotential::Kind::Quadratic
                           ? std::abs(mat.g.gpp0())
                           : mat.g.sup_gpp;
  const double L = 4.0 * (mat.f.sup_fpp * J1 + hydro * J0 * J0);
  return L / (mat.horizon * mat.horizon);
}

}  // namespace perifrac
