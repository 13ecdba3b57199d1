#pragma once

#include "affiq/functional.hpp"

namespace affiq {

struct MinkowskiOptions {
  int max_iterations = 20000;
  double tolerance = 1e-7;  ///< stop when the Euler-Lagrange residual falls below
  double floor = 1e-8;      ///< lower bound on support numbers for p > 1
};

/// Polytope K with vol(K) h_K^{p-1} nu = sigma_K and (1/n) int h_K^p dnu = 1.
struct MinkowskiSolution {
  ConvexBody body;
  Eigen::VectorXd support;  ///< h_K at the atoms of nu
  double residual = 0;      ///< max_i |vol(K) h_i^{p-1} w_i - area_i|
  double defect = 0;        ///< |1 - (1/n) sum w_i h_i^p|
  double origin_distance = 0;
  int iterations = 0;
  bool converged = false;
  bool floored = false;  ///< some support number sits on the floor
};

/// Discrete L^p Minkowski problem by minimising log sum w h^p - (p/n) log vol
/// over Wulff shapes (projected gradient, Barzilai-Borwein steps), then
/// rescaling. Requires n in {2, 3}; p = 1 additionally needs a centred measure.
MinkowskiSolution solve_lp_minkowski(const SphericalMeasure& nu, double p, const MinkowskiOptions& options = {});

/// Band approximation of nu_t: cells with ||f| - t| < Delta, direction
/// grad f / |grad f|, weight |grad f|^p cellvol hat(|f| - t) (triangular, unit
/// mass), binned on the default
/// S^{n-1} grid with a Gaussian spread matching the angular sampling. Delta =
/// band_factor * cell diameter * max |grad f|.
SphericalMeasure level_set_measure(const GridFunction& f, double t, double p, double band_factor = 2.0);

/// <f>_{t,p}: the Minkowski solution for nu_t.
MinkowskiSolution asymmetric_convexification(const GridFunction& f, double t, double p);

/// Both sides of vol(Pi° nu) vol(K)^{-m} <= vol(Pi° B) vol(B)^{nm/p - m}.
struct LemmaCheck {
  double lhs = 0;
  double rhs = 0;
  MinkowskiSolution solution;
};
LemmaCheck verify_lemma_body(const SphericalMeasure& nu, double p, const Polytope& Q);

/// vol(Pi°_{p,Q} B) on the default S^{nm-1} grid.
double polar_projection_volume_ball(int n, double p, const Polytope& Q);

/// Both sides of vol(<f>_{t,p})^{-p/n} >= mu_f(t)^{p(n-1)/n} ((1/n) int |grad f|^{-1})^{1-p},
/// the boundary integral taken from the same band as nu_t.
struct ConvexificationBound {
  double lhs = 0;
  double rhs = 0;
};
ConvexificationBound convexification_bound(const GridFunction& f, double t, double p);

}  // namespace affiq
