#pragma once

#include "affiq/bodies.hpp"

#include <cstdint>
#include <vector>

namespace affiq {

/// g_K(x) = vol(K ∩ (K + x)).
double covariogram(const Polytope& K, const Eigen::Ref<const Eigen::VectorXd>& x);
/// g_{K,m}(x_1, ..., x_m) = vol(K ∩ (K + x_1) ∩ ... ∩ (K + x_m)); xs is n x m.
double m_covariogram(const Polytope& K, const Eigen::MatrixXd& xs);

/// max r >= 0 such that some y in K has y - r theta_i in K for every i, where
/// theta in R^{nm} is split into n-blocks. Dense simplex, Bland's rule.
double difference_body_radial(const Polytope& K, int m, const Eigen::Ref<const Eigen::VectorXd>& theta);
/// rho_{D^m K} on every node of a grid on S^{nm-1}.
RadialSample difference_body(const Polytope& K, int m, SphereGridPtr grid);

/// vol_{nm}(D^m K) vol(K)^{-m} on the default S^{nm-1} grid (nm <= 6).
double schneider_ratio(const Polytope& K, int m);
double schneider_ratio(const Polytope& K, int m, SphereGridPtr grid);

/// d/dr g_K(r theta) at 0+, Richardson-extrapolated forward differences with
/// r in {1e-2, 5e-3, 2.5e-3} scaled by the diameter of K.
double matheron_derivative(const Polytope& K, const Eigen::Ref<const Eigen::VectorXd>& theta);

enum class PolygonFamily { symmetric_polygons, polygons };
enum class Sense { min, max };

struct RatioSearch {
  Polytope body;  ///< normalised to unit area
  double ratio = 0;
  int evaluations = 0;
  bool budget_exhausted = false;
};

/// Grid used to report optimiser results in R^2: the default circle for m = 1,
/// a 32768-node rule on S^3 for m = 2 (the default 2048 nodes carry about 2%
/// quadrature noise on the kinked radial function of D^2 K).
SphereGridPtr ratio_verification_grid(int m);

/// Nelder-Mead over vertex coordinates (6 points, or 3 antipodal pairs) in
/// isotropic position, with restarts seeded from `seed`. Searches on a coarse
/// S^{2m-1} grid and reports the winner's ratio on ratio_verification_grid(m).
/// budget = evaluations per restart.
RatioSearch optimize_ratio(PolygonFamily family, int n, int m, Sense sense, int budget, std::uint64_t seed,
                           int restarts = 4);

}  // namespace affiq
