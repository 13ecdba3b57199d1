#pragma once

#include "affiq/bodies.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace affiq {

/// Named bodies Q in R^m: "segment" = [-1/2, 1/2], "segment+" = [0, 1],
/// "square" = [-1/2, 1/2]^2, "simplex2" = conv{0, e1, e2}.
Polytope q_preset(const std::string& name);
const std::vector<std::string>& q_preset_names();
/// Q = conv(points); must contain the origin (possibly on the boundary).
Polytope q_body(const Eigen::MatrixXd& points);
/// h_Q(y) = max over vertices.
double support_q(const Polytope& Q, const Eigen::Ref<const Eigen::VectorXd>& y);

/// theta in S^{nm-1} viewed as an n x m matrix; column i is theta_i.
struct MatrixDirection {
  Eigen::MatrixXd theta;

  static MatrixDirection from_vector(const Eigen::Ref<const Eigen::VectorXd>& v, int n);
  Eigen::VectorXd flat() const { return theta.reshaped(); }
  /// v^t theta in R^m.
  Eigen::VectorXd row_product(const Eigen::Ref<const Eigen::VectorXd>& v) const {
    return theta.transpose() * v;
  }
};

/// Block-diagonal lift x = (x_1..x_m) -> (T x_1, ..., T x_m).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> lift_map(
    const Eigen::MatrixBase<Derived>& T, int m) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = T.rows();
  Mat out = Mat::Zero(n * m, n * m);
  for (int i = 0; i < m; ++i) out.block(i * n, i * n, n, n) = T;
  return out;
}

/// x^p for x >= 0 with fast paths at p in {1, 1.5, 2, 3}.
inline double pow_p(double x, double p) {
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 1.5) return x * std::sqrt(x);
  return std::pow(x, p);
}

/// Batched kernel: for every block b of `probes` (r x k*B, k = vertex count of
/// the relevant Q), returns sum_j weights_j * max(0, max_l (points^T probes_b)_{j,l})^p.
/// `points` is r x N.
Eigen::VectorXd hq_power_sums(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                              const Eigen::MatrixXd& probes, Eigen::Index k, double p);

/// (C^m_{p,Q} nu)(theta) at every node of an S^{nm-1} grid (no hemisphere
/// check): sum_i w_i h_Q(v_i^t theta)^p. Vectors v_i need not be unit.
Eigen::VectorXd cosine_transform_nodes(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& weights,
                                       const Polytope& Q, double p, const Eigen::MatrixXd& thetas);

/// (C^m_{p,Q} nu)(theta) with precondition checks.
double cosine_transform(const SphericalMeasure& nu, const Polytope& Q, double p,
                        const MatrixDirection& theta);

/// Pi_{p,Q} nu sampled on an S^{nm-1} grid.
ConvexBody projection_body_of_measure(const SphericalMeasure& nu, const Polytope& Q, double p, int m,
                                      SphereGridPtr grid);
/// Pi_{p,Q} K via sigma_{K,p}; K a polytope or ellipsoid with 0 inside.
ConvexBody projection_body(const ConvexBody& K, const Polytope& Q, double p, int m, SphereGridPtr grid);

/// vol_{nm}(body°) = (1/nm) int h^{-nm}. Throws "degenerate" when h < 1e-10.
double polar_projection_volume(const ConvexBody& body);

/// Radial function of body° (rho = 1/h) on the body's grid.
RadialSample polar_radial(const ConvexBody& body);

/// Gamma_{p,Q} L sampled on an S^{n-1} grid; L a star body in R^{nm}.
ConvexBody centroid_body(const RadialSample& L, const Polytope& Q, double p, SphereGridPtr grid_n);

/// d_{n,p}(Q) from vol(Pi°_{p,Q} B) on default grids (cached).
double dnp_constant(int n, int m, double p, const Polytope& Q);
/// d_{n,p}(Q) from the O(n) average: Haar rotations by QR of Gaussian
/// matrices with fixed seed.
double dnp_constant_haar(int n, int m, double p, const Polytope& Q, int rotations, unsigned long seed);
/// lim_{p->inf} d_{n,p}(Q) = (int_{S^{nm-1}} max_{q in Q} |theta q|^{-nm})^{1/nm}.
double dnp_constant_infinity(int n, int m, const Polytope& Q);

/// Random element of SL(n) with condition number <= max_condition.
Eigen::MatrixXd random_sl(int n, double max_condition, std::uint64_t seed);

}  // namespace affiq
