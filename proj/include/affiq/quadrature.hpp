#pragma once

#include "affiq/config.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace affiq {

/// Volume of the d-dimensional Euclidean unit ball.
double ball_volume(int d);
/// Surface measure of S^{d-1}, i.e. d * ball_volume(d).
double sphere_area(int d);

/// Sum in a fixed recursive pairwise order: the result depends only on the
/// sequence, never on how it was produced.
template <typename Scalar>
Scalar pairwise_sum(std::span<const Scalar> v) {
  if (v.size() <= 8) {
    Scalar s(0);
    for (const Scalar& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <typename Derived>
typename Derived::Scalar pairwise_sum(const Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> flat = v.derived().reshaped();
  return pairwise_sum(std::span<const Scalar>(flat.data(), static_cast<std::size_t>(flat.size())));
}

/// Runs body(i) for i in [0, count) on the worker pool. Each index is written
/// independently, so results never depend on scheduling. Nested calls run
/// serially.
void parallel_for(Eigen::Index count, const std::function<void(Eigen::Index)>& body);

enum class SphereScheme { product, low_discrepancy };

/// Quadrature rule on S^{d-1}: one node per column, positive weights summing
/// to the surface measure.
struct SphereGrid {
  int dim = 0;
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  /// Set for the uniform circle rule, which allows O(1) nearest-node lookup.
  bool uniform_circle = false;

  Eigen::Index size() const { return weights.size(); }
  auto node(Eigen::Index i) const { return nodes.col(i); }
  /// Index of the node closest to direction u (u need not be normalised).
  Eigen::Index nearest(const Eigen::Ref<const Eigen::VectorXd>& u) const;
};

using SphereGridPtr = std::shared_ptr<const SphereGrid>;

/// Builds a deterministic rule on S^{d-1}. `resolution` is the target node
/// count; product rules round it to a tensor shape.
SphereGrid sphere_grid(int d, int resolution, SphereScheme scheme);

/// Default scheme for a dimension: product up to d = 4, low-discrepancy above.
SphereScheme default_scheme(int d);

/// Shared, cached grid for (d, resolution, scheme).
SphereGridPtr shared_sphere_grid(int d, int resolution, SphereScheme scheme);
/// Shared grid at the configured default resolution for d.
SphereGridPtr default_sphere_grid(int d);

/// Gauss rule for the weight (1 - t^2)^a on [-1, 1] (Golub-Welsch).
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_gegenbauer(int points, double a);

/// Sum of weights * values with the fixed pairwise order. Throws when a value
/// is not finite, naming the node.
double integrate_sphere(const SphereGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& values);

/// Evaluates g on every node (possibly concurrently) and integrates.
double integrate_sphere(const SphereGrid& grid,
                        const std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>& g);

/// Cartesian cell grid on [-R, R]^n with an odd number of cells per axis, so
/// the origin is a cell centre. Cell index i0 varies fastest.
class BoxGrid {
public:
  BoxGrid(int n, double halfwidth, int cells);

  int dim() const { return dim_; }
  double halfwidth() const { return halfwidth_; }
  int cells() const { return cells_; }
  double spacing() const { return 2.0 * halfwidth_ / cells_; }
  double cell_volume() const { return std::pow(spacing(), dim_); }
  double cell_diameter() const { return spacing() * std::sqrt(double(dim_)); }
  Eigen::Index size() const { return size_; }

  /// Coordinate of cell centre k along one axis.
  double coordinate(int k) const { return -halfwidth_ + (k + 0.5) * spacing(); }
  Eigen::VectorXd center(Eigen::Index index) const;
  /// All cell centres, one per column.
  Eigen::MatrixXd centers() const;
  std::array<int, 3> unravel(Eigen::Index index) const;
  Eigen::Index ravel(const std::array<int, 3>& ijk) const;

private:
  int dim_;
  double halfwidth_;
  int cells_;
  Eigen::Index size_;
};

BoxGrid box_grid(int n, double halfwidth, int cells);

}  // namespace affiq
