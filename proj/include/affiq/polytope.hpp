#pragma once

#include "affiq/config.hpp"

#include <Eigen/Dense>

namespace affiq {

/// Full-dimensional convex polytope in R^d, d in {1, 2, 3}, stored by its hull
/// vertices together with the facet description {x : normals^T x <= offsets}.
struct Polytope {
  int dim = 0;
  Eigen::MatrixXd vertices;  ///< d x k, hull vertices only
  Eigen::MatrixXd normals;   ///< d x F, outer unit normals
  Eigen::VectorXd offsets;   ///< F, h_P(normal)
  Eigen::VectorXd areas;     ///< F, (d-1)-volume of each facet
  double volume = 0;
  Eigen::VectorXd centroid;  ///< vertex average (an interior point)

  Eigen::Index facet_count() const { return offsets.size(); }
  bool contains_origin_in_interior(double tol = 1e-12) const { return offsets.minCoeff() > tol; }
};

/// Convex hull of the columns of `points`. Throws "degenerate" when the hull
/// has volume below 1e-12.
Polytope make_polytope(const Eigen::MatrixXd& points);

/// Result of intersecting half-spaces {x : a_i^T x <= b_i}.
struct HalfspaceCell {
  double volume = 0;
  Eigen::VectorXd facet_areas;  ///< one per input half-space, 0 when not a facet
  Eigen::MatrixXd vertices;     ///< d x k
};

/// Intersection of half-spaces in d <= 3 inside the box [-bound, bound]^d:
/// sorted-angle sweep in the plane, polar hull in space when the origin is
/// interior, successive clipping otherwise. Throws "unbounded" when the box
/// still shows.
HalfspaceCell intersect_halfspaces(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets,
                                   double bound);

/// Same, with a bound derived from the offsets.
HalfspaceCell intersect_halfspaces(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets);

/// Polygon area by the shoelace formula; columns are ordered vertices.
double polygon_area(const Eigen::MatrixXd& ordered);

/// Ordered (counter-clockwise) 2-D convex hull of the columns.
Eigen::MatrixXd convex_hull_2d(const Eigen::MatrixXd& points);

}  // namespace affiq
