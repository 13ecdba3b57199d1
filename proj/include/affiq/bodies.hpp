#pragma once

#include "affiq/polytope.hpp"
#include "affiq/quadrature.hpp"

#include <string>
#include <variant>
#include <vector>

namespace affiq {

/// {x : x^T A x <= 1} for symmetric positive definite A.
struct Ellipsoid {
  Eigen::MatrixXd A;
};

/// Body known only through positive support values on a sphere grid. Its
/// shape is the Wulff body of those values: intersection of {x : x.u_i <= h_i}.
struct SupportSampled {
  SphereGridPtr grid;
  Eigen::VectorXd h;
};

/// Star body in R^d given by radial values on a sphere grid.
struct RadialSample {
  SphereGridPtr grid;
  Eigen::VectorXd rho;
};

class ConvexBody {
public:
  using Variant = std::variant<Polytope, Ellipsoid, SupportSampled>;

  ConvexBody() = default;
  explicit ConvexBody(Polytope p) : body_(std::move(p)) {}
  explicit ConvexBody(Ellipsoid e) : body_(std::move(e)) {}
  explicit ConvexBody(SupportSampled s) : body_(std::move(s)) {}

  int dim() const;
  const Variant& variant() const { return body_; }

  bool is_polytope() const { return std::holds_alternative<Polytope>(body_); }
  bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(body_); }
  bool is_sampled() const { return std::holds_alternative<SupportSampled>(body_); }
  const Polytope& polytope() const { return std::get<Polytope>(body_); }
  const Ellipsoid& ellipsoid() const { return std::get<Ellipsoid>(body_); }
  const SupportSampled& sampled() const { return std::get<SupportSampled>(body_); }

private:
  Variant body_;
};

ConvexBody polytope_body(const Eigen::MatrixXd& points);
/// Validates symmetry and positive definiteness (within 1e-10).
ConvexBody ellipsoid_body(const Eigen::MatrixXd& A);
/// Validates positivity and spot-checks convexity of the 1-homogeneous extension.
ConvexBody sampled_body(SphereGridPtr grid, Eigen::VectorXd h);
/// Largest violation of convexity of the 1-homogeneous extension found on
/// consecutive node triples (d = 2 only; 0 for other dimensions).
double convexity_defect(const SupportSampled& s);
ConvexBody unit_ball(int d);
/// Regular k-gon inscribed in the circle of the given radius, first vertex on e1.
ConvexBody regular_polygon(int k, double radius = 1.0);
/// Axis-parallel cube [-s, s]^d.
ConvexBody cube(int d, double s);

/// h_K(u), extended 1-homogeneously. Sampled bodies use the nearest node.
double support(const ConvexBody& K, const Eigen::Ref<const Eigen::VectorXd>& u);
/// ||x||_K. Throws "origin_not_interior" when K does not contain 0 inside.
double minkowski_functional(const ConvexBody& K, const Eigen::Ref<const Eigen::VectorXd>& x);
/// K°. Sampled bodies keep their grid, with values h_{K°}(u) = ||u||_K.
ConvexBody polar(const ConvexBody& K);
/// Exact for polytopes, ellipsoids and sampled bodies in d <= 3 (Wulff shape),
/// polar coordinates otherwise. Throws "degenerate" below 1e-12.
double volume(const ConvexBody& K);
/// (1/d) sum w ||theta||_K^{-d} on the given grid.
double volume_polar_coordinates(const ConvexBody& K, const SphereGrid& grid);
double volume(const RadialSample& L);
/// ||x||_K for a Wulff body without building a ConvexBody.
double wulff_gauge(const SupportSampled& s, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Linear image phi K. Sampled bodies are not supported.
ConvexBody linear_image(const ConvexBody& K, const Eigen::MatrixXd& phi);
ConvexBody translate(const ConvexBody& K, const Eigen::VectorXd& shift);
ConvexBody scale(const ConvexBody& K, double c);

/// Finite Borel measure on S^{n-1}: unit directions (columns) and weights.
struct SphericalMeasure {
  int dim = 0;
  Eigen::MatrixXd directions;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return weights.size(); }
  double total() const { return weights.sum(); }
};

SphericalMeasure make_measure(const Eigen::MatrixXd& directions, const Eigen::VectorXd& weights);
/// c * nu.
SphericalMeasure scaled(const SphericalMeasure& nu, double c);
/// Uniform (Lebesgue) measure on S^{n-1} at the grid nodes.
SphericalMeasure uniform_measure(const SphereGrid& grid);

/// min over probe directions u of sum w_i (v_i.u)_+, probed on the default
/// S^{n-1} grid. Positive iff nu is not concentrated in a closed hemisphere
/// (up to probe resolution).
double hemisphere_margin(const SphericalMeasure& nu);
/// Throws "hemisphere" when the margin is not positive.
void require_not_concentrated(const SphericalMeasure& nu);

/// sigma_K: facet normals and areas for polytopes (facets below 1e-12 dropped),
/// boundary quadrature on the default grid for ellipsoids.
SphericalMeasure surface_measure(const ConvexBody& K);
/// sigma_{K,p} = h_K^{1-p} sigma_K.
SphericalMeasure lp_surface_measure(const ConvexBody& K, double p);

/// V_1(K, L) = (1/d) int_{bd K} h_L(n_K) dH^{d-1}.
double mixed_volume_V1(const ConvexBody& K, const ConvexBody& L);

/// Parses `polytope n=2 v=(0,0);(1,0);(0,1)` or `ellipsoid n=2 a=(1,0;0,4)`.
ConvexBody parse_body(const std::string& literal);
std::string format_body(const ConvexBody& K);
/// One literal per non-empty line, '#' starts a comment.
std::vector<ConvexBody> read_bodies(const std::string& path);

}  // namespace affiq
