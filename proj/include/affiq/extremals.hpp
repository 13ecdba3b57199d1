#pragma once

#include "affiq/functional.hpp"

#include <cstdint>
#include <string>

namespace affiq {

/// Function on R^n given in closed form, with a radius R such that f vanishes
/// outside the centred ball of radius R.
struct TestFunction {
  std::string id;
  int dim = 2;
  PointFunction f;
  double radius = 1;
};

/// Samples x -> f(A (x - x0)) on a box adapted to the image of the support:
/// halfwidth max_i (|x0_i| + R |row_i(A^{-1})|) plus four cells of margin.
/// An empty A means the identity, an empty x0 the origin. halfwidth > 0
/// fixes the box instead; then "support" is thrown when f does not fit.
GridFunction sample_composed(const TestFunction& f, const Eigen::MatrixXd& A = {}, const Eigen::VectorXd& x0 = {},
                             int cells = 0, double halfwidth = 0);

enum class ExtremalKind {
  cone,         ///< a (1 - |x|)_+
  bump,         ///< a (1 - |x|^2)_+^3, smooth radial
  morrey,       ///< f_MS = a (1 - |x|^{(p-n)/(p-1)})_+, p > n
  log_sobolev,  ///< f_LS with parameter a, truncated at the cutoff level
  gn,           ///< f_GN = a (1 + b |x|^{p/(p-1)})^{-(p-1)/(q-p)}, truncated
  nash,         ///< f_N = u(|x|) - u(1) on the unit ball
};

struct ExtremalParams {
  int n = 2;
  double p = 2;
  double q = 0;  ///< f_GN only
  double a = 1;
  double b = 1;  ///< f_GN only
  /// Relative level below which slowly decaying profiles are cut: the sampled
  /// function is (g - g(rho))_+ with g(rho) = cutoff g(0).
  double cutoff = 1e-4;
  Eigen::MatrixXd A;
  Eigen::VectorXd shift;
  int cells = 0;  ///< 0 = configured default
  double halfwidth = 0;
};

const char* extremal_name(ExtremalKind kind);
/// Accepts the names printed by extremal_name.
ExtremalKind parse_extremal(const std::string& name);

/// The radial profile of `kind` in closed form.
TestFunction extremal_function(ExtremalKind kind, const ExtremalParams& params);
/// extremal_function sampled through sample_composed with params.A, params.shift.
GridFunction make_extremal(ExtremalKind kind, const ExtremalParams& params);

/// Seeded non-radial test function supported in the unit ball: a sum of two to
/// four anisotropic smooth bumps, or a cone over a random polygon gauge
/// (n = 2), or an anisotropic cone plus a bump.
TestFunction random_test_function(int n, std::uint64_t seed);

/// Seeded function compactly supported in Omega (2-D polygon with the origin
/// inside): a sum of smooth elliptic bumps whose supports lie in Omega.
TestFunction random_function_in(const Polytope& Omega, std::uint64_t seed);

/// w(Omega, xi) = h_Omega(xi) + h_Omega(-xi).
double width(const Polytope& Omega, const Eigen::Ref<const Eigen::VectorXd>& xi);
double width(const ConvexBody& Omega, const Eigen::Ref<const Eigen::VectorXd>& xi);

struct PoincareRatio {
  double ratio = 0;        ///< E / (||f||_p^{(nm-1)/nm} ||grad f||_p^{1/nm})
  double constant = 0;     ///< E / ||f||_p
  double min_support = 0;  ///< min over theta of h_{LYZ body}
  double energy = 0;
};
/// Requires Q origin-symmetric ("domain" otherwise).
PoincareRatio poincare_ratio(const GridFunction& f, const Polytope& Q, double p);

bool is_origin_symmetric(const Polytope& Q, double tol = 1e-12);

}  // namespace affiq
