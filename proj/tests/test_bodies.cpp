#include "affiq/bodies.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace affiq;
using std::numbers::pi;

namespace {

Eigen::MatrixXd cols(std::initializer_list<std::pair<double, double>> pts) {
  Eigen::MatrixXd m(2, Eigen::Index(pts.size()));
  Eigen::Index j = 0;
  for (auto [x, y] : pts) m.col(j++) << x, y;
  return m;
}

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Atom weight at the given normal, 0 when absent.
double atom(const SphericalMeasure& nu, const Eigen::Vector2d& u) {
  for (Eigen::Index i = 0; i < nu.size(); ++i)
    if ((nu.directions.col(i) - u).norm() < 1e-9) return nu.weights(i);
  return 0;
}

}  // namespace

TEST_CASE("polytope hull and facets") {
  const Polytope P = make_polytope(cols({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}}));
  CHECK(P.vertices.cols() == 3);
  CHECK(P.volume == doctest::Approx(0.5));
  CHECK(P.areas.sum() == doctest::Approx(2 + std::sqrt(2.0)));
  CHECK_THROWS_AS(make_polytope(cols({{0, 0}, {1, 1}, {2, 2}})), Error);
}

TEST_CASE("3-D hull") {
  Eigen::MatrixXd v(3, 8);
  for (int i = 0; i < 8; ++i) v.col(i) << (i & 1 ? 1 : -1), (i & 2 ? 1 : -1), (i & 4 ? 1 : -1);
  const Polytope C = make_polytope(v);
  CHECK(C.volume == doctest::Approx(8));
  CHECK(C.facet_count() == 6);
  CHECK(C.areas.sum() == doctest::Approx(24));
}

TEST_CASE("half-space intersection") {
  Eigen::MatrixXd n(2, 4);
  n << 1, -1, 0, 0, 0, 0, 1, -1;
  const HalfspaceCell c = intersect_halfspaces(n, Eigen::Vector4d(1, 2, 0.5, 0.5));
  CHECK(c.volume == doctest::Approx(3));
  CHECK(c.facet_areas(0) == doctest::Approx(1));
  CHECK(c.facet_areas(2) == doctest::Approx(3));
}

TEST_CASE("support") {
  const ConvexBody sq = cube(2, 1);
  CHECK(support(sq, Eigen::Vector2d(1, 0)) == doctest::Approx(1));
  const ConvexBody B = unit_ball(2);
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 10; ++k) CHECK(support(B, Eigen::Vector2d(g(rng), g(rng)).normalized()) == doctest::Approx(1));
  Eigen::MatrixXd seg(1, 2);
  seg << -0.5, 0.5;
  const ConvexBody Q = polytope_body(seg);
  CHECK(support(Q, Eigen::VectorXd::Constant(1, -3.0)) == doctest::Approx(1.5));
}

TEST_CASE("minkowski functional") {
  CHECK(minkowski_functional(unit_ball(2), Eigen::Vector2d(3, 4)) == doctest::Approx(5));
  CHECK(minkowski_functional(cube(2, 1), Eigen::Vector2d(2, 1)) == doctest::Approx(2));
  CHECK(minkowski_functional(ellipsoid_body(diag2(0.25, 1)), Eigen::Vector2d(2, 0)) == doctest::Approx(1));
  const ConvexBody off = polytope_body(cols({{0, 0}, {1, 0}, {0, 1}}));
  CHECK_THROWS_AS(minkowski_functional(off, Eigen::Vector2d(1, 1)), Error);
}

TEST_CASE("polar") {
  const ConvexBody cross = polar(cube(2, 1));
  REQUIRE(cross.is_polytope());
  CHECK(volume(cross) == doctest::Approx(2));
  CHECK(support(cross, Eigen::Vector2d(1, 1)) == doctest::Approx(1));
  const ConvexBody half = polar(ellipsoid_body(diag2(0.25, 0.25)));
  CHECK(support(half, Eigen::Vector2d(0, 1)) == doctest::Approx(0.5));
  const ConvexBody e = polar(ellipsoid_body(diag2(4, 1)));
  REQUIRE(e.is_ellipsoid());
  CHECK(e.ellipsoid().A(0, 0) == doctest::Approx(0.25));
  CHECK(e.ellipsoid().A(1, 1) == doctest::Approx(1));
}

TEST_CASE("volume") {
  const ConvexBody sq = polytope_body(cols({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}));
  CHECK(volume(sq) == doctest::Approx(1));
  CHECK(volume(unit_ball(2)) == doctest::Approx(pi));
  CHECK(volume(ellipsoid_body(diag2(0.25, 1))) == doctest::Approx(2 * pi));
  CHECK(volume(unit_ball(3)) == doctest::Approx(4 * pi / 3));
  // Polar-coordinate volume agrees with the exact one.
  CHECK(volume_polar_coordinates(sq, *default_sphere_grid(2)) == doctest::Approx(1).epsilon(1e-3));
}

TEST_CASE("surface measure") {
  const SphericalMeasure s = surface_measure(cube(2, 0.5));
  CHECK(s.size() == 4);
  CHECK(atom(s, {1, 0}) == doctest::Approx(1));
  CHECK(atom(s, {0, -1}) == doctest::Approx(1));
  const SphericalMeasure t = surface_measure(polytope_body(cols({{0, 0}, {1, 0}, {0, 1}})));
  CHECK(atom(t, {0, -1}) == doctest::Approx(1));
  CHECK(atom(t, {-1, 0}) == doctest::Approx(1));
  CHECK(atom(t, Eigen::Vector2d(1, 1).normalized()) == doctest::Approx(std::sqrt(2.0)));
  const SphericalMeasure c = surface_measure(cube(3, 1));
  CHECK(c.size() == 6);
  for (Eigen::Index i = 0; i < c.size(); ++i) CHECK(c.weights(i) == doctest::Approx(4));
  // The ellipse perimeter by quadrature against Ramanujan's approximation.
  const double a = 2, b = 1, h = std::pow((a - b) / (a + b), 2);
  const double ramanujan = pi * (a + b) * (1 + 3 * h / (10 + std::sqrt(4 - 3 * h)));
  CHECK(surface_measure(ellipsoid_body(diag2(0.25, 1))).total() == doctest::Approx(ramanujan).epsilon(1e-4));
}

TEST_CASE("L^p surface measure") {
  for (double p : {2.0, 3.0}) {
    const SphericalMeasure s = lp_surface_measure(cube(2, 1), p);
    for (Eigen::Index i = 0; i < s.size(); ++i) CHECK(s.weights(i) == doctest::Approx(2));
  }
  // sigma_{K,p} scales like h^{1-p} area: for [-2,2]^2 each weight is 4 * 2^{1-p}.
  const SphericalMeasure s = lp_surface_measure(cube(2, 2), 3);
  CHECK(s.weights(0) == doctest::Approx(1));
}

TEST_CASE("first mixed volume") {
  CHECK(mixed_volume_V1(cube(2, 0.5), cube(2, 0.5)) == doctest::Approx(1));
  CHECK(mixed_volume_V1(cube(2, 0.5), unit_ball(2)) == doctest::Approx(2));
  CHECK(mixed_volume_V1(unit_ball(2), unit_ball(2)) == doctest::Approx(pi).epsilon(1e-6));
}

TEST_CASE("Minkowski inequality V1(K,L)^2 >= vol K vol L on random polygons") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 20; ++k) {
    Eigen::MatrixXd a(2, 8), b(2, 8);
    for (int j = 0; j < 8; ++j) {
      a.col(j) << u(rng), u(rng);
      b.col(j) << u(rng), u(rng);
    }
    const ConvexBody K = polytope_body(a), L = polytope_body(b);
    const double v1 = mixed_volume_V1(K, L);
    CHECK(v1 * v1 >= volume(K) * volume(L) * (1 - 1e-12));
  }
}

TEST_CASE("linear images scale volume by the determinant") {
  Eigen::MatrixXd A(2, 2);
  A << 2, 1, 0, 3;
  CHECK(volume(linear_image(cube(2, 1), A)) == doctest::Approx(24));
  CHECK(volume(linear_image(unit_ball(2), A)) == doctest::Approx(6 * pi));
  const ConvexBody r = regular_polygon(6, 1);
  CHECK(volume(r) == doctest::Approx(1.5 * std::sqrt(3.0)));
  CHECK(volume(translate(cube(2, 1), Eigen::Vector2d(5, 5))) == doctest::Approx(4));
  CHECK(volume(scale(cube(2, 1), 2)) == doctest::Approx(16));
}

TEST_CASE("sampled bodies") {
  const auto grid = default_sphere_grid(2);
  Eigen::VectorXd h(grid->size());
  for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = support(cube(2, 1), grid->node(i));
  const ConvexBody S = sampled_body(grid, h);
  CHECK(volume(S) == doctest::Approx(4).epsilon(1e-4));
  CHECK(convexity_defect(S.sampled()) < 1e-9);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(grid->size());
  bad(7) = 0;
  CHECK_THROWS_AS(sampled_body(grid, bad), Error);
}

TEST_CASE("measures") {
  const SphericalMeasure u = uniform_measure(*default_sphere_grid(2));
  CHECK(u.total() == doctest::Approx(2 * pi));
  CHECK(hemisphere_margin(u) > 1.9);
  Eigen::MatrixXd d(2, 3);
  d << 1, 0.9, 0.8, 0, 0.1, 0.3;
  CHECK_THROWS_AS(require_not_concentrated(make_measure(d, Eigen::Vector3d::Ones())), Error);
  CHECK(scaled(u, 2).total() == doctest::Approx(4 * pi));
}

TEST_CASE("body literals round-trip") {
  const ConvexBody K = parse_body("polytope n=2 v=(0,0);(1,0);(0,1)");
  CHECK(volume(K) == doctest::Approx(0.5));
  const ConvexBody E = parse_body("ellipsoid n=2 a=(1,0;0,4)");
  CHECK(volume(E) == doctest::Approx(pi / 2));
  CHECK(volume(parse_body(format_body(K))) == doctest::Approx(0.5));
  CHECK(volume(parse_body(format_body(E))) == doctest::Approx(pi / 2));
  CHECK_THROWS_AS(parse_body("blob n=2"), Error);
}
