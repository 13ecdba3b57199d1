#include "affiq/extremals.hpp"
#include "affiq/minkowski.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace affiq;
using std::numbers::pi;

namespace {

SphericalMeasure four_atoms() {
  Eigen::MatrixXd d(2, 4);
  d << 1, -1, 0, 0, 0, 0, 1, -1;
  return make_measure(d, Eigen::VectorXd::Ones(4));
}

}  // namespace

TEST_CASE("four atoms, p = 1: the unit-side square") {
  const MinkowskiSolution s = solve_lp_minkowski(four_atoms(), 1);
  CHECK(s.converged);
  CHECK(s.residual <= 1e-6);
  CHECK(volume(s.body) == doctest::Approx(1).epsilon(1e-6));
  CHECK(width(s.body, Eigen::Vector2d(1, 0)) == doctest::Approx(1).epsilon(1e-6));
  CHECK(width(s.body, Eigen::Vector2d(0, 1)) == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("four atoms, p = 2: a square with unit normalisation") {
  const MinkowskiSolution s = solve_lp_minkowski(four_atoms(), 2);
  CHECK(s.defect <= 1e-6);
  // Symmetric ansatz h_i = h: (1/2) 4 h^2 = 1 gives h = 1/sqrt(2).
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(s.support(i) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("uniform measure gives a disk") {
  const SphericalMeasure u = uniform_measure(*default_sphere_grid(2));
  const MinkowskiSolution s = solve_lp_minkowski(u, 1);
  // vol(rB) h^0 dtheta = r dtheta forces pi r^2 = r.
  CHECK(s.support.minCoeff() == doctest::Approx(1 / pi).epsilon(1e-3));
  CHECK(s.support.maxCoeff() == doctest::Approx(1 / pi).epsilon(1e-3));
  const MinkowskiSolution s2 = solve_lp_minkowski(u, 2);
  // (1/2) 2 pi r^2 = 1.
  CHECK(s2.support.mean() == doctest::Approx(1 / std::sqrt(pi)).epsilon(1e-3));
}

TEST_CASE("hemisphere measures are rejected") {
  Eigen::MatrixXd d(2, 3);
  d << 1, 0.8, 0.6, 0, 0.6, -0.8;
  CHECK_THROWS_AS(solve_lp_minkowski(make_measure(d, Eigen::Vector3d::Ones()), 2), Error);
  CHECK_THROWS_AS(verify_lemma_body(make_measure(d, Eigen::Vector3d::Ones()), 2, q_preset("segment")), Error);
}

TEST_CASE("level-set measure of the cone") {
  ExtremalParams prm;
  const GridFunction f = make_extremal(ExtremalKind::cone, prm);
  // Coarea: |grad f|^{p-1} = 1 on the circle of radius 1/2.
  for (double p : {1.0, 2.0}) {
    const SphericalMeasure nu = level_set_measure(f, 0.5, p);
    CHECK(nu.total() == doctest::Approx(pi).epsilon(0.01));
    CHECK(nu.weights.maxCoeff() / nu.weights.minCoeff() <= 1.1);
  }
}

TEST_CASE("convexification of the cone is round") {
  ExtremalParams prm;
  const GridFunction f = make_extremal(ExtremalKind::cone, prm);
  const MinkowskiSolution s = asymmetric_convexification(f, 0.5, 2);
  CHECK(s.support.maxCoeff() / s.support.minCoeff() <= 1.05);
}

TEST_CASE("lemma body inequality") {
  const LemmaCheck c = verify_lemma_body(four_atoms(), 1, q_preset("segment"));
  CHECK(c.lhs <= c.rhs * 1.01);
  const LemmaCheck b = verify_lemma_body(uniform_measure(*default_sphere_grid(2)), 2, q_preset("segment"));
  CHECK(b.lhs == doctest::Approx(b.rhs).epsilon(0.02));
  CHECK(polar_projection_volume_ball(2, 1, q_preset("segment")) == doctest::Approx(pi / 4).epsilon(1e-3));
}
