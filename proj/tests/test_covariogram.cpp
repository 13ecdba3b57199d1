#include "affiq/covariogram.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace affiq;
using std::numbers::pi;

namespace {

Polytope unit_square() {
  Eigen::MatrixXd v(2, 4);
  v << 0, 1, 1, 0, 0, 0, 1, 1;
  return make_polytope(v);
}

Polytope triangle() {
  Eigen::MatrixXd v(2, 3);
  v << 0, 1, 0, 0, 0, 1;
  return make_polytope(v);
}

// vol(K ∩ (K + x)) for the unit square in closed form.
double square_g(double x, double y) { return std::max(0.0, 1 - std::abs(x)) * std::max(0.0, 1 - std::abs(y)); }

// Monte Carlo area of the difference body D^1 K = K - K via support functions.
double difference_area_mc(const Polytope& K, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double R = 2 * K.vertices.colwise().norm().maxCoeff();
  std::uniform_real_distribution<double> u(-R, R);
  int hit = 0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Vector2d x(u(rng), u(rng));
    // x in K - K iff x.n <= h_K(n) + h_K(-n) for every facet normal n of K - K, which are
    // the normals of K and -K.
    bool in = true;
    for (Eigen::Index i = 0; i < K.facet_count() && in; ++i) {
      const Eigen::Vector2d n = K.normals.col(i);
      const double w = (K.vertices.transpose() * n).maxCoeff() - (K.vertices.transpose() * n).minCoeff();
      in = std::abs(x.dot(n)) <= w;
    }
    hit += in;
  }
  return 4 * R * R * hit / samples;
}

}  // namespace

TEST_CASE("covariogram of the unit square") {
  const Polytope K = unit_square();
  CHECK(covariogram(K, Eigen::Vector2d(0, 0)) == doctest::Approx(1));
  CHECK(covariogram(K, Eigen::Vector2d(0.5, 0)) == doctest::Approx(0.5));
  CHECK(covariogram(K, Eigen::Vector2d(2, 0)) == doctest::Approx(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int k = 0; k < 50; ++k) {
    const double x = u(rng), y = u(rng);
    CHECK(covariogram(K, Eigen::Vector2d(x, y)) == doctest::Approx(square_g(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("m-covariogram") {
  const Polytope K = unit_square();
  CHECK(m_covariogram(K, Eigen::MatrixXd::Zero(2, 2)) == doctest::Approx(1));
  Eigen::MatrixXd xs(2, 2);
  xs << 0.5, 0, 0, 0.5;
  CHECK(m_covariogram(K, xs) == doctest::Approx(0.25));
}

TEST_CASE("difference body radial function") {
  const Polytope sq = cube(2, 1).polytope();
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int k = 0; k < 20; ++k) {
    const Eigen::Vector2d t = Eigen::Vector2d(g(rng), g(rng)).normalized();
    // DK = 2K for symmetric K; rho_K(t) = 1 / |t|_inf.
    CHECK(difference_body_radial(sq, 1, t) == doctest::Approx(2 / t.cwiseAbs().maxCoeff()).epsilon(1e-9));
  }
  const Polytope disk = regular_polygon(720).polytope();
  CHECK(difference_body_radial(disk, 1, Eigen::Vector2d(0.6, 0.8)) == doctest::Approx(2).epsilon(1e-4));
  Eigen::Vector4d t(1, 0, 0, 0);
  CHECK(difference_body_radial(unit_square(), 2, t) == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("Schneider ratios in the plane") {
  CHECK(schneider_ratio(cube(2, 0.5).polytope(), 1) == doctest::Approx(4).epsilon(1e-3));
  CHECK(schneider_ratio(triangle(), 1) == doctest::Approx(6).epsilon(1e-3));
  CHECK(schneider_ratio(regular_polygon(256).polytope(), 1) == doctest::Approx(4).epsilon(1e-3));
}

TEST_CASE("difference body area against Monte Carlo") {
  // Independent oracle: rejection sampling of K - K, area over area of K.
  for (const Polytope& K : {triangle(), regular_polygon(5).polytope()}) {
    const double mc = difference_area_mc(K, 400000, 9) / K.volume;
    CHECK(schneider_ratio(K, 1) == doctest::Approx(mc).epsilon(0.01));
  }
}

TEST_CASE("Schneider ratio is affine invariant") {
  const Polytope K = regular_polygon(5).polytope();
  Eigen::MatrixXd A(2, 2);
  A << 2, 1, 0.3, 1;
  const Polytope AK = make_polytope(A * K.vertices);
  CHECK(schneider_ratio(AK, 1) == doctest::Approx(schneider_ratio(K, 1)).epsilon(1e-3));
}

TEST_CASE("Matheron derivative") {
  const Polytope sq = unit_square();
  CHECK(matheron_derivative(sq, Eigen::Vector2d(1, 0)) == doctest::Approx(-1).epsilon(1e-6));
  CHECK(matheron_derivative(sq, Eigen::Vector2d(1, 1).normalized()) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-6));
  const Polytope disk = regular_polygon(720).polytope();
  CHECK(matheron_derivative(disk, Eigen::Vector2d(0.3, -0.7).normalized()) == doctest::Approx(-2).epsilon(1e-3));
}

TEST_CASE("ratio optimiser") {
  const RatioSearch mx = optimize_ratio(PolygonFamily::polygons, 2, 1, Sense::max, 300, 42, 2);
  CHECK(mx.ratio == doctest::Approx(6).epsilon(0.02));
  const RatioSearch mn = optimize_ratio(PolygonFamily::symmetric_polygons, 2, 1, Sense::min, 200, 42, 2);
  CHECK(mn.ratio == doctest::Approx(4).epsilon(0.02));
}
