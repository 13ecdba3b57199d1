#include "affiq/projection.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace affiq;
using std::numbers::pi;

namespace {

MatrixDirection slot_e1(int n, int m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, m);
  t(0, 0) = 1;
  return {t};
}

}  // namespace

TEST_CASE("Q presets") {
  CHECK(q_preset("segment").volume == doctest::Approx(1));
  CHECK(q_preset("segment+").vertices.minCoeff() == doctest::Approx(0));
  CHECK(q_preset("square").dim == 2);
  CHECK(q_preset("simplex2").volume == doctest::Approx(0.5));
  CHECK_THROWS_AS(q_preset("hexagon"), Error);
  Eigen::MatrixXd origin = Eigen::MatrixXd::Zero(1, 2);
  CHECK_THROWS_AS(q_body(origin), Error);
}

TEST_CASE("cosine transform") {
  const SphericalMeasure u = uniform_measure(*default_sphere_grid(2));
  CHECK(cosine_transform(u, q_preset("segment"), 1, slot_e1(2, 1)) == doctest::Approx(2).epsilon(1e-5));
  Eigen::MatrixXd d(2, 2);
  d << 1, -1, 0, 0;
  const SphericalMeasure two = make_measure(d, Eigen::Vector2d::Ones());
  // Two antipodal atoms lie in a closed half-circle, so the checked entry point
  // refuses them; the kernel itself gives (1)_+ + (-1)_+ = 1.
  CHECK_THROWS_AS(cosine_transform(two, q_preset("segment+"), 1, slot_e1(2, 1)), Error);
  CHECK(cosine_transform_nodes(two.directions, two.weights, q_preset("segment+"), 1, slot_e1(2, 1).theta)(0) ==
        doctest::Approx(1));
  CHECK_THROWS_AS(cosine_transform(make_measure(d.leftCols(1), Eigen::VectorXd::Ones(1)), q_preset("segment"), 1,
                                   slot_e1(2, 1)),
                  Error);
}

TEST_CASE("projection bodies") {
  const auto g2 = default_sphere_grid(2);
  const ConvexBody PB = projection_body(unit_ball(2), q_preset("segment"), 1, 1, g2);
  CHECK(PB.sampled().h.minCoeff() == doctest::Approx(2).epsilon(1e-4));
  CHECK(PB.sampled().h.maxCoeff() == doctest::Approx(2).epsilon(1e-4));
  const ConvexBody PS = projection_body(cube(2, 1), q_preset("segment"), 1, 1, g2);
  CHECK(support(PS, Eigen::Vector2d(1, 0)) == doctest::Approx(2).epsilon(1e-9));
  const ConvexBody PU = projection_body_of_measure(surface_measure(cube(2, 0.5)), q_preset("segment"), 1, 1, g2);
  CHECK(support(PU, Eigen::Vector2d(1, 0)) == doctest::Approx(1).epsilon(1e-9));
  CHECK(polar_projection_volume(PB) == doctest::Approx(pi / 4).epsilon(1e-3));
}

TEST_CASE("projection body is SL-covariant") {
  // Pi (phi K) = phi^{-t} Pi K for p = 1, m = 1.
  Eigen::MatrixXd A(2, 2);
  A << 1.5, 0.4, 0.2, 0.72;
  A /= std::sqrt(A.determinant());
  const auto g2 = default_sphere_grid(2);
  const ConvexBody K = regular_polygon(7);
  const ConvexBody PK = projection_body(K, q_preset("segment"), 1, 1, g2);
  const ConvexBody PAK = projection_body(linear_image(K, A), q_preset("segment"), 1, 1, g2);
  CHECK(polar_projection_volume(PAK) == doctest::Approx(polar_projection_volume(PK)).epsilon(2e-3));
}

TEST_CASE("centroid body of the disk") {
  const auto g2 = default_sphere_grid(2);
  const RadialSample L{g2, Eigen::VectorXd::Ones(g2->size())};
  const ConvexBody G = centroid_body(L, q_preset("segment"), 1, g2);
  CHECK(G.sampled().h.minCoeff() == doctest::Approx(2 / (3 * pi)).epsilon(1e-4));
  CHECK(G.sampled().h.maxCoeff() == doctest::Approx(2 / (3 * pi)).epsilon(1e-4));
}

TEST_CASE("d_{n,p}(Q)") {
  CHECK(dnp_constant(2, 1, 1, q_preset("segment")) == doctest::Approx(2 * pi * std::sqrt(pi / 2)).epsilon(1e-3));
  const unsigned long seed = 42;
  for (const char* q : {"segment+", "segment"})
    CHECK(dnp_constant(2, 1, 1, q_preset(q)) ==
          doctest::Approx(dnp_constant_haar(2, 1, 1, q_preset(q), 20000, seed)).epsilon(0.01));
  CHECK(dnp_constant(2, 2, 2, q_preset("square")) ==
        doctest::Approx(dnp_constant_haar(2, 2, 2, q_preset("square"), 20000, seed)).epsilon(0.01));
  // d_{n,p} tends to d_{n,inf} as p grows.
  const double dinf = dnp_constant_infinity(2, 1, q_preset("segment"));
  CHECK(std::abs(dnp_constant(2, 1, 32, q_preset("segment")) / dinf - 1) <
        std::abs(dnp_constant(2, 1, 4, q_preset("segment")) / dinf - 1));
}

TEST_CASE("lift map") {
  CHECK(lift_map(Eigen::MatrixXd::Identity(2, 2), 2).isIdentity());
  const double c = std::cos(0.7), s = std::sin(0.7);
  Eigen::MatrixXd R(2, 2);
  R << c, -s, s, c;
  const Eigen::MatrixXd L = lift_map(R, 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    Eigen::Vector4d t(g(rng), g(rng), g(rng), g(rng));
    CHECK((L * t).norm() == doctest::Approx(t.norm()));
  }
}

TEST_CASE("random SL matrices") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Eigen::MatrixXd A = random_sl(2, 5, s);
    CHECK(A.determinant() == doctest::Approx(1).epsilon(1e-12));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    CHECK(svd.singularValues()(0) / svd.singularValues()(1) <= 5 + 1e-9);
  }
}
