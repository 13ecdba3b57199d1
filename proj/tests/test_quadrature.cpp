#include "affiq/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace affiq;
using std::numbers::pi;

TEST_CASE("uniform circle rule") {
  const SphereGrid g = sphere_grid(2, 360, SphereScheme::product);
  REQUIRE(g.size() == 360);
  for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(g.weights(i) == doctest::Approx(2 * pi / 360).epsilon(1e-14));
  const double step = std::atan2(g.node(1)(1), g.node(1)(0)) - std::atan2(g.node(0)(1), g.node(0)(0));
  CHECK(step == doctest::Approx(2 * pi / 360).epsilon(1e-12));
}

TEST_CASE("sphere weights sum to the surface area") {
  CHECK(sphere_grid(3, 26, SphereScheme::product).weights.sum() == doctest::Approx(4 * pi).epsilon(1e-9));
  // 6 omega_6 = pi^3.
  CHECK(sphere_grid(6, 4096, SphereScheme::low_discrepancy).weights.sum() == doctest::Approx(std::pow(pi, 3)).epsilon(1e-6));
  for (int d = 2; d <= 6; ++d)
    CHECK(default_sphere_grid(d)->weights.sum() == doctest::Approx(d * ball_volume(d)).epsilon(1e-6));
}

TEST_CASE("ball volume by the gamma formula") {
  CHECK(ball_volume(2) == doctest::Approx(pi));
  CHECK(ball_volume(3) == doctest::Approx(4 * pi / 3));
  CHECK(ball_volume(6) == doctest::Approx(std::pow(pi, 3) / 6));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
}

TEST_CASE("integrate_sphere") {
  const auto c = default_sphere_grid(2);
  CHECK(integrate_sphere(*c, [](const Eigen::Ref<const Eigen::VectorXd>&) { return 1.0; }) == doctest::Approx(2 * pi));
  const auto s = default_sphere_grid(3);
  CHECK(integrate_sphere(*s, [](const Eigen::Ref<const Eigen::VectorXd>& t) { return t(0) * t(0); }) ==
        doctest::Approx(4 * pi / 3).epsilon(1e-6));
  // Unit disk via polar coordinates: (1/2) int ||theta||^{-2} = pi.
  CHECK(0.5 * integrate_sphere(*c, [](const Eigen::Ref<const Eigen::VectorXd>& t) { return 1 / t.squaredNorm(); }) ==
        doctest::Approx(pi));
}

TEST_CASE("integrate_sphere rejects non-finite values") {
  const auto c = default_sphere_grid(2);
  CHECK_THROWS(integrate_sphere(*c, [](const Eigen::Ref<const Eigen::VectorXd>&) { return NAN; }));
}

TEST_CASE("monomial moments on S^3 and S^5") {
  // int_{S^{d-1}} theta_1^2 theta_2^2 = area / (d (d + 2)).
  for (int d : {4, 6}) {
    const auto g = default_sphere_grid(d);
    const double v = integrate_sphere(*g, [](const Eigen::Ref<const Eigen::VectorXd>& t) { return t(0) * t(0) * t(1) * t(1); });
    CHECK(v == doctest::Approx(sphere_area(d) / (d * (d + 2.0))).epsilon(2e-2));
  }
}

TEST_CASE("Gauss-Gegenbauer integrates polynomials exactly") {
  const GaussRule r = gauss_gegenbauer(8, 0.5);
  // int_{-1}^{1} t^2 (1 - t^2)^{1/2} dt = pi / 8.
  double s = 0;
  for (Eigen::Index i = 0; i < r.nodes.size(); ++i) s += r.weights(i) * r.nodes(i) * r.nodes(i);
  CHECK(s == doctest::Approx(pi / 8).epsilon(1e-12));
}

TEST_CASE("box grids") {
  const BoxGrid a = box_grid(2, 2.0, 129);
  CHECK(a.cell_volume() == doctest::Approx(std::pow(4.0 / 129, 2)));
  const BoxGrid b = box_grid(1, 1.0, 33);
  CHECK(b.size() == 33);
  CHECK(b.coordinate(0) == doctest::Approx(-1 + 1.0 / 33));
  CHECK(b.coordinate(16) == doctest::Approx(0).epsilon(1e-15));
  const BoxGrid c = box_grid(3, 1.5, 65);
  CHECK(c.size() == 65 * 65 * 65);
  CHECK(c.center(0)(2) == doctest::Approx(-c.center(c.size() - 1)(2)));
  CHECK_THROWS(box_grid(2, 1.0, 64));
}

TEST_CASE("ravel and unravel are inverse") {
  const BoxGrid g = box_grid(3, 1.0, 33);
  std::mt19937 rng(1);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index i = Eigen::Index(rng() % std::uint32_t(g.size()));
    CHECK(g.ravel(g.unravel(i)) == i);
  }
}

TEST_CASE("pairwise_sum is order independent of chunking") {
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(10001, 0, 1);
  CHECK(pairwise_sum(v) == doctest::Approx(5000.5).epsilon(1e-14));
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, [&](Eigen::Index i) { hits[std::size_t(i)] += 1; });
  for (int h : hits) CHECK(h == 1);
}
