#include "affiq/constants.hpp"
#include "affiq/extremals.hpp"
#include "affiq/suites.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace affiq;
using std::numbers::pi;

namespace {

double omega(int n) { return std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1); }

// int_0^inf g(r) dr by Simpson's rule after r = t / (1 - t).
template <typename G>
double half_line(G g, int steps = 200000) {
  auto h = [&](double t) {
    if (t <= 0 || t >= 1) return 0.0;
    const double r = t / (1 - t);
    return g(r) / ((1 - t) * (1 - t));
  };
  const double dt = 1.0 / steps;
  double s = h(0) + h(1);
  for (int i = 1; i < steps; ++i) s += (i % 2 ? 4 : 2) * h(i * dt);
  return s * dt / 3;
}

// ||grad u||_p / ||u||_{np/(n-p)} for the Talenti profile (1 + r^{p'})^{-(n-p)/p}.
double talenti_quotient(int n, double p) {
  const double pc = p / (p - 1), e = (n - p) / p, ps = n * p / (n - p), area = n * omega(n);
  auto u = [&](double r) { return std::pow(1 + std::pow(r, pc), -e); };
  auto du = [&](double r) { return e * pc * std::pow(r, pc - 1) * std::pow(1 + std::pow(r, pc), -e - 1); };
  const double grad = half_line([&](double r) { return std::pow(du(r), p) * std::pow(r, n - 1); }) * area;
  const double val = half_line([&](double r) { return std::pow(u(r), ps) * std::pow(r, n - 1); }) * area;
  return std::pow(grad, 1 / p) / std::pow(val, 1 / ps);
}

template <typename F>
double bisect(F f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) < 0) == (f(lo) < 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("sharp Sobolev constant") {
  CHECK(sobolev_constant(2, 1) == doctest::Approx(2 * std::sqrt(pi)).epsilon(1e-9));
  CHECK(sobolev_constant(3, 1) == doctest::Approx(3 * std::cbrt(omega(3))).epsilon(1e-9));
  const double a = sobolev_constant(3, 2);
  CHECK(a > 0);
  CHECK(sobolev_constant(3, 2 + 1e-8) == doctest::Approx(a).epsilon(1e-6));
  CHECK_THROWS_AS(sobolev_constant(2, 2), Error);
}

TEST_CASE("Sobolev constant against the Talenti quotient") {
  CHECK(sobolev_constant(3, 2) == doctest::Approx(talenti_quotient(3, 2)).epsilon(1e-6));
  CHECK(sobolev_constant(2, 1.5) == doctest::Approx(talenti_quotient(2, 1.5)).epsilon(1e-6));
  CHECK(sobolev_constant(3, 1.5) == doctest::Approx(talenti_quotient(3, 1.5)).epsilon(1e-6));
}

TEST_CASE("Morrey constant") {
  for (auto [n, p] : {std::pair{2, 3.0}, {2, 4.0}, {3, 5.0}}) {
    const double b = std::pow(n, -1 / p) * std::pow(omega(n), -1.0 / n) * std::pow((p - 1) / (p - n), (p - 1) / p);
    CHECK(morrey_constant(n, p) == doctest::Approx(b).epsilon(1e-12));
  }
  CHECK_THROWS_AS(morrey_constant(2, 2), Error);
  CHECK_THROWS_AS(morrey_constant(3, 1.5), Error);
}

TEST_CASE("Morrey constant attained by f_MS") {
  // ||f||_inf = b vol(supp)^{1/n - 1/p} ||grad f||_p for the radial extremal,
  // by one-dimensional quadrature of |f'|^p = (e r^{e-1})^p.
  for (auto [n, p] : {std::pair{2, 4.0}, {3, 6.0}}) {
    const double e = (p - n) / (p - 1);
    // int_0^1 (e r^{e-1})^p n omega r^{n-1} dr in closed form.
    const double grad = std::pow(e, p) * n * omega(n) / (p * (e - 1) + n);
    const double rhs = morrey_constant(n, p) * std::pow(omega(n), 1.0 / n - 1 / p) * std::pow(grad, 1 / p);
    CHECK(rhs == doctest::Approx(1).epsilon(1e-10));
  }
}

TEST_CASE("log-Sobolev constant") {
  CHECK(logsobolev_constant(2, 2) == doctest::Approx(0.3422).epsilon(1e-4));
  CHECK(std::abs(logsobolev_constant(2, 2) - std::sqrt(2 / (2 * std::numbers::e * pi))) <= 1e-9);
  CHECK(std::abs(logsobolev_constant(3, 2) - std::sqrt(2 / (3 * std::numbers::e * pi))) <= 1e-9);
  const double c1 = logsobolev_constant(2, 1);
  CHECK(logsobolev_constant(2, 1 + 1e-7) == doctest::Approx(c1).epsilon(1e-5));
}

TEST_CASE("Gagliardo-Nirenberg parameters") {
  const GNParameters g = gn_parameters(3, 2, 2.5);
  CHECK(g.delta == doctest::Approx(3.5));
  CHECK(g.r == doctest::Approx(3));
  CHECK(g.theta == doctest::Approx(3 * 0.5 / (1.5 * 3.5)));
  CHECK_THROWS_AS(gn_parameters(3, 2, 2), Error);
  CHECK_THROWS_AS(gn_parameters(3, 2, 4.5), Error);
}

TEST_CASE("GN boundary is the Sobolev case") {
  for (auto [n, p] : {std::pair{2, 1.5}, {2, 1.2}, {3, 2.0}, {3, 1.5}}) {
    const double qmax = p * (n - 1) / (n - p);
    const GNParameters g = gn_parameters(n, p, qmax);
    CHECK(g.theta == doctest::Approx(1));
    CHECK(g.r == doctest::Approx(n * p / (n - p)));
    CHECK(std::abs(g.alpha - sobolev_constant(n, p)) <= 1e-6);
    // The profile exponent -(p-1)/(q-p) becomes the Talenti exponent -(n-p)/p.
    CHECK((p - 1) / (qmax - p) == doctest::Approx((n - p) / p).epsilon(1e-12));
  }
}

TEST_CASE("f_GN at the boundary is the Talenti profile") {
  ExtremalParams prm;
  prm.n = 2;
  prm.p = 1.5;
  prm.q = 3;
  prm.cutoff = 1e-6;
  const TestFunction f = extremal_function(ExtremalKind::gn, prm);
  Eigen::Vector2d x0 = Eigen::Vector2d::Zero();
  const double f0 = f.f(x0);
  for (double r : {0.3, 1.0, 2.5}) {
    const double talenti = std::pow(1 + std::pow(r, 3.0), -1.0 / 3);
    CHECK(f.f(Eigen::Vector2d(r, 0)) / f0 == doctest::Approx(talenti).epsilon(1e-4));
  }
}

TEST_CASE("Nash eigenvalue against Bessel roots") {
  // n = 2: u = J_0(sqrt(lambda) r), u'(1) = 0 at the first zero of J_1.
  const double j11 = bisect([](double x) { return std::cyl_bessel_j(1.0, x); }, 3, 4.5);
  CHECK(nash_profile(2).lambda == doctest::Approx(j11 * j11).epsilon(1e-6));
  CHECK(nash_profile(2).lambda == doctest::Approx(14.682).epsilon(1e-4));
  // n = 3: u = sin(k r)/(k r), u'(1) = 0 iff tan k = k.
  const double k = bisect([](double x) { return std::tan(x) - x; }, 4.0, 4.6);
  CHECK(nash_profile(3).lambda == doctest::Approx(k * k).epsilon(1e-6));
  CHECK(lambda_series(2) == doctest::Approx(j11 * j11).epsilon(1e-8));
  CHECK(lambda_series(3) == doctest::Approx(k * k).epsilon(1e-8));
}

TEST_CASE("Nash profile") {
  const NashProfile u = nash_profile(2);
  CHECK(u(0) == doctest::Approx(1));
  const double s = std::sqrt(u.lambda);
  for (double r : {0.25, 0.5, 0.9}) CHECK(u(r) == doctest::Approx(std::cyl_bessel_j(0.0, s * r)).epsilon(1e-6));
  CHECK(nash_constant(2) > 0);
}

TEST_CASE("Moser-Trudinger lower estimate") {
  const MoserTrudingerEstimate m = moser_trudinger_lower_estimate(2);
  CHECK(m.value >= 1);
  CHECK(moser_trudinger_functional(2, m.a, m.b, m.gamma) == doctest::Approx(m.value).epsilon(1e-9));
}

TEST_CASE("constants table carries provenance") {
  const auto rows = constants_table(2, 2);
  bool c22 = false;
  for (const ConstantRow& r : rows) {
    CHECK((r.provenance == "CLOSED-FORM" || r.provenance == "ODE" || r.provenance == "ESTIMATE"));
    if (std::abs(r.value - 0.342198) < 1e-5) c22 = true;
  }
  CHECK(c22);
}
