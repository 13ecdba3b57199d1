#include "affiq/report.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

using namespace affiq;
using std::numbers::pi;

namespace {

Polytope square(double s) { return cube(2, s).polytope(); }

}  // namespace

TEST_CASE("cone extremal") {
  ExtremalParams prm;
  const GridFunction f = make_extremal(ExtremalKind::cone, prm);
  Eigen::Index imax;
  CHECK(f.values.maxCoeff(&imax) == doctest::Approx(1));
  CHECK(f.grid.center(imax).norm() < 1e-12);
  CHECK(support_volume(f) == doctest::Approx(pi).epsilon(0.01));
}

TEST_CASE("f_MS endpoints") {
  ExtremalParams prm;
  prm.p = 3;
  prm.a = 2.5;
  const TestFunction f = extremal_function(ExtremalKind::morrey, prm);
  CHECK(f.f(Eigen::Vector2d(0, 0)) == doctest::Approx(2.5));
  CHECK(f.f(Eigen::Vector2d(0.6, 0.8)) == doctest::Approx(0).epsilon(1e-12));
  CHECK(f.f(Eigen::Vector2d(1.5, 0)) == 0);
  prm.p = 2;
  CHECK_THROWS_AS(extremal_function(ExtremalKind::morrey, prm), Error);
}

TEST_CASE("extremal names round-trip") {
  for (ExtremalKind k : {ExtremalKind::cone, ExtremalKind::bump, ExtremalKind::morrey, ExtremalKind::log_sobolev,
                         ExtremalKind::gn, ExtremalKind::nash})
    CHECK(parse_extremal(extremal_name(k)) == k);
  CHECK_THROWS_AS(parse_extremal("plateau"), Error);
}

TEST_CASE("composition with A and a shift") {
  ExtremalParams prm;
  Eigen::MatrixXd A(2, 2);
  A << 2, 0, 0, 0.5;
  prm.A = A;
  prm.shift = Eigen::Vector2d(0.3, -0.2);
  const GridFunction f = make_extremal(ExtremalKind::cone, prm);
  // Support {|A(x - x0)| < 1} has area pi / det A.
  CHECK(support_volume(f) == doctest::Approx(pi).epsilon(0.02));
  Eigen::Index imax;
  f.values.maxCoeff(&imax);
  CHECK((f.grid.center(imax) - prm.shift).norm() <= f.grid.cell_diameter());
}

TEST_CASE("fixed boxes that cut the support are rejected") {
  ExtremalParams prm;
  prm.halfwidth = 0.8;
  CHECK_THROWS_AS(make_extremal(ExtremalKind::cone, prm), Error);
}

TEST_CASE("random test functions are deterministic and supported in the unit ball") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const TestFunction f = random_test_function(2, s), g = random_test_function(2, s);
    const Eigen::Vector2d x(0.31, -0.17);
    CHECK(f.f(x) == g.f(x));
    CHECK(f.f(Eigen::Vector2d(0.99, 0.1)) == 0);
    CHECK(has_compact_support(sample_composed(f)));
  }
  CHECK(random_test_function(3, 1).dim == 3);
}

TEST_CASE("width") {
  CHECK(width(square(1), Eigen::Vector2d(1, 0)) == doctest::Approx(2));
  CHECK(width(square(1), Eigen::Vector2d(1, 1).normalized()) == doctest::Approx(2 * std::sqrt(2.0)));
  const ConvexBody B = scale(unit_ball(2), 1.7);
  for (double a : {0.0, 0.4, 2.0}) CHECK(width(B, Eigen::Vector2d(std::cos(a), std::sin(a))) == doctest::Approx(3.4));
}

TEST_CASE("functions inside Omega") {
  const Polytope& Omega = poincare_domain();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const GridFunction f = sample_composed(random_function_in(Omega, s));
    for (Eigen::Index i = 0; i < f.size(); ++i)
      if (f.values(i) != 0) {
        const Eigen::VectorXd x = f.grid.center(i);
        CHECK((Omega.normals.transpose() * x - Omega.offsets).maxCoeff() < 0);
      }
  }
}

TEST_CASE("Poincare ratio") {
  ExtremalParams prm;
  GridFunction f = make_extremal(ExtremalKind::cone, prm);
  const PoincareRatio r = poincare_ratio(f, q_preset("segment"), 2);
  CHECK(r.ratio > 0);
  CHECK(r.min_support > 0);
  // E = sqrt(pi), ||f||_2 = sqrt(pi/6), ||grad f||_2 = sqrt(pi): ratio = E / ||f||_2^{1/2} ||grad f||_2^{1/2}.
  CHECK(r.ratio == doctest::Approx(std::pow(6.0, 0.25)).epsilon(0.01));
  f.values *= 2;
  CHECK(poincare_ratio(f, q_preset("segment"), 2).ratio == doctest::Approx(r.ratio).epsilon(1e-10));
  CHECK_THROWS_AS(poincare_ratio(f, q_preset("segment+"), 2), Error);
  CHECK_THROWS_AS(poincare_ratio(f, q_preset("simplex2"), 2), Error);
  CHECK(is_origin_symmetric(q_preset("square")));
  CHECK_FALSE(is_origin_symmetric(q_preset("segment+")));
}

TEST_CASE("theorem tag coverage") {
  const auto& tags = theorem_tags();
  const std::set<std::string> expected(tags.begin(), tags.end());
  CHECK(expected.size() == tags.size());
  std::set<std::string> seen;
  for (const CaseSpec& c : suite_cases("all")) {
    CHECK(expected.count(c.tag) == 1);
    seen.insert(c.tag);
    if (c.relation != Relation::abs) CHECK((c.tol > 0 && c.tol <= 0.1));
  }
  CHECK(seen == expected);
}

TEST_CASE("case ids are unique and every suite is non-empty") {
  for (const auto& s : suite_names()) {
    const auto cases = suite_cases(s);
    CHECK(!cases.empty());
    std::set<std::string> ids;
    for (const CaseSpec& c : cases) ids.insert(c.case_id());
    CHECK(ids.size() == cases.size());
  }
  CHECK(is_suite("all"));
  CHECK_FALSE(is_suite("bogus"));
  CHECK_THROWS_AS(suite_cases("bogus"), Error);
}

TEST_CASE("module errors become failed rows with a token") {
  CaseSpec c;
  c.suite = "poincare";
  c.tag = "poincare";
  c.check = "poincare-constant";
  c.label = "cone:segment+";
  c.function = "cone";
  c.Q = "segment+";
  c.relation = Relation::pos;
  const ReportRow r = verify(c);
  CHECK_FALSE(r.pass);
  CHECK(r.error == "domain");
  CHECK(std::isnan(r.lhs));
}

TEST_CASE("verify examples") {
  CaseSpec ps;
  ps.suite = "polya-szego";
  ps.tag = "polya-szego";
  ps.check = "rearrangement";
  ps.label = "cone-shear";
  Eigen::MatrixXd A(2, 2);
  A << 1, 0.8, 0, 1;
  ps.A = A;
  ps.p = 2;
  const ReportRow r = verify(ps);
  CHECK(r.pass);
  CHECK(r.ratio >= 0.99);

  CaseSpec so = ps;
  so.suite = "sobolev";
  so.tag = "affine-sobolev";
  so.check = "affine-sobolev";
  so.A.resize(0, 0);
  so.p = 1.5;
  CHECK(verify(so).pass);
}

TEST_CASE("report CSV") {
  Report rep;
  ReportRow a;
  a.suite = "relate";
  a.case_id = "radial-comparison/0000/x";
  a.n = 2;
  a.m = 1;
  a.p = 1.5;
  a.Q = "segment";
  a.lhs = 1.0 / 3;
  a.rhs = 2;
  a.ratio = 6;
  a.tol = 0.01;
  a.pass = true;
  ReportRow b = a;
  b.case_id = "radial-comparison/0001/y";
  b.lhs = b.rhs = b.ratio = NAN;
  b.pass = false;
  rep.rows = {a, b};
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("# affiq-report v1\nsuite,case_id,n,m,p,Q,lhs,rhs,ratio,tol,pass,runtime_ms\n", 0) == 0);
  CHECK(csv.find("relate,radial-comparison/0000/x,2,1,1.5,segment,0.333333333,2,6,0.01,true,0\n") != std::string::npos);
  const std::string path = "affiq_report_test.csv";
  write_csv(rep, path);
  const Report back = read_report_csv(path);
  std::remove(path.c_str());
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].pass);
  CHECK(std::isnan(back.rows[1].lhs));
  CHECK(to_csv(back) == csv);
  const std::string svg = to_svg(rep);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("relate (1/2 pass)") != std::string::npos);
  CHECK(rep.passed() == 1);
  CHECK_FALSE(rep.all_passed());
}

TEST_CASE("rows are reproducible") {
  auto cases = suite_cases("matheron");
  cases.resize(4);
  const std::string first = to_csv(run_cases(cases));
  clear_suite_caches();
  CHECK(to_csv(run_cases(cases)) == first);
}
