#pragma once

#include "affiq/extremals.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace affiq {

/// How a row's two sides are compared.
///   le  : lhs <= rhs, passes when rhs / lhs >= 1 / (1 + tol)
///   eq  : |rhs / lhs - 1| <= tol
///   abs : |lhs - rhs| <= tol
///   pos : lhs > 0 and finite
enum class Relation { le, eq, abs, pos };

/// One verification case. `function` names the test object:
///   cone, bump, morrey, log-sobolev, gn, nash   closed-form extremals
///   gauss                                       f_LS profile with p = 2
///   random                                      random_test_function(n, seed)
///   omega                                       random_function_in(poincare_domain(), seed)
///   polygon, ball, star                         bodies for the body-level suites
/// Suites that need a second object (a sheared copy, a rearrangement) derive it
/// from `A` and `shift`.
struct CaseSpec {
  std::string suite;
  std::string tag;
  std::string check;
  std::string label;
  std::string function = "cone";
  std::uint64_t seed = 0;
  int n = 2;
  double p = 2;
  double q = 0;  ///< Gagliardo-Nirenberg q, or a level t for convexification rows
  std::string Q = "segment";
  Eigen::MatrixXd A;
  Eigen::VectorXd shift;
  int cells = 0;   ///< 0 = configured default
  int sphere = 0;  ///< S^{nm-1} resolution in use (recorded only)
  double tol = 0.01;
  Relation relation = Relation::le;
  int index = 0;

  int m() const;
  /// "<tag>/<index>/<label>", unique within a suite; rows are ordered by it.
  std::string case_id() const;
};

struct ReportRow {
  std::string suite;
  std::string tag;
  std::string case_id;
  int n = 0;
  int m = 0;
  double p = 0;
  std::string Q;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  double tol = 0;
  bool pass = false;
  double runtime_ms = 0;
  std::string error;  ///< error token when a module threw
};

struct Report {
  std::vector<ReportRow> rows;

  int passed() const;
  int failed() const;
  bool all_passed() const { return failed() == 0; }
  std::vector<ReportRow> suite_rows(const std::string& suite) const;
};

/// Computes both sides of one case. Module errors become a failed row whose
/// `error` holds the token.
ReportRow verify(const CaseSpec& spec);

/// Suite names in run order ("all" excluded).
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
/// Cases of one suite, or of every suite for "all". Throws "domain" on an
/// unknown name.
std::vector<CaseSpec> suite_cases(const std::string& suite);
/// Runs the cases concurrently and orders rows by (suite, case_id).
Report run_cases(const std::vector<CaseSpec>& cases);
Report run_suite(const std::string& suite);

/// Every statement the suites cover, by content.
const std::vector<std::string>& theorem_tags();

/// The fixed domain of the Poincare suite: a convex hexagon around 0.
const Polytope& poincare_domain();

/// Drops memoised energies and grid functions; a second run then recomputes
/// everything from scratch.
void clear_suite_caches();

/// Both sides' helpers, exposed for tests.
double lambda_series(int n);
/// vol(Pi°_{p,Q} K) vol(K)^{nm/p - m}; S^3 integrals use a 32768-node rule.
double petty_quantity(const ConvexBody& K, const Polytope& Q, double p);
double busemann_petty_quantity(const RadialSample& L, const Polytope& Q, double p);
/// Seeded star body in R^d, d in {2, 4}, as a closed-form radial function.
std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)> random_star(int d, std::uint64_t seed);
/// Seeded polygon with the origin in its interior.
Polytope random_polygon(std::uint64_t seed);

}  // namespace affiq
