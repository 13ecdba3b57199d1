#include "affiq/suites.hpp"

#include "affiq/constants.hpp"
#include "affiq/covariogram.hpp"
#include "affiq/minkowski.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

namespace affiq {

int CaseSpec::m() const { return q_preset(Q).dim; }

std::string CaseSpec::case_id() const {
  char idx[16];
  std::snprintf(idx, sizeof idx, "%04d", index);
  return tag + "/" + idx + "/" + label;
}

int Report::passed() const {
  return int(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; }));
}
int Report::failed() const { return int(rows.size()) - passed(); }

std::vector<ReportRow> Report::suite_rows(const std::string& suite) const {
  std::vector<ReportRow> out;
  for (const ReportRow& r : rows)
    if (r.suite == suite) out.push_back(r);
  return out;
}

const std::vector<std::string>& theorem_tags() {
  static const std::vector<std::string> tags{
      "radial-comparison", "polya-szego",      "affine-invariance",   "affine-sobolev",
      "petty-projection",  "busemann-petty",   "difference-body-ratio", "matheron-formula",
      "minkowski-lemma",   "asymmetric-convexification", "sharp-constants", "morrey-sobolev",
      "faber-krahn",       "moser-trudinger",  "log-sobolev",         "nash",
      "gagliardo-nirenberg", "poincare",       "blaschke-santalo-poincare", "convex-lorentz-sobolev"};
  return tags;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "relate",  "polya-szego", "affine-invariance", "sobolev",         "petty",       "busemann-petty",
      "schneider", "matheron",  "minkowski",         "constants",       "morrey",      "faber-krahn",
      "moser-trudinger", "log-sobolev", "nash",      "gagliardo-nirenberg", "poincare", "lorentz"};
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

const Polytope& poincare_domain() {
  static const Polytope omega = [] {
    const double radii[6] = {1.0, 0.85, 1.1, 0.9, 1.05, 0.8};
    Eigen::MatrixXd v(2, 6);
    for (int k = 0; k < 6; ++k) {
      const double a = std::numbers::pi * (k / 3.0 + 1.0 / 18);
      v.col(k) << radii[k] * std::cos(a), radii[k] * std::sin(a);
    }
    return make_polytope(v);
  }();
  return omega;
}

Polytope random_polygon(std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 1000003) {
    std::mt19937_64 rng(s * 0xD1B54A32D192ED03ULL + 3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int k = 4 + int(rng() % 7);
    Eigen::MatrixXd v(2, k);
    for (int i = 0; i < k; ++i) {
      const double a = 2 * std::numbers::pi * uni(rng), r = 0.5 + uni(rng);
      v.col(i) << r * std::cos(a), r * std::sin(a);
    }
    v.colwise() += Eigen::Vector2d(0.4 * (uni(rng) - 0.5), 0.4 * (uni(rng) - 0.5));
    try {
      Polytope P = make_polytope(v);
      if (P.contains_origin_in_interior(0.1) && P.volume > 0.3) return P;
    } catch (const Error&) {
    }
  }
}

std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)> random_star(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x94D049BB133111EBULL + 11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss;
  const int k = 3 + int(rng() % 3);
  Eigen::MatrixXd u(d, k);
  Eigen::VectorXd c(k), kappa(k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < d; ++i) u(i, j) = gauss(rng);
    u.col(j).normalize();
    c(j) = uni(rng) - 0.5;
    kappa(j) = 1 + 3 * uni(rng);
  }
  const double scale = 0.5 + uni(rng);
  return [u, c, kappa, scale](const Eigen::Ref<const Eigen::VectorXd>& theta) {
    const Eigen::VectorXd t = theta.normalized();
    double s = 0;
    for (Eigen::Index j = 0; j < c.size(); ++j) s += c(j) * std::exp(kappa(j) * (u.col(j).dot(t) - 1));
    return scale * std::exp(s);
  };
}

double petty_quantity(const ConvexBody& K, const Polytope& Q, double p) {
  const int n = K.dim(), m = Q.dim;
  const double nm = double(n) * m;
  // On S^3 the default rule leaves a few percent of noise in int h^{-4} for
  // polygons; the finer rule matches the one used to report m = 2 ratios.
  const SphereGridPtr grid =
      n * m == 4 ? shared_sphere_grid(4, 32768, default_scheme(4)) : default_sphere_grid(n * m);
  const ConvexBody PK = projection_body(K, Q, p, m, grid);
  return polar_projection_volume(PK) * std::pow(volume(K), nm / p - m);
}

double busemann_petty_quantity(const RadialSample& L, const Polytope& Q, double p) {
  const int m = Q.dim, n = L.grid->dim / m;
  const ConvexBody G = centroid_body(L, Q, p, default_sphere_grid(n));
  return volume(G) / std::pow(volume(L), 1.0 / m);
}

double lambda_series(int n) {
  // u(r) = sum_k (-lambda r^2 / 4)^k Gamma(n/2) / (k! Gamma(k + n/2)); returns the first
  // positive root of u'(1).
  auto du = [n](double lambda) {
    double s = 0;
    for (int k = 1; k < 80; ++k) {
      const double logt = k * std::log(lambda / 4) + std::lgamma(n / 2.0) - std::lgamma(k + 1.0) - std::lgamma(k + n / 2.0);
      s += (k % 2 ? -1.0 : 1.0) * 2 * k * std::exp(logt);
    }
    return s;
  };
  double lo = 0.1, flo = du(lo);
  double hi = lo;
  for (;;) {
    hi = lo + 0.1;
    const double fhi = du(hi);
    if ((flo < 0) != (fhi < 0)) break;
    lo = hi;
    flo = fhi;
    if (lo > 200) throw Error("convergence", "no Neumann eigenvalue below 200");
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi), fm = du(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// ---------------------------------------------------------------------------
// Memoisation. Values depend only on their key, so sharing them between cases
// and suites never changes a row.

std::mutex cache_mutex;
std::map<std::string, std::shared_ptr<const GridFunction>> function_cache;
std::map<std::string, double> value_cache;

double cached(const std::string& key, const std::function<double()>& compute) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = value_cache.find(key);
    if (it != value_cache.end()) return it->second;
  }
  const double v = compute();
  std::lock_guard<std::mutex> lock(cache_mutex);
  value_cache.emplace(key, v);
  return v;
}

std::string matrix_key(const Eigen::MatrixXd& A) {
  std::ostringstream s;
  s.precision(17);
  for (Eigen::Index i = 0; i < A.size(); ++i) s << A.data()[i] << ',';
  return s.str();
}

std::string function_key(const CaseSpec& c) {
  std::ostringstream s;
  s.precision(17);
  // Only the Morrey, log-Sobolev and GN profiles depend on p and q.
  const bool pq = c.function == "morrey" || c.function == "log-sobolev" || c.function == "gn";
  s << c.function << '|' << c.seed << '|' << c.n << '|' << (pq ? c.p : 0.0) << '|' << (pq ? c.q : 0.0) << '|'
    << matrix_key(c.A) << '|'
    << matrix_key(c.shift) << '|' << c.cells;
  return s.str();
}

int cells_of(const CaseSpec& c) { return c.cells ? c.cells : global_config().box_cells(c.n); }

GridFunction build_function(const CaseSpec& c) {
  const int cells = cells_of(c);
  if (c.function == "random") return sample_composed(random_test_function(c.n, c.seed), c.A, c.shift, cells);
  if (c.function == "omega") {
    if (c.A.size() || c.shift.size()) throw Error("domain", "omega functions are not transformed");
    return sample_composed(random_function_in(poincare_domain(), c.seed), {}, {}, cells);
  }
  ExtremalParams prm;
  prm.n = c.n;
  prm.p = c.p;
  prm.q = c.q;
  prm.A = c.A;
  prm.shift = c.shift;
  prm.cells = cells;
  if (c.function == "gauss") return make_extremal(ExtremalKind::log_sobolev, [&] {
      ExtremalParams g = prm;
      g.p = 2;
      return g;
    }());
  const ExtremalKind kind = parse_extremal(c.function);
  if (kind == ExtremalKind::gn) prm.cutoff = 1e-3;
  return make_extremal(kind, prm);
}

std::shared_ptr<const GridFunction> function_of(const CaseSpec& c) {
  const std::string key = function_key(c);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = function_cache.find(key);
    if (it != function_cache.end()) return it->second;
  }
  auto f = std::make_shared<const GridFunction>(build_function(c));
  std::lock_guard<std::mutex> lock(cache_mutex);
  return function_cache.emplace(key, f).first->second;
}

std::shared_ptr<const GridFunction> rearranged_of(const CaseSpec& c) {
  const std::string key = function_key(c) + "|star";
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = function_cache.find(key);
    if (it != function_cache.end()) return it->second;
  }
  auto f = std::make_shared<const GridFunction>(schwarz_rearrangement(*function_of(c)));
  std::lock_guard<std::mutex> lock(cache_mutex);
  return function_cache.emplace(key, f).first->second;
}

CaseSpec untransformed(const CaseSpec& c) {
  CaseSpec b = c;
  b.A.resize(0, 0);
  b.shift.resize(0);
  return b;
}

std::string pq_key(const CaseSpec& c, double p) {
  std::ostringstream s;
  s.precision(17);
  s << '|' << c.Q << '|' << p;
  return s.str();
}

double energy_of(const CaseSpec& c, double p) {
  return cached(function_key(c) + "|E" + pq_key(c, p), [&] { return energy(*function_of(c), q_preset(c.Q), p); });
}

double energy_star_of(const CaseSpec& c, double p) {
  return cached(function_key(c) + "|Estar" + pq_key(c, p),
                [&] { return energy(*rearranged_of(c), q_preset(c.Q), p); });
}

double dirichlet_of(const CaseSpec& c, double p) {
  return cached(function_key(c) + "|D|" + std::to_string(p), [&] { return dirichlet_norm(*function_of(c), p); });
}

double lp_of(const CaseSpec& c, double p) {
  return cached(function_key(c) + "|L|" + std::to_string(p), [&] { return lp_norm(*function_of(c), p); });
}

std::mutex poincare_mutex;
std::map<std::string, PoincareRatio> poincare_cache;

const PoincareRatio& poincare_of(const CaseSpec& c) {
  const std::string key = function_key(c) + "|P" + pq_key(c, c.p);
  {
    std::lock_guard<std::mutex> lock(poincare_mutex);
    const auto it = poincare_cache.find(key);
    if (it != poincare_cache.end()) return it->second;
  }
  const PoincareRatio r = poincare_ratio(*function_of(c), q_preset(c.Q), c.p);
  std::lock_guard<std::mutex> lock(poincare_mutex);
  return poincare_cache.emplace(key, r).first->second;
}

// ---------------------------------------------------------------------------
// Checks: each returns (lhs, rhs).

using Sides = std::pair<double, double>;
using Check = Sides (*)(const CaseSpec&);

Sides radial_equality(const CaseSpec& c) { return {energy_of(c, c.p), dirichlet_of(c, c.p)}; }
Sides cone_value(const CaseSpec& c) { return {energy_of(c, c.p), std::sqrt(std::numbers::pi)}; }

Sides rearrangement(const CaseSpec& c) { return {energy_star_of(c, c.p), energy_of(c, c.p)}; }

Sides energy_invariance(const CaseSpec& c) { return {energy_of(untransformed(c), c.p), energy_of(c, c.p)}; }

double sobolev_ratio(const CaseSpec& c) {
  const double ps = c.n * c.p / (c.n - c.p);
  return energy_of(c, c.p) / (sobolev_constant(c.n, c.p) * lp_of(c, ps));
}
Sides sobolev_ratio_invariance(const CaseSpec& c) { return {sobolev_ratio(untransformed(c)), sobolev_ratio(c)}; }

Sides polya_szego_ratio_invariance(const CaseSpec& c) {
  const CaseSpec b = untransformed(c);
  return {energy_of(b, c.p) / energy_star_of(b, c.p), energy_of(c, c.p) / energy_star_of(c, c.p)};
}

ConvexBody body_of(const CaseSpec& c) {
  if (c.function == "polygon") return ConvexBody(random_polygon(c.seed));
  if (c.function == "ball") {
    if (!c.A.size()) return unit_ball(2);
    // phi B = {x : |phi^{-1} x| <= 1}.
    const Eigen::MatrixXd inv = c.A.inverse();
    return ellipsoid_body(inv.transpose() * inv);
  }
  throw Error("domain", "case has no body");
}

Sides petty(const CaseSpec& c) {
  const Polytope Q = q_preset(c.Q);
  const double ball = cached("petty-ball" + pq_key(c, c.p), [&] { return petty_quantity(unit_ball(2), Q, c.p); });
  return {petty_quantity(body_of(c), Q, c.p), ball};
}

Sides petty_invariance(const CaseSpec& c) {
  const Polytope Q = q_preset(c.Q);
  const ConvexBody K = body_of(untransformed(c));
  return {petty_quantity(K, Q, c.p), petty_quantity(linear_image(K, c.A), Q, c.p)};
}

Sides ball_polar_volume(const CaseSpec& c) {
  const Polytope Q = q_preset(c.Q);
  return {polar_projection_volume(projection_body(unit_ball(2), Q, c.p, c.m(), default_sphere_grid(2 * c.m()))),
          std::numbers::pi / 4};
}

RadialSample star_of(const CaseSpec& c, const Eigen::MatrixXd& A) {
  const int d = c.n * c.m();
  const auto grid = default_sphere_grid(d);
  if (c.function == "ball") {
    const Eigen::MatrixXd inv = A.size() ? Eigen::MatrixXd(A.inverse()) : Eigen::MatrixXd::Identity(2, 2);
    const ConvexBody E = ellipsoid_body(inv.transpose() * inv);
    return polar_radial(projection_body(E, q_preset(c.Q), c.p, c.m(), grid));
  }
  const auto rho = random_star(d, c.seed);
  const Eigen::MatrixXd lift_inv =
      A.size() ? Eigen::MatrixXd(lift_map(Eigen::MatrixXd(A.inverse()), c.m())) : Eigen::MatrixXd::Identity(d, d);
  RadialSample L{grid, Eigen::VectorXd(grid->size())};
  for (Eigen::Index i = 0; i < grid->size(); ++i) {
    // rho_{AL}(theta) = rho_L(A^{-1} theta / |A^{-1} theta|) / |A^{-1} theta|.
    const Eigen::VectorXd y = lift_inv * grid->node(i);
    L.rho(i) = rho(y) / y.norm();
  }
  return L;
}

double bp_ball(const CaseSpec& c) {
  return cached("bp-ball" + pq_key(c, c.p), [&] {
    CaseSpec b = c;
    b.function = "ball";
    return busemann_petty_quantity(star_of(b, {}), q_preset(c.Q), c.p);
  });
}

Sides busemann_petty(const CaseSpec& c) {
  return {bp_ball(c), busemann_petty_quantity(star_of(c, c.A), q_preset(c.Q), c.p)};
}

Sides busemann_petty_invariance(const CaseSpec& c) {
  const Polytope Q = q_preset(c.Q);
  return {busemann_petty_quantity(star_of(c, {}), Q, c.p), busemann_petty_quantity(star_of(c, c.A), Q, c.p)};
}

Sides affine_sobolev(const CaseSpec& c) {
  const double ps = c.n * c.p / (c.n - c.p);
  return {sobolev_constant(c.n, c.p) * lp_of(c, ps), energy_of(c, c.p)};
}

Polytope named_polygon(const std::string& name) {
  if (name == "triangle") {
    Eigen::MatrixXd v(2, 3);
    v << 0, 1, 0, 0, 0, 1;
    return make_polytope(v);
  }
  if (name == "square") return cube(2, 0.5).polytope();
  if (name == "disk") return regular_polygon(720).polytope();
  throw Error("domain", "unknown polygon '" + name + "'");
}

double expected_ratio(const std::string& name) { return name == "triangle" ? 6.0 : 4.0; }

Sides schneider(const CaseSpec& c) {
  return {schneider_ratio(named_polygon(c.function), 1), expected_ratio(c.function)};
}

Sides schneider_optimizer(const CaseSpec& c) {
  const RatioSearch r = optimize_ratio(PolygonFamily::polygons, 2, 1, Sense::max, 400, c.seed);
  return {r.ratio, 6.0};
}

Eigen::Vector2d angle_direction(double q) { return Eigen::Vector2d(std::cos(q), std::sin(q)); }

Sides matheron(const CaseSpec& c) {
  const Polytope K = named_polygon(c.function);
  const Eigen::Vector2d theta = angle_direction(c.q);
  // h_{Pi K}(theta) = (1/2) sum |theta . n_i| area_i, independent of the covariogram.
  double h = 0;
  for (Eigen::Index i = 0; i < K.facet_count(); ++i) h += 0.5 * std::abs(theta.dot(K.normals.col(i))) * K.areas(i);
  return {-matheron_derivative(K, theta), h};
}

SphericalMeasure square_measure() {
  Eigen::MatrixXd d(2, 4);
  d << 1, -1, 0, 0, 0, 0, 1, -1;
  return make_measure(d, Eigen::VectorXd::Ones(4));
}

const MinkowskiSolution& square_solution() {
  static const MinkowskiSolution s = solve_lp_minkowski(square_measure(), 1.0);
  return s;
}

Sides minkowski_square_width(const CaseSpec& c) {
  const Eigen::Vector2d u = angle_direction(c.q);
  return {width(square_solution().body, u), 1.0};
}

Sides minkowski_square_residual(const CaseSpec&) { return {square_solution().residual, 0.0}; }

SphericalMeasure random_measure(std::uint64_t seed, bool centred) {
  std::mt19937_64 rng(seed * 0xBF58476D1CE4E5B9ULL + 7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (;;) {
    const int k = 6 + int(rng() % 8);
    Eigen::MatrixXd d(2, centred ? 2 * k : k);
    Eigen::VectorXd w(d.cols());
    for (int i = 0; i < k; ++i) {
      const double a = 2 * std::numbers::pi * uni(rng);
      d.col(i) = angle_direction(a);
      w(i) = 0.2 + uni(rng);
      if (centred) {
        d.col(k + i) = -d.col(i);
        w(k + i) = w(i);
      }
    }
    const SphericalMeasure nu = make_measure(d, w);
    if (hemisphere_margin(nu) > 0.05 * nu.total()) return nu;
  }
}

Sides minkowski_lemma(const CaseSpec& c) {
  const LemmaCheck r = verify_lemma_body(random_measure(c.seed, c.p == 1.0), c.p, q_preset(c.Q));
  return {r.lhs, r.rhs};
}

Sides minkowski_ball(const CaseSpec& c) {
  const LemmaCheck r = verify_lemma_body(uniform_measure(*default_sphere_grid(2)), c.p, q_preset(c.Q));
  return {r.lhs, r.rhs};
}

Sides convexification(const CaseSpec& c) {
  const GridFunction& f = *function_of(c);
  const ConvexificationBound b = convexification_bound(f, c.q * f.values.cwiseAbs().maxCoeff(), c.p);
  return {b.rhs, b.lhs};
}

Sides constant_c22(const CaseSpec&) {
  return {logsobolev_constant(2, 2), std::sqrt(1 / (std::numbers::e * std::numbers::pi))};
}
Sides constant_gn_boundary(const CaseSpec& c) {
  return {gn_parameters(c.n, c.p, c.q).alpha, sobolev_constant(c.n, c.p)};
}
Sides constant_nash_lambda(const CaseSpec& c) { return {nash_profile(c.n).lambda, lambda_series(c.n)}; }
Sides constant_dnp(const CaseSpec& c) {
  const Polytope Q = q_preset(c.Q);
  return {dnp_constant(c.n, c.m(), c.p, Q), dnp_constant_haar(c.n, c.m(), c.p, Q, 20000, global_config().seed())};
}

double support_volume_of(const CaseSpec& c) {
  return cached(function_key(c) + "|supp", [&] { return support_volume(*function_of(c)); });
}
double sup_of(const CaseSpec& c) { return lp_of(c, INFINITY); }

Sides morrey(const CaseSpec& c) {
  const double rhs = morrey_constant(c.n, c.p) * std::pow(support_volume_of(c), (1 / c.p) * (c.p / c.n - 1)) *
                     energy_of(c, c.p);
  return {sup_of(c), rhs};
}

Sides faber_krahn(const CaseSpec& c) {
  const double e = cached(function_key(c) + "|Einf|" + c.Q,
                          [&] { return energy_infty(*function_of(c), q_preset(c.Q)); });
  return {sup_of(c), std::pow(ball_volume(c.n), -1.0 / c.n) * std::pow(support_volume_of(c), 1.0 / c.n) * e};
}

// (1 / |supp g|) int_{supp g} exp((n omega_n^{1/n} |g| / e)^{n/(n-1)}).
double mt_functional(const GridFunction& g, double e) {
  const int n = g.dim();
  const double k = n * std::pow(ball_volume(n), 1.0 / n) / e, power = n / (n - 1.0);
  Eigen::VectorXd terms = Eigen::VectorXd::Zero(g.size());
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (g.values(i) != 0) {
      terms(i) = std::exp(std::pow(k * std::abs(g.values(i)), power));
      ++count;
    }
  return pairwise_sum(terms) / double(count);
}

Sides moser_trudinger(const CaseSpec& c) {
  const double lhs = mt_functional(*function_of(c), energy_of(c, c.n));
  const double star = cached(function_key(c) + "|Dstar|" + std::to_string(c.n),
                             [&] { return dirichlet_norm(*rearranged_of(c), c.n); });
  return {lhs, mt_functional(*rearranged_of(c), star)};
}

Sides log_sobolev(const CaseSpec& c) {
  const GridFunction& f = *function_of(c);
  const double s = lp_of(c, c.p), p = c.p;
  Eigen::VectorXd terms = Eigen::VectorXd::Zero(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = std::abs(f.values(i)) / s;
    if (v > 0) terms(i) = std::pow(v, p) * std::log(v);
  }
  const double entropy = pairwise_sum(terms) * f.grid.cell_volume();
  return {std::exp(p / c.n * entropy), logsobolev_constant(c.n, p) * energy_of(c, p) / s};
}

Sides nash(const CaseSpec& c) {
  const double f2 = lp_of(c, 2), f1 = lp_of(c, 1);
  return {f2 * std::pow(f2 / f1, 2.0 / c.n), nash_constant(c.n) * energy_of(c, 2)};
}

Sides gagliardo_nirenberg(const CaseSpec& c) {
  const GNParameters g = gn_parameters(c.n, c.p, c.q);
  return {g.alpha * lp_of(c, g.r), std::pow(energy_of(c, c.p), g.theta) * std::pow(lp_of(c, c.q), 1 - g.theta)};
}

Sides poincare_bs(const CaseSpec& c) { return {poincare_of(c).ratio, 0.0}; }
Sides poincare_positivity(const CaseSpec& c) { return {poincare_of(c).min_support, 0.0}; }
Sides poincare_constant(const CaseSpec& c) { return {poincare_of(c).constant, 0.0}; }

constexpr int poincare_family = 50;
constexpr int poincare_rerun = 5;

// Empirical minimum over the family at the base grid and at doubled resolution.
// The rerun covers the functions with the smallest base values.
Sides poincare_resolution(const CaseSpec& c) {
  const bool use_ratio = c.label.find("ratio") != std::string::npos;
  auto value = [&](const PoincareRatio& r) { return use_ratio ? r.ratio : r.constant; };
  std::vector<std::pair<double, std::uint64_t>> base;
  for (int s = 0; s < poincare_family; ++s) {
    CaseSpec f = c;
    f.function = "omega";
    f.seed = std::uint64_t(s);
    f.cells = cells_of(c);
    base.emplace_back(value(poincare_of(f)), f.seed);
  }
  std::sort(base.begin(), base.end());
  double fine = INFINITY;
  for (int j = 0; j < poincare_rerun; ++j) {
    CaseSpec f = c;
    f.function = "omega";
    f.seed = base[std::size_t(j)].second;
    f.cells = 2 * cells_of(c) - 1;
    fine = std::min(fine, value(poincare_ratio(*function_of(f), q_preset(c.Q), c.p)));
  }
  return {base.front().first, fine};
}

Sides lorentz(const CaseSpec& c) {
  const GridFunction& f = *function_of(c);
  const double top = 0.9 * f.values.cwiseAbs().maxCoeff();
  const int levels = 12;
  const double dt = top / levels;
  double integral = 0;
  for (int k = 0; k < levels; ++k) {
    const MinkowskiSolution K = asymmetric_convexification(f, (k + 0.5) * dt, c.p);
    integral += std::pow(volume(K.body), -c.p / c.n) * dt;
  }
  return {c.n * std::pow(ball_volume(c.n), c.p / c.n) * integral, std::pow(energy_of(c, c.p), c.p)};
}

const std::map<std::string, Check>& checks() {
  static const std::map<std::string, Check> table{
      {"radial-equality", radial_equality},
      {"cone-value", cone_value},
      {"comparison", radial_equality},
      {"rearrangement", rearrangement},
      {"energy-invariance", energy_invariance},
      {"sobolev-ratio", sobolev_ratio_invariance},
      {"polya-szego-ratio", polya_szego_ratio_invariance},
      {"petty-ratio", petty_invariance},
      {"busemann-petty-ratio", busemann_petty_invariance},
      {"affine-sobolev", affine_sobolev},
      {"petty", petty},
      {"ball-polar-volume", ball_polar_volume},
      {"busemann-petty", busemann_petty},
      {"schneider", schneider},
      {"schneider-optimizer", schneider_optimizer},
      {"matheron", matheron},
      {"square-width", minkowski_square_width},
      {"square-residual", minkowski_square_residual},
      {"lemma", minkowski_lemma},
      {"ball-measure", minkowski_ball},
      {"convexification", convexification},
      {"c22", constant_c22},
      {"gn-boundary", constant_gn_boundary},
      {"nash-eigenvalue", constant_nash_lambda},
      {"dnp-dual", constant_dnp},
      {"morrey", morrey},
      {"faber-krahn", faber_krahn},
      {"moser-trudinger", moser_trudinger},
      {"log-sobolev", log_sobolev},
      {"nash", nash},
      {"gagliardo-nirenberg", gagliardo_nirenberg},
      {"poincare-ratio", poincare_bs},
      {"lyz-positivity", poincare_positivity},
      {"poincare-constant", poincare_constant},
      {"poincare-resolution", poincare_resolution},
      {"lorentz", lorentz},
  };
  return table;
}

bool judge(Relation rel, double lhs, double rhs, double tol) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  switch (rel) {
    case Relation::le: return lhs <= 0 ? rhs >= lhs : rhs / lhs >= 1 / (1 + tol);
    case Relation::eq: return lhs != 0 && std::abs(rhs / lhs - 1) <= tol;
    case Relation::abs: return std::abs(lhs - rhs) <= tol;
    case Relation::pos: return lhs > 0;
  }
  return false;
}

}  // namespace

ReportRow verify(const CaseSpec& c) {
  ReportRow row;
  row.suite = c.suite;
  row.tag = c.tag;
  row.case_id = c.case_id();
  row.n = c.n;
  row.p = c.p;
  row.Q = c.Q;
  row.tol = c.tol;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    row.m = c.m();
    const auto it = checks().find(c.check);
    if (it == checks().end()) throw Error("domain", "unknown check '" + c.check + "'");
    const auto [lhs, rhs] = it->second(c);
    row.lhs = lhs;
    row.rhs = rhs;
    row.ratio = c.relation == Relation::pos ? lhs : (lhs != 0 ? rhs / lhs : (rhs == 0 ? 1.0 : INFINITY));
    row.pass = judge(c.relation, lhs, rhs, c.tol);
  } catch (const Error& e) {
    row.lhs = row.rhs = row.ratio = NAN;
    row.pass = false;
    row.error = e.token();
  } catch (const std::exception&) {
    row.lhs = row.rhs = row.ratio = NAN;
    row.pass = false;
    row.error = "internal";
  }
  if (global_config().get_int("report.timing"))
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

// ---------------------------------------------------------------------------
// Suite definitions.

namespace {

struct Builder {
  std::string suite;
  std::vector<CaseSpec> cases;

  CaseSpec& add(const std::string& tag, const std::string& check, const std::string& label, Relation rel,
                double tol) {
    CaseSpec c;
    c.suite = suite;
    c.tag = tag;
    c.check = check;
    c.label = label;
    c.relation = rel;
    c.tol = tol;
    c.index = int(cases.size());
    cases.push_back(c);
    return cases.back();
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

const std::vector<double> all_p{1.0, 1.5, 2.0, 3.0};
constexpr int family_size = 20;

Eigen::MatrixXd sl_sample(int i, double cond = 5.0) { return random_sl(2, cond, 1000 + std::uint64_t(i)); }

void finish(CaseSpec& c) {
  c.cells = cells_of(c);
  c.sphere = global_config().sphere_resolution(c.n * c.m());
}

std::vector<CaseSpec> build(const std::string& suite) {
  Builder b{suite, {}};
  const auto& Qs = q_preset_names();
  if (suite == "relate") {
    for (const std::string fn : {"cone", "gauss"})
      for (const auto& Q : Qs)
        for (double p : all_p) {
          CaseSpec& c = b.add("radial-comparison", "radial-equality", fn + ":" + Q + ":p" + fmt(p), Relation::eq, 0.01);
          c.function = fn;
          c.Q = Q;
          c.p = p;
        }
    for (const auto& Q : Qs) {
      CaseSpec& c = b.add("radial-comparison", "cone-value", "cone:" + Q + ":p2", Relation::eq, 0.01);
      c.Q = Q;
      c.p = 2;
    }
    for (int s = 0; s < family_size; ++s)
      for (const auto& Q : Qs)
        for (double p : all_p) {
          CaseSpec& c = b.add("radial-comparison", "comparison",
                              "random" + std::to_string(s) + ":" + Q + ":p" + fmt(p), Relation::le, 0.01);
          c.function = "random";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
        }
  } else if (suite == "polya-szego") {
    for (int s = 0; s < family_size; ++s)
      for (const auto& Q : Qs)
        for (double p : all_p) {
          CaseSpec& c = b.add("polya-szego", "rearrangement", "random" + std::to_string(s) + ":" + Q + ":p" + fmt(p),
                              Relation::le, 0.01);
          c.function = "random";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
        }
    for (int i = 0; i < 4; ++i)
      for (const std::string fn : {"cone", "bump"})
        for (const auto& Q : Qs)
          for (double p : {1.5, 2.0}) {
            CaseSpec& c = b.add("polya-szego", "rearrangement",
                                fn + "-sl" + std::to_string(i) + ":" + Q + ":p" + fmt(p), Relation::eq, 0.02);
            c.function = fn;
            c.A = sl_sample(i);
            c.Q = Q;
            c.p = p;
          }
  } else if (suite == "affine-invariance") {
    for (int i = 0; i < 10; ++i) {
      for (const std::string fn : {"bump", "random"})
        for (const auto& Q : Qs)
          for (double p : {1.0, 2.0}) {
            CaseSpec& c = b.add("affine-invariance", "energy-invariance",
                                fn + "-sl" + std::to_string(i) + ":" + Q + ":p" + fmt(p), Relation::eq, 0.01);
            c.function = fn;
            c.seed = 3;
            c.A = sl_sample(i);
            c.Q = Q;
            c.p = p;
          }
      {
        CaseSpec& c = b.add("affine-invariance", "sobolev-ratio", "random-sl" + std::to_string(i) + ":segment:p1.5",
                            Relation::eq, 0.02);
        c.function = "random";
        c.seed = 3;
        c.A = sl_sample(i);
        c.p = 1.5;
      }
      {
        CaseSpec& c = b.add("affine-invariance", "polya-szego-ratio",
                            "random-sl" + std::to_string(i) + ":segment:p2", Relation::eq, 0.02);
        c.function = "random";
        c.seed = 3;
        c.A = sl_sample(i);
        c.p = 2;
      }
      for (const std::string Q : {"segment", "square"}) {
        CaseSpec& c = b.add("affine-invariance", "petty-ratio", "polygon-sl" + std::to_string(i) + ":" + Q + ":p2",
                            Relation::eq, 0.02);
        c.function = "polygon";
        c.seed = std::uint64_t(i);
        c.A = sl_sample(i);
        c.Q = Q;
        c.p = 2;
      }
      for (const std::string Q : {"segment", "square"}) {
        CaseSpec& c = b.add("affine-invariance", "busemann-petty-ratio",
                            "star-sl" + std::to_string(i) + ":" + Q + ":p1", Relation::eq, 0.02);
        c.function = "star";
        c.seed = std::uint64_t(i);
        c.A = sl_sample(i);
        c.Q = Q;
        c.p = 1;
      }
    }
  } else if (suite == "sobolev") {
    std::vector<std::pair<std::string, std::uint64_t>> fns{{"cone", 0}, {"bump", 0}};
    for (int s = 0; s < 8; ++s) fns.emplace_back("random", std::uint64_t(s));
    for (const auto& [fn, seed] : fns)
      for (const auto& Q : Qs)
        for (double p : {1.0, 1.5}) {
          const std::string name = fn == "random" ? "random" + std::to_string(seed) : fn;
          CaseSpec& c = b.add("affine-sobolev", "affine-sobolev", name + ":" + Q + ":p" + fmt(p), Relation::le, 0.01);
          c.function = fn;
          c.seed = seed;
          c.Q = Q;
          c.p = p;
        }
    for (const std::string fn : {"cone", "bump"})
      for (const std::string Q : {"segment", "segment+"})
        for (double p : {1.0, 2.0}) {
          CaseSpec& c = b.add("affine-sobolev", "affine-sobolev", fn + "3d:" + Q + ":p" + fmt(p), Relation::le, 0.01);
          c.function = fn;
          c.n = 3;
          c.Q = Q;
          c.p = p;
        }
  } else if (suite == "petty") {
    for (const auto& Q : Qs)
      for (double p : {1.0, 2.0}) {
        for (int s = 0; s < 30; ++s) {
          CaseSpec& c = b.add("petty-projection", "petty", "polygon" + std::to_string(s) + ":" + Q + ":p" + fmt(p),
                              Relation::le, 0.01);
          c.function = "polygon";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
        }
        for (int i = -1; i < 3; ++i) {
          CaseSpec& c = b.add("petty-projection", "petty",
                              (i < 0 ? std::string("ball") : "ball-sl" + std::to_string(i)) + ":" + Q + ":p" + fmt(p),
                              Relation::eq, 0.02);
          c.function = "ball";
          if (i >= 0) c.A = sl_sample(i);
          c.Q = Q;
          c.p = p;
        }
      }
    CaseSpec& c = b.add("petty-projection", "ball-polar-volume", "ball:segment:p1", Relation::eq, 0.01);
    c.function = "ball";
    c.p = 1;
  } else if (suite == "busemann-petty") {
    for (const std::string Q : {"segment", "segment+", "square"})
      for (double p : {1.0, 2.0}) {
        for (int s = 0; s < 20; ++s) {
          CaseSpec& c = b.add("busemann-petty", "busemann-petty", "star" + std::to_string(s) + ":" + Q + ":p" + fmt(p),
                              Relation::le, 0.01);
          c.function = "star";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
        }
        for (int i = -1; i < 3; ++i) {
          CaseSpec& c = b.add("busemann-petty", "busemann-petty",
                              (i < 0 ? std::string("ball") : "ball-sl" + std::to_string(i)) + ":" + Q + ":p" + fmt(p),
                              Relation::eq, 0.02);
          c.function = "ball";
          if (i >= 0) c.A = sl_sample(i);
          c.Q = Q;
          c.p = p;
        }
      }
  } else if (suite == "schneider") {
    for (const std::string fn : {"triangle", "square", "disk"}) {
      CaseSpec& c = b.add("difference-body-ratio", "schneider", fn, Relation::eq, 0.02);
      c.function = fn;
      c.p = 1;
    }
    for (std::uint64_t seed : {42u, 7u}) {
      CaseSpec& c = b.add("difference-body-ratio", "schneider-optimizer", "max-polygons-seed" + std::to_string(seed),
                          Relation::eq, 0.02);
      c.function = "optimizer";
      c.seed = seed;
      c.p = 1;
    }
  } else if (suite == "matheron") {
    for (const std::string fn : {"square", "disk"})
      for (int k = 0; k < 8; ++k) {
        CaseSpec& c = b.add("matheron-formula", "matheron", fn + ":dir" + std::to_string(k), Relation::eq, 0.02);
        c.function = fn;
        c.q = k * std::numbers::pi / 8;
        c.p = 1;
      }
  } else if (suite == "minkowski") {
    for (int k = 0; k < 2; ++k) {
      CaseSpec& c = b.add("minkowski-lemma", "square-width", std::string("square:width-e") + char('1' + k),
                          Relation::abs, 1e-6);
      c.function = "square";
      c.q = k * std::numbers::pi / 2;
      c.p = 1;
    }
    {
      CaseSpec& c = b.add("minkowski-lemma", "square-residual", "square:residual", Relation::abs, 1e-6);
      c.function = "square";
      c.p = 1;
    }
    for (const auto& Q : Qs)
      for (double p : {1.0, 1.5, 2.0, 3.0})
        for (int s = 0; s < 3; ++s) {
          CaseSpec& c = b.add("minkowski-lemma", "lemma", "measure" + std::to_string(s) + ":" + Q + ":p" + fmt(p),
                              Relation::le, 0.01);
          c.function = "measure";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
        }
    for (const auto& Q : Qs)
      for (double p : {1.0, 2.0}) {
        CaseSpec& c = b.add("minkowski-lemma", "ball-measure", "uniform:" + Q + ":p" + fmt(p), Relation::eq, 0.02);
        c.function = "uniform";
        c.Q = Q;
        c.p = p;
      }
    for (double p : {1.5, 2.0})
      for (double t : {0.25, 0.5, 0.75}) {
        for (const std::string fn : {"cone", "random"}) {
          CaseSpec& c = b.add("asymmetric-convexification", "convexification",
                              fn + ":t" + fmt(t) + ":p" + fmt(p), Relation::le, 0.02);
          c.function = fn;
          c.seed = 1;
          if (fn == "cone") c.A = sl_sample(0, 3.0);
          c.q = t;
          c.p = p;
        }
      }
  } else if (suite == "constants") {
    {
      CaseSpec& c = b.add("sharp-constants", "c22", "c22", Relation::abs, 1e-9);
      c.function = "none";
      c.p = 2;
    }
    for (const auto& [n, p, q] : std::vector<std::tuple<int, double, double>>{{2, 1.5, 3.0}, {2, 1.2, 1.5}, {3, 2.0, 4.0}, {3, 1.5, 2.0}}) {
      CaseSpec& c = b.add("sharp-constants", "gn-boundary", "n" + std::to_string(n) + ":p" + fmt(p), Relation::abs, 1e-6);
      c.function = "none";
      c.n = n;
      c.p = p;
      c.q = q;
    }
    for (int n : {2, 3}) {
      CaseSpec& c = b.add("sharp-constants", "nash-eigenvalue", "n" + std::to_string(n), Relation::abs, 0.01);
      c.function = "none";
      c.n = n;
      c.p = 2;
    }
    for (const auto& Q : Qs)
      for (double p : {1.0, 2.0, 3.0}) {
        CaseSpec& c = b.add("sharp-constants", "dnp-dual", Q + ":p" + fmt(p), Relation::eq, 0.01);
        c.function = "none";
        c.Q = Q;
        c.p = p;
      }
  } else if (suite == "morrey") {
    std::vector<std::pair<std::string, std::uint64_t>> fns{{"cone", 0}, {"bump", 0}};
    for (int s = 0; s < 10; ++s) fns.emplace_back("random", std::uint64_t(s));
    for (const auto& [fn, seed] : fns)
      for (const std::string Q : {"segment", "square"})
        for (double p : {3.0, 4.0}) {
          const std::string name = fn == "random" ? "random" + std::to_string(seed) : fn;
          CaseSpec& c = b.add("morrey-sobolev", "morrey", name + ":" + Q + ":p" + fmt(p), Relation::le, 0.01);
          c.function = fn;
          c.seed = seed;
          c.Q = Q;
          c.p = p;
        }
    for (int i = 0; i < 2; ++i)
      for (const std::string Q : {"segment", "square"})
        for (double p : {3.0, 4.0, 6.0}) {
          CaseSpec& c = b.add("morrey-sobolev", "morrey", "morrey-sl" + std::to_string(i) + ":" + Q + ":p" + fmt(p),
                              Relation::eq, 0.02);
          c.function = "morrey";
          c.A = sl_sample(i, 3.0);
          c.Q = Q;
          c.p = p;
          // The p = 3 extremal has a |x|^{-1/2} gradient at its apex; the discrete
          // energy converges like h^{1/2}, so that row uses a finer grid.
          if (p == 3.0) c.cells = 1025;
        }
  } else if (suite == "faber-krahn") {
    std::vector<std::pair<std::string, std::uint64_t>> fns{{"bump", 0}};
    for (int s = 0; s < 10; ++s) fns.emplace_back("random", std::uint64_t(s));
    for (const auto& [fn, seed] : fns)
      for (const auto& Q : Qs) {
        const std::string name = fn == "random" ? "random" + std::to_string(seed) : fn;
        CaseSpec& c = b.add("faber-krahn", "faber-krahn", name + ":" + Q, Relation::le, 0.01);
        c.function = fn;
        c.seed = seed;
        c.Q = Q;
        c.p = INFINITY;
      }
    for (int i = -1; i < 3; ++i)
      for (const auto& Q : Qs) {
        CaseSpec& c = b.add("faber-krahn", "faber-krahn",
                            (i < 0 ? std::string("cone") : "cone-sl" + std::to_string(i)) + ":" + Q, Relation::eq, 0.02);
        c.function = "cone";
        if (i >= 0) c.A = sl_sample(i, 3.0);
        c.Q = Q;
        c.p = INFINITY;
      }
  } else if (suite == "moser-trudinger") {
    for (int s = 0; s < family_size; ++s)
      for (const auto& Q : Qs) {
        CaseSpec& c = b.add("moser-trudinger", "moser-trudinger", "random" + std::to_string(s) + ":" + Q,
                            Relation::le, 0.01);
        c.function = "random";
        c.seed = std::uint64_t(s);
        c.Q = Q;
        c.p = 2;
      }
  } else if (suite == "log-sobolev") {
    for (int s = 0; s < 10; ++s)
      for (const auto& Q : Qs)
        for (double p : {1.5, 2.0}) {
          CaseSpec& c = b.add("log-sobolev", "log-sobolev", "random" + std::to_string(s) + ":" + Q + ":p" + fmt(p),
                              Relation::le, 0.01);
          c.function = "random";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
        }
    for (int i = -1; i < 2; ++i)
      for (const auto& Q : Qs)
        for (double p : {1.5, 2.0}) {
          CaseSpec& c = b.add("log-sobolev", "log-sobolev",
                              (i < 0 ? std::string("f_ls") : "f_ls-sl" + std::to_string(i)) + ":" + Q + ":p" + fmt(p),
                              Relation::eq, 0.03);
          c.function = "log-sobolev";
          if (i >= 0) c.A = sl_sample(i, 3.0);
          c.Q = Q;
          c.p = p;
        }
  } else if (suite == "nash") {
    for (int s = 0; s < 10; ++s)
      for (const auto& Q : Qs) {
        CaseSpec& c = b.add("nash", "nash", "random" + std::to_string(s) + ":" + Q, Relation::le, 0.01);
        c.function = "random";
        c.seed = std::uint64_t(s);
        c.Q = Q;
        c.p = 2;
      }
    for (int i = -1; i < 2; ++i)
      for (const auto& Q : Qs) {
        CaseSpec& c = b.add("nash", "nash", (i < 0 ? std::string("f_n") : "f_n-sl" + std::to_string(i)) + ":" + Q,
                            Relation::eq, 0.03);
        c.function = "nash";
        if (i >= 0) c.A = sl_sample(i, 3.0);
        c.Q = Q;
        c.p = 2;
      }
  } else if (suite == "gagliardo-nirenberg") {
    const std::vector<std::pair<double, double>> pq{{1.5, 1.75}, {1.5, 2.0}, {1.2, 1.4}, {1.2, 1.5}};
    for (const auto& [p, q] : pq) {
      for (int s = 0; s < 10; ++s)
        for (const std::string Q : {"segment", "square"}) {
          CaseSpec& c = b.add("gagliardo-nirenberg", "gagliardo-nirenberg",
                              "random" + std::to_string(s) + ":" + Q + ":p" + fmt(p) + ":q" + fmt(q), Relation::le, 0.01);
          c.function = "random";
          c.seed = std::uint64_t(s);
          c.Q = Q;
          c.p = p;
          c.q = q;
        }
      for (int i = -1; i < 2; ++i)
        for (const std::string Q : {"segment", "square"}) {
          CaseSpec& c = b.add("gagliardo-nirenberg", "gagliardo-nirenberg",
                              (i < 0 ? std::string("f_gn") : "f_gn-sl" + std::to_string(i)) + ":" + Q + ":p" + fmt(p) +
                                  ":q" + fmt(q),
                              Relation::eq, 0.03);
          c.function = "gn";
          if (i >= 0) c.A = sl_sample(i, 3.0);
          c.Q = Q;
          c.p = p;
          c.q = q;
        }
    }
  } else if (suite == "poincare") {
    for (const std::string Q : {"segment", "square"})
      for (double p : {1.0, 2.0}) {
        for (int s = 0; s < poincare_family; ++s) {
          const std::string name = "omega" + std::to_string(s) + ":" + Q + ":p" + fmt(p);
          for (const auto& [check, tag] :
               std::vector<std::pair<std::string, std::string>>{{"poincare-ratio", "blaschke-santalo-poincare"},
                                                                {"lyz-positivity", "blaschke-santalo-poincare"},
                                                                {"poincare-constant", "poincare"}}) {
            CaseSpec& c = b.add(tag, check, name + ":" + check, Relation::pos, 0.01);
            c.function = "omega";
            c.seed = std::uint64_t(s);
            c.Q = Q;
            c.p = p;
          }
        }
        for (const auto& [label, tag] : std::vector<std::pair<std::string, std::string>>{
                 {"min-ratio", "blaschke-santalo-poincare"}, {"min-constant", "poincare"}}) {
          CaseSpec& c = b.add(tag, "poincare-resolution", label + ":" + Q + ":p" + fmt(p), Relation::eq, 0.02);
          c.function = "omega";
          c.Q = Q;
          c.p = p;
        }
      }
  } else if (suite == "lorentz") {
    for (double p : {1.5, 2.0})
      for (const std::string fn : {"cone", "bump", "random"}) {
        CaseSpec& c = b.add("convex-lorentz-sobolev", "lorentz", fn + ":segment:p" + fmt(p), Relation::le, 0.02);
        c.function = fn;
        c.seed = 1;
        if (fn == "cone") c.A = sl_sample(0, 3.0);
        c.p = p;
      }
  } else {
    throw Error("domain", "unknown suite '" + suite + "'");
  }
  for (CaseSpec& c : b.cases) finish(c);
  return b.cases;
}

}  // namespace

std::vector<CaseSpec> suite_cases(const std::string& suite) {
  if (suite == "all") {
    std::vector<CaseSpec> out;
    for (const auto& s : suite_names()) {
      auto part = build(s);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  return build(suite);
}

Report run_cases(const std::vector<CaseSpec>& cases) {
  Report report;
  report.rows.resize(cases.size());
  parallel_for(Eigen::Index(cases.size()), [&](Eigen::Index i) { report.rows[std::size_t(i)] = verify(cases[std::size_t(i)]); });
  auto suite_rank = [](const std::string& s) {
    const auto it = std::find(suite_names().begin(), suite_names().end(), s);
    return it - suite_names().begin();
  };
  std::stable_sort(report.rows.begin(), report.rows.end(), [&](const ReportRow& a, const ReportRow& b) {
    const auto ra = suite_rank(a.suite), rb = suite_rank(b.suite);
    return ra != rb ? ra < rb : a.case_id < b.case_id;
  });
  return report;
}

Report run_suite(const std::string& suite) { return run_cases(suite_cases(suite)); }

void clear_suite_caches() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  function_cache.clear();
  value_cache.clear();
  std::lock_guard<std::mutex> plock(poincare_mutex);
  poincare_cache.clear();
}

}  // namespace affiq
