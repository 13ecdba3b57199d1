#include "affiq/extremals.hpp"

#include "affiq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

namespace affiq {

GridFunction sample_composed(const TestFunction& t, const Eigen::MatrixXd& A_in, const Eigen::VectorXd& x0_in,
                             int cells, double halfwidth) {
  const int n = t.dim;
  const Eigen::MatrixXd A = A_in.size() ? A_in : Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd x0 = x0_in.size() ? x0_in : Eigen::VectorXd::Zero(n);
  if (A.rows() != n || A.cols() != n || x0.size() != n) throw Error("domain", "transform has the wrong size");
  if (!(std::abs(A.determinant()) > 1e-12)) throw Error("domain", "transform is singular");
  if (cells == 0) cells = global_config().box_cells(n);
  double R = halfwidth;
  if (!(R > 0)) {
    const Eigen::MatrixXd Ainv = A.inverse();
    const double extent = (x0.cwiseAbs() + t.radius * Ainv.rowwise().norm()).maxCoeff();
    R = extent / (1 - 8.0 / cells);
  }
  const BoxGrid grid(n, R, cells);
  const PointFunction& f = t.f;
  GridFunction g = sample(grid, [&](const Eigen::Ref<const Eigen::VectorXd>& x) {
    const Eigen::VectorXd y = A * (x - x0);
    return f(y);
  });
  require_compact_support(g);
  return g;
}

const char* extremal_name(ExtremalKind kind) {
  switch (kind) {
    case ExtremalKind::cone: return "cone";
    case ExtremalKind::bump: return "bump";
    case ExtremalKind::morrey: return "morrey";
    case ExtremalKind::log_sobolev: return "log-sobolev";
    case ExtremalKind::gn: return "gn";
    case ExtremalKind::nash: return "nash";
  }
  return "?";
}

ExtremalKind parse_extremal(const std::string& name) {
  for (ExtremalKind k : {ExtremalKind::cone, ExtremalKind::bump, ExtremalKind::morrey, ExtremalKind::log_sobolev,
                         ExtremalKind::gn, ExtremalKind::nash})
    if (name == extremal_name(k)) return k;
  throw Error("domain", "unknown extremal '" + name + "'");
}

namespace {

// (g(r) - g(rho))_+ with g(rho) = cutoff * g(0), rho found by bisection on the
// decreasing profile g.
TestFunction truncated(std::string id, int n, std::function<double(double)> g, double cutoff) {
  if (!(cutoff > 0 && cutoff < 1)) throw Error("domain", "cutoff must lie in (0, 1)");
  const double g0 = g(0), level = cutoff * g0;
  double hi = 1;
  while (g(hi) > level) hi *= 2;
  double lo = 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > level ? lo : hi) = mid;
  }
  TestFunction t;
  t.id = std::move(id);
  t.dim = n;
  t.radius = hi;
  t.f = [g, level](const Eigen::Ref<const Eigen::VectorXd>& x) { return std::max(0.0, g(x.norm()) - level); };
  return t;
}

TestFunction radial(std::string id, int n, double radius, std::function<double(double)> g) {
  TestFunction t;
  t.id = std::move(id);
  t.dim = n;
  t.radius = radius;
  t.f = [g, radius](const Eigen::Ref<const Eigen::VectorXd>& x) {
    const double r = x.norm();
    return r >= radius ? 0.0 : g(r);
  };
  return t;
}

}  // namespace

TestFunction extremal_function(ExtremalKind kind, const ExtremalParams& prm) {
  const int n = prm.n;
  const double a = prm.a, p = prm.p;
  if (n < 2 || n > 3) throw Error("domain", "extremals are built for n in {2, 3}");
  switch (kind) {
    case ExtremalKind::cone:
      return radial("cone", n, 1.0, [a](double r) { return a * (1 - r); });
    case ExtremalKind::bump:
      return radial("bump", n, 1.0, [a](double r) {
        const double s = 1 - r * r;
        return a * s * s * s;
      });
    case ExtremalKind::morrey: {
      if (!(p > n)) throw Error("domain", "f_MS needs p > n");
      const double e = (p - n) / (p - 1);
      return radial("morrey", n, 1.0, [a, e](double r) { return a * (1 - std::pow(r, e)); });
    }
    case ExtremalKind::log_sobolev: {
      if (!(p > 1)) throw Error("domain", "f_LS needs p > 1");
      if (!(a > 0)) throw Error("domain", "f_LS needs a > 0");
      const double pc = p / (p - 1);
      const double c = std::pow(std::numbers::pi, n / 2.0) * std::tgamma(1 + n / 2.0) /
                       (std::pow(a, n * (p - 1) / p) * std::tgamma(1 + n * (p - 1) / p));
      return truncated("log-sobolev", n, [a, c, pc](double r) { return c * std::exp(-std::pow(r, pc) / a); },
                       prm.cutoff);
    }
    case ExtremalKind::gn: {
      const GNParameters gp = gn_parameters(n, p, prm.q);
      if (!(prm.b > 0)) throw Error("domain", "f_GN needs b > 0");
      const double pc = p / (p - 1), e = -(p - 1) / (gp.q - p), b = prm.b;
      return truncated("gn", n, [a, b, pc, e](double r) { return a * std::pow(1 + b * std::pow(r, pc), e); },
                       prm.cutoff);
    }
    case ExtremalKind::nash: {
      auto u = std::make_shared<NashProfile>(nash_profile(n));
      const double u1 = (*u)(1.0);
      return radial("nash", n, 1.0, [a, u, u1](double r) { return a * ((*u)(r)-u1); });
    }
  }
  throw Error("domain", "unknown extremal kind");
}

GridFunction make_extremal(ExtremalKind kind, const ExtremalParams& params) {
  return sample_composed(extremal_function(kind, params), params.A, params.shift, params.cells, params.halfwidth);
}

namespace {

struct Bump {
  Eigen::MatrixXd A;  // support {|A (x - c)| <= 1}
  Eigen::VectorXd c;
  double weight = 1;
  int power = 3;      // (1 - |A(x - c)|^2)^power, or the cone when 0
};

double eval(const std::vector<Bump>& bumps, const Eigen::Ref<const Eigen::VectorXd>& x) {
  double s = 0;
  for (const Bump& b : bumps) {
    const Eigen::VectorXd y = b.A * (x - b.c);
    if (b.power == 0) {
      s += b.weight * std::max(0.0, 1 - y.norm());
    } else {
      const double t = 1 - y.squaredNorm();
      if (t > 0) s += b.weight * std::pow(t, b.power);
    }
  }
  return s;
}

// Scaled SL(n) map whose ellipse {|A y| <= 1} has semi-axes within [r / sqrt(cond), r sqrt(cond)].
Eigen::MatrixXd random_shape(int n, double r, double cond, std::mt19937_64& rng) {
  return random_sl(n, cond, rng()) / r;
}

TestFunction from_bumps(std::string id, int n, std::vector<Bump> bumps, double radius) {
  TestFunction t;
  t.id = std::move(id);
  t.dim = n;
  t.radius = radius;
  auto shared = std::make_shared<std::vector<Bump>>(std::move(bumps));
  t.f = [shared](const Eigen::Ref<const Eigen::VectorXd>& x) { return eval(*shared, x); };
  return t;
}

}  // namespace

TestFunction random_test_function(int n, std::uint64_t seed) {
  if (n < 2 || n > 3) throw Error("domain", "test functions are built for n in {2, 3}");
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int type = int(seed % 3);
  const std::string id = "random:" + std::to_string(seed);
  if (type == 1 && n == 2) {
    // Cone over a random polygon gauge: non-ellipsoidal level sets.
    const int k = 5 + int(rng() % 5);
    Eigen::MatrixXd pts(2, k);
    const double offset = 2 * std::numbers::pi * uni(rng);
    for (int i = 0; i < k; ++i) {
      const double angle = offset + 2 * std::numbers::pi * (i + 0.7 * uni(rng)) / k;
      const double r = 0.45 + 0.5 * uni(rng);
      pts.col(i) << r * std::cos(angle), r * std::sin(angle);
    }
    const Polytope P = make_polytope(pts);
    if (!P.contains_origin_in_interior(1e-3)) return random_test_function(n, seed + 3);
    const double power = uni(rng) < 0.5 ? 1.0 : 2.0;
    const double amp = 0.5 + uni(rng);
    TestFunction t;
    t.id = id;
    t.dim = 2;
    t.radius = 1;
    t.f = [P, power, amp](const Eigen::Ref<const Eigen::VectorXd>& x) {
      double gauge = 0;
      for (Eigen::Index i = 0; i < P.facet_count(); ++i) gauge = std::max(gauge, P.normals.col(i).dot(x) / P.offsets(i));
      return gauge >= 1 ? 0.0 : amp * std::pow(1 - gauge, power);
    };
    return t;
  }
  std::vector<Bump> bumps;
  const int k = type == 2 ? 2 : 2 + int(rng() % 3);
  for (int j = 0; j < k; ++j) {
    Bump b;
    b.A = random_shape(n, 0.22 + 0.18 * uni(rng), 3.0, rng);
    // Keep the support ellipsoid c + A^{-1} B inside the ball of radius 0.95.
    const double extent = 1 / Eigen::JacobiSVD<Eigen::MatrixXd>(b.A).singularValues().minCoeff();
    Eigen::VectorXd dir(n);
    for (int i = 0; i < n; ++i) dir(i) = uni(rng) - 0.5;
    const double room = std::max(0.0, 0.95 - extent);
    b.c = dir.normalized() * room * uni(rng);
    b.weight = 0.4 + uni(rng);
    b.power = (type == 2 && j == 0) ? 0 : 2 + int(rng() % 2);
    bumps.push_back(std::move(b));
  }
  return from_bumps(id, n, std::move(bumps), 1.0);
}

TestFunction random_function_in(const Polytope& Omega, std::uint64_t seed) {
  if (Omega.dim != 2) throw Error("domain", "Omega must be a polygon");
  if (!Omega.contains_origin_in_interior()) throw Error("domain", "Omega must contain the origin in its interior");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double inradius = Omega.offsets.minCoeff();
  const Eigen::Vector2d lo = Omega.vertices.rowwise().minCoeff(), hi = Omega.vertices.rowwise().maxCoeff();
  std::vector<Bump> bumps;
  const int k = 1 + int(rng() % 3);
  for (int j = 0; j < k; ++j) {
    double r = inradius * (0.3 + 0.6 * uni(rng));
    for (int attempt = 0;; ++attempt) {
      Bump b;
      b.A = random_shape(2, r, 4.0, rng);
      b.c = Eigen::Vector2d(lo(0) + (hi(0) - lo(0)) * uni(rng), lo(1) + (hi(1) - lo(1)) * uni(rng));
      // Ellipse c + A^{-1} B lies in Omega iff c.u + |A^{-t} u| <= b for every facet (u, b).
      const Eigen::MatrixXd At = b.A.inverse().transpose();
      bool inside = true;
      for (Eigen::Index i = 0; i < Omega.facet_count() && inside; ++i)
        inside = b.c.dot(Omega.normals.col(i)) + (At * Omega.normals.col(i)).norm() <= 0.97 * Omega.offsets(i);
      if (inside) {
        b.weight = 0.3 + uni(rng);
        b.power = 2 + int(rng() % 2);
        bumps.push_back(std::move(b));
        break;
      }
      if (attempt % 20 == 19) r *= 0.8;
    }
  }
  return from_bumps("omega:" + std::to_string(seed), 2, std::move(bumps), Omega.vertices.colwise().norm().maxCoeff());
}

double width(const Polytope& Omega, const Eigen::Ref<const Eigen::VectorXd>& xi) {
  const Eigen::VectorXd proj = Omega.vertices.transpose() * xi;
  return proj.maxCoeff() - proj.minCoeff();
}

double width(const ConvexBody& Omega, const Eigen::Ref<const Eigen::VectorXd>& xi) {
  const Eigen::VectorXd neg = -xi;
  return support(Omega, xi) + support(Omega, neg);
}

bool is_origin_symmetric(const Polytope& Q, double tol) {
  for (Eigen::Index i = 0; i < Q.vertices.cols(); ++i) {
    const double d = (Q.vertices.colwise() + Q.vertices.col(i)).colwise().norm().minCoeff();
    if (d > tol * std::max(1.0, Q.vertices.col(i).norm())) return false;
  }
  return true;
}

PoincareRatio poincare_ratio(const GridFunction& f, const Polytope& Q, double p) {
  if (!is_origin_symmetric(Q, 1e-9))
    throw Error("domain", "the Poincare bound is stated for origin-symmetric Q only");
  const int n = f.dim(), m = Q.dim;
  const double nm = double(n) * m;
  require_compact_support(f);
  const GradientSample g = gradient_sample(f);
  PoincareRatio out;
  out.min_support = lyz_body(g, Q, p, m, default_sphere_grid(n * m)).sampled().h.minCoeff();
  out.energy = energy(g, Q, p);
  const double fp = lp_norm(f, p), gp = dirichlet_norm(f, p);
  out.ratio = out.energy / (std::pow(fp, (nm - 1) / nm) * std::pow(gp, 1 / nm));
  out.constant = out.energy / fp;
  return out;
}

}  // namespace affiq
