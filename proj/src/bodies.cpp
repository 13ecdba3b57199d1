#include "affiq/bodies.hpp"

#include "affiq/config.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace affiq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  return es.operatorSqrt();
}

void require_origin_interior(const Polytope& P) {
  if (!P.contains_origin_in_interior())
    throw Error("origin_not_interior", "polytope does not contain the origin in its interior");
}

// ||u_j||_K for every column u_j of `points`, K the Wulff body of `s`. Blocked
// to keep the Gram matrix small.
Eigen::VectorXd wulff_gauges(const SupportSampled& s, const Eigen::MatrixXd& points) {
  const Eigen::MatrixXd scaled_nodes = s.grid->nodes * s.h.cwiseInverse().asDiagonal();
  Eigen::VectorXd out(points.cols());
  constexpr Eigen::Index block = 256;
  parallel_for((points.cols() + block - 1) / block, [&](Eigen::Index b) {
    const Eigen::Index lo = b * block, cnt = std::min(block, points.cols() - lo);
    const Eigen::MatrixXd gram = scaled_nodes.transpose() * points.middleCols(lo, cnt);
    out.segment(lo, cnt) = gram.colwise().maxCoeff().transpose();
  });
  return out;
}

}  // namespace

int ConvexBody::dim() const {
  return std::visit(overloaded{[](const Polytope& p) { return p.dim; },
                               [](const Ellipsoid& e) { return int(e.A.rows()); },
                               [](const SupportSampled& s) { return s.grid->dim; }},
                    body_);
}

ConvexBody polytope_body(const Eigen::MatrixXd& points) { return ConvexBody(make_polytope(points)); }

ConvexBody ellipsoid_body(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() < 1) throw Error("domain", "ellipsoid matrix must be square");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, A.cwiseAbs().maxCoeff()))
    throw Error("domain", "ellipsoid matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  if (es.eigenvalues().minCoeff() <= 1e-10)
    throw Error("domain", "ellipsoid matrix must be positive definite");
  return ConvexBody(Ellipsoid{0.5 * (A + A.transpose())});
}

ConvexBody sampled_body(SphereGridPtr grid, Eigen::VectorXd h) {
  if (!grid || h.size() != grid->size()) throw Error("domain", "support values do not match grid");
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (!(h(i) > 0) || !std::isfinite(h(i)))
      throw Error("domain", "support value at node " + std::to_string(i) + " is not positive");
  return ConvexBody(SupportSampled{std::move(grid), std::move(h)});
}

double convexity_defect(const SupportSampled& s) {
  if (s.grid->dim != 2) return 0.0;
  const auto& g = *s.grid;
  const Eigen::Index N = g.size();
  double worst = 0;
  for (Eigen::Index k = 0; k < N; ++k) {
    const Eigen::Index i = (k + N - 1) % N, j = (k + 1) % N;
    const auto ui = g.node(i), uk = g.node(k), uj = g.node(j);
    auto cross = [](const auto& a, const auto& b) { return a(0) * b(1) - a(1) * b(0); };
    // u_k = a u_i + b u_j with a, b >= 0 for consecutive nodes.
    const double det = cross(ui, uj);
    if (det <= 1e-14) continue;
    const double a = cross(uk, uj) / det, b = cross(ui, uk) / det;
    const double excess = s.h(k) - (a * s.h(i) + b * s.h(j));
    worst = std::max(worst, excess / s.h(k));
  }
  return worst;
}

ConvexBody unit_ball(int d) { return ConvexBody(Ellipsoid{Eigen::MatrixXd::Identity(d, d)}); }

ConvexBody regular_polygon(int k, double radius) {
  if (k < 3) throw Error("domain", "polygon needs at least 3 vertices");
  Eigen::MatrixXd v(2, k);
  for (int i = 0; i < k; ++i) {
    const double a = 2.0 * std::numbers::pi * i / k;
    v.col(i) << radius * std::cos(a), radius * std::sin(a);
  }
  return polytope_body(v);
}

ConvexBody cube(int d, double s) {
  const int corners = 1 << d;
  Eigen::MatrixXd v(d, corners);
  for (int c = 0; c < corners; ++c)
    for (int k = 0; k < d; ++k) v(k, c) = (c >> k & 1) ? s : -s;
  return polytope_body(v);
}

double support(const ConvexBody& K, const Eigen::Ref<const Eigen::VectorXd>& u) {
  return std::visit(
      overloaded{[&](const Polytope& p) { return (p.vertices.transpose() * u).maxCoeff(); },
                 [&](const Ellipsoid& e) { return std::sqrt(u.dot(e.A.ldlt().solve(u))); },
                 [&](const SupportSampled& s) {
                   const double r = u.norm();
                   if (r == 0) return 0.0;
                   return r * s.h(s.grid->nearest(u));
                 }},
      K.variant());
}

double wulff_gauge(const SupportSampled& s, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return (s.grid->nodes.transpose() * x).cwiseQuotient(s.h).maxCoeff();
}

double minkowski_functional(const ConvexBody& K, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return std::visit(overloaded{[&](const Polytope& p) {
                                 require_origin_interior(p);
                                 return std::max(0.0, (p.normals.transpose() * x).cwiseQuotient(p.offsets).maxCoeff());
                               },
                               [&](const Ellipsoid& e) { return std::sqrt(x.dot(e.A * x)); },
                               [&](const SupportSampled& s) { return std::max(0.0, wulff_gauge(s, x)); }},
                    K.variant());
}

ConvexBody polar(const ConvexBody& K) {
  return std::visit(
      overloaded{[](const Polytope& p) {
                   require_origin_interior(p);
                   return polytope_body(p.normals * p.offsets.cwiseInverse().asDiagonal());
                 },
                 [](const Ellipsoid& e) { return ConvexBody(Ellipsoid{e.A.inverse()}); },
                 [](const SupportSampled& s) {
                   return ConvexBody(SupportSampled{s.grid, wulff_gauges(s, s.grid->nodes)});
                 }},
      K.variant());
}

double volume_polar_coordinates(const ConvexBody& K, const SphereGrid& grid) {
  const int d = K.dim();
  if (grid.dim != d) throw Error("domain", "grid dimension does not match body");
  Eigen::VectorXd gauge(grid.size());
  if (K.is_sampled()) {
    gauge = wulff_gauges(K.sampled(), grid.nodes);
  } else {
    for (Eigen::Index i = 0; i < grid.size(); ++i) gauge(i) = minkowski_functional(K, grid.node(i));
  }
  if (gauge.minCoeff() <= 0) throw Error("origin_not_interior", "body is unbounded in some direction");
  const Eigen::VectorXd values = gauge.array().pow(-double(d)).matrix();
  return integrate_sphere(grid, values) / d;
}

double volume(const ConvexBody& K) {
  const double v = std::visit(
      overloaded{[](const Polytope& p) { return p.volume; },
                 [](const Ellipsoid& e) {
                   return ball_volume(int(e.A.rows())) / std::sqrt(e.A.determinant());
                 },
                 [&](const SupportSampled& s) {
                   if (s.grid->dim <= 3) return intersect_halfspaces(s.grid->nodes, s.h).volume;
                   return volume_polar_coordinates(K, *s.grid);
                 }},
      K.variant());
  if (!(v > 1e-12)) throw Error("degenerate", "body volume is below 1e-12");
  return v;
}

double volume(const RadialSample& L) {
  const int d = L.grid->dim;
  const Eigen::VectorXd values = L.rho.array().pow(double(d)).matrix();
  return integrate_sphere(*L.grid, values) / d;
}

ConvexBody linear_image(const ConvexBody& K, const Eigen::MatrixXd& phi) {
  return std::visit(overloaded{[&](const Polytope& p) { return polytope_body(phi * p.vertices); },
                               [&](const Ellipsoid& e) {
                                 const Eigen::MatrixXd inv = phi.inverse();
                                 return ellipsoid_body(inv.transpose() * e.A * inv);
                               },
                               [](const SupportSampled&) -> ConvexBody {
                                 throw Error("unsupported", "linear image of a sampled body");
                               }},
                    K.variant());
}

ConvexBody translate(const ConvexBody& K, const Eigen::VectorXd& shift) {
  if (!K.is_polytope()) throw Error("unsupported", "only polytopes can be translated");
  return polytope_body(K.polytope().vertices.colwise() + shift);
}

ConvexBody scale(const ConvexBody& K, double c) {
  if (!(c > 0)) throw Error("domain", "scale factor must be positive");
  return std::visit(overloaded{[&](const Polytope& p) { return polytope_body(c * p.vertices); },
                               [&](const Ellipsoid& e) { return ConvexBody(Ellipsoid{e.A / (c * c)}); },
                               [&](const SupportSampled& s) {
                                 return ConvexBody(SupportSampled{s.grid, c * s.h});
                               }},
                    K.variant());
}

SphericalMeasure make_measure(const Eigen::MatrixXd& directions, const Eigen::VectorXd& weights) {
  if (directions.cols() != weights.size()) throw Error("domain", "direction/weight count mismatch");
  SphericalMeasure nu;
  nu.dim = int(directions.rows());
  std::vector<Eigen::VectorXd> dirs;
  std::vector<double> w;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights(i) >= 0) || !std::isfinite(weights(i)))
      throw Error("domain", "measure weights must be finite and nonnegative");
    const double r = directions.col(i).norm();
    if (!(r > 0)) throw Error("domain", "measure direction must be nonzero");
    const Eigen::VectorXd u = directions.col(i) / r;
    bool merged = false;
    for (std::size_t j = 0; j < dirs.size(); ++j)
      if ((dirs[j] - u).norm() <= 1e-12) {
        w[j] += weights(i);
        merged = true;
        break;
      }
    if (!merged) {
      dirs.push_back(u);
      w.push_back(weights(i));
    }
  }
  nu.directions.resize(nu.dim, Eigen::Index(dirs.size()));
  nu.weights.resize(Eigen::Index(w.size()));
  for (std::size_t j = 0; j < dirs.size(); ++j) {
    nu.directions.col(Eigen::Index(j)) = dirs[j];
    nu.weights(Eigen::Index(j)) = w[j];
  }
  return nu;
}

SphericalMeasure scaled(const SphericalMeasure& nu, double c) {
  SphericalMeasure out = nu;
  out.weights *= c;
  return out;
}

SphericalMeasure uniform_measure(const SphereGrid& grid) {
  SphericalMeasure nu;
  nu.dim = grid.dim;
  nu.directions = grid.nodes;
  nu.weights = grid.weights;
  return nu;
}

double hemisphere_margin(const SphericalMeasure& nu) {
  if (nu.size() == 0) return 0.0;
  Eigen::MatrixXd probes;
  if (nu.dim == 1) {
    probes.resize(1, 2);
    probes << 1.0, -1.0;
  } else {
    probes = default_sphere_grid(nu.dim)->nodes;
  }
  const Eigen::MatrixXd dots = (probes.transpose() * nu.directions).cwiseMax(0.0);
  return (dots * nu.weights).minCoeff();
}

void require_not_concentrated(const SphericalMeasure& nu) {
  const double total = nu.total();
  if (!(hemisphere_margin(nu) > 1e-12 * std::max(total, 1e-300)))
    throw Error("hemisphere", "measure is concentrated in a closed hemisphere");
}

SphericalMeasure surface_measure(const ConvexBody& K) {
  if (K.is_polytope()) {
    const auto& p = K.polytope();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < p.facet_count(); ++i)
      if (p.areas(i) > 1e-12) keep.push_back(i);
    SphericalMeasure nu;
    nu.dim = p.dim;
    nu.directions.resize(p.dim, Eigen::Index(keep.size()));
    nu.weights.resize(Eigen::Index(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
      nu.directions.col(Eigen::Index(j)) = p.normals.col(keep[j]);
      nu.weights(Eigen::Index(j)) = p.areas(keep[j]);
    }
    return nu;
  }
  if (K.is_ellipsoid()) {
    const auto& A = K.ellipsoid().A;
    const int d = int(A.rows());
    const auto grid = default_sphere_grid(d);
    const Eigen::MatrixXd root = sqrt_spd(A);
    const double jac = 1.0 / std::sqrt(A.determinant());
    SphericalMeasure nu;
    nu.dim = d;
    nu.directions = root * grid->nodes;
    nu.weights.resize(grid->size());
    for (Eigen::Index i = 0; i < grid->size(); ++i) {
      const double r = nu.directions.col(i).norm();
      nu.directions.col(i) /= r;
      nu.weights(i) = grid->weights(i) * jac * r;
    }
    return nu;
  }
  throw Error("unsupported", "surface measure needs a polytope or an ellipsoid");
}

SphericalMeasure lp_surface_measure(const ConvexBody& K, double p) {
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  SphericalMeasure nu = surface_measure(K);
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    const double h = support(K, nu.directions.col(i));
    if (!(h > 1e-12))
      throw Error("origin_not_interior", "support function vanishes on a facet normal");
    nu.weights(i) *= std::pow(h, 1.0 - p);
  }
  return nu;
}

double mixed_volume_V1(const ConvexBody& K, const ConvexBody& L) {
  if (K.dim() != L.dim()) throw Error("domain", "bodies live in different dimensions");
  const int d = K.dim();
  if (K.is_polytope()) {
    const auto& p = K.polytope();
    double s = 0;
    for (Eigen::Index i = 0; i < p.facet_count(); ++i) s += p.areas(i) * support(L, p.normals.col(i));
    return s / d;
  }
  if (K.is_ellipsoid()) {
    const auto& A = K.ellipsoid().A;
    const auto grid = default_sphere_grid(d);
    const Eigen::MatrixXd root = sqrt_spd(A);
    Eigen::VectorXd values(grid->size());
    for (Eigen::Index i = 0; i < grid->size(); ++i) values(i) = support(L, root * grid->node(i));
    return integrate_sphere(*grid, values) / (d * std::sqrt(A.determinant()));
  }
  throw Error("unsupported", "mixed volume needs a polytope or ellipsoid as first body");
}

}  // namespace affiq
