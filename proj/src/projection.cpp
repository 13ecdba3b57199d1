#include "affiq/projection.hpp"

#include "affiq/config.hpp"

#include <Eigen/QR>

#include <cstdio>
#include <map>
#include <mutex>
#include <random>

namespace affiq {

namespace {

// Columns per batch so that one score matrix stays around a million entries.
Eigen::Index batch_size(Eigen::Index rows, Eigen::Index k) {
  return std::max<Eigen::Index>(1, (Eigen::Index(1) << 20) / std::max<Eigen::Index>(1, rows * k));
}

std::string q_key(const Polytope& Q) {
  std::string key;
  char buf[32];
  for (Eigen::Index i = 0; i < Q.vertices.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,", Q.vertices.data()[i]);
    key += buf;
  }
  return key;
}

}  // namespace

Polytope q_body(const Eigen::MatrixXd& points) {
  Polytope Q = make_polytope(points);
  if (Q.offsets.minCoeff() < -1e-12) throw Error("domain", "Q must contain the origin");
  return Q;
}

Polytope q_preset(const std::string& name) {
  if (name == "segment") return q_body((Eigen::MatrixXd(1, 2) << -0.5, 0.5).finished());
  if (name == "segment+") return q_body((Eigen::MatrixXd(1, 2) << 0.0, 1.0).finished());
  if (name == "square")
    return q_body((Eigen::MatrixXd(2, 4) << -0.5, 0.5, 0.5, -0.5, -0.5, -0.5, 0.5, 0.5).finished());
  if (name == "simplex2") return q_body((Eigen::MatrixXd(2, 3) << 0, 1, 0, 0, 0, 1).finished());
  throw Error("domain", "unknown Q preset '" + name + "' (segment, segment+, square, simplex2)");
}

const std::vector<std::string>& q_preset_names() {
  static const std::vector<std::string> names{"segment", "segment+", "square", "simplex2"};
  return names;
}

double support_q(const Polytope& Q, const Eigen::Ref<const Eigen::VectorXd>& y) {
  return std::max(0.0, (Q.vertices.transpose() * y).maxCoeff());
}

MatrixDirection MatrixDirection::from_vector(const Eigen::Ref<const Eigen::VectorXd>& v, int n) {
  if (n < 1 || v.size() % n != 0) throw Error("domain", "direction length is not a multiple of n");
  const double r = v.norm();
  if (std::abs(r - 1.0) > 1e-12) throw Error("domain", "matrix direction must have unit Frobenius norm");
  return MatrixDirection{v.reshaped(n, v.size() / n)};
}

Eigen::VectorXd hq_power_sums(const Eigen::MatrixXd& points, const Eigen::VectorXd& weights,
                              const Eigen::MatrixXd& probes, Eigen::Index k, double p) {
  const Eigen::Index blocks = probes.cols() / k;
  const Eigen::MatrixXd scores = points.transpose() * probes;
  Eigen::VectorXd out(blocks);
  const Eigen::Index N = points.cols();
  for (Eigen::Index b = 0; b < blocks; ++b) {
    double s = 0;
    for (Eigen::Index j = 0; j < N; ++j) {
      double h = 0;
      for (Eigen::Index l = 0; l < k; ++l) h = std::max(h, scores(j, b * k + l));
      if (h > 0) s += weights(j) * pow_p(h, p);
    }
    out(b) = s;
  }
  return out;
}

Eigen::VectorXd cosine_transform_nodes(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& weights,
                                       const Polytope& Q, double p, const Eigen::MatrixXd& thetas) {
  const Eigen::Index n = vectors.rows(), m = Q.dim, k = Q.vertices.cols();
  if (thetas.rows() != n * m) throw Error("domain", "theta dimension must be n*m");
  const Eigen::Index T = thetas.cols();
  const Eigen::Index B = batch_size(vectors.cols(), k);
  Eigen::VectorXd out(T);
  parallel_for((T + B - 1) / B, [&](Eigen::Index batch) {
    const Eigen::Index lo = batch * B, cnt = std::min(B, T - lo);
    Eigen::MatrixXd probes(n, k * cnt);
    for (Eigen::Index t = 0; t < cnt; ++t)
      probes.middleCols(t * k, k) = thetas.col(lo + t).reshaped(n, m) * Q.vertices;
    out.segment(lo, cnt) = hq_power_sums(vectors, weights, probes, k, p);
  });
  return out;
}

double cosine_transform(const SphericalMeasure& nu, const Polytope& Q, double p,
                        const MatrixDirection& theta) {
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  if (theta.theta.rows() != nu.dim || theta.theta.cols() != Q.dim)
    throw Error("domain", "theta shape does not match n x m");
  require_not_concentrated(nu);
  const Eigen::VectorXd flat = theta.flat();
  const double value = cosine_transform_nodes(nu.directions, nu.weights, Q, p, flat)(0);
  return value;
}

ConvexBody projection_body_of_measure(const SphericalMeasure& nu, const Polytope& Q, double p, int m,
                                      SphereGridPtr grid) {
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  if (Q.dim != m) throw Error("domain", "Q must live in R^m");
  if (grid->dim != nu.dim * m) throw Error("domain", "grid must be on S^{nm-1}");
  require_not_concentrated(nu);
  const Eigen::VectorXd c = cosine_transform_nodes(nu.directions, nu.weights, Q, p, grid->nodes);
  if (c.minCoeff() <= 0) throw Error("degenerate", "cosine transform vanishes at a node");
  return sampled_body(std::move(grid), c.array().pow(1.0 / p).matrix());
}

ConvexBody projection_body(const ConvexBody& K, const Polytope& Q, double p, int m, SphereGridPtr grid) {
  return projection_body_of_measure(lp_surface_measure(K, p), Q, p, m, std::move(grid));
}

double polar_projection_volume(const ConvexBody& body) {
  if (!body.is_sampled()) throw Error("unsupported", "polar volume needs a sampled body");
  const auto& s = body.sampled();
  if (s.h.minCoeff() < 1e-10) throw Error("degenerate", "support value below 1e-10");
  const int d = s.grid->dim;
  const Eigen::VectorXd values = s.h.array().pow(-double(d)).matrix();
  return integrate_sphere(*s.grid, values) / d;
}

RadialSample polar_radial(const ConvexBody& body) {
  if (!body.is_sampled()) throw Error("unsupported", "polar radial function needs a sampled body");
  const auto& s = body.sampled();
  return RadialSample{s.grid, s.h.cwiseInverse()};
}

ConvexBody centroid_body(const RadialSample& L, const Polytope& Q, double p, SphereGridPtr grid_n) {
  const Eigen::Index nm = L.grid->dim, m = Q.dim, n = grid_n->dim, k = Q.vertices.cols();
  if (n * m != nm) throw Error("domain", "centroid body needs L in R^{nm}");
  const double vol = volume(L);
  if (!(vol > 1e-12)) throw Error("degenerate", "star body has no volume");
  const Eigen::VectorXd weights =
      (L.grid->weights.array() * L.rho.array().pow(double(nm) + p) / ((nm + p) * vol)).matrix();
  const Eigen::Index N = grid_n->size();
  const Eigen::Index B = batch_size(L.grid->size(), k);
  Eigen::VectorXd hp(N);
  parallel_for((N + B - 1) / B, [&](Eigen::Index batch) {
    const Eigen::Index lo = batch * B, cnt = std::min(B, N - lo);
    Eigen::MatrixXd probes(nm, k * cnt);
    for (Eigen::Index t = 0; t < cnt; ++t)
      for (Eigen::Index l = 0; l < k; ++l)
        for (Eigen::Index i = 0; i < m; ++i)
          probes.block(i * n, t * k + l, n, 1) = Q.vertices(i, l) * grid_n->node(lo + t);
    hp.segment(lo, cnt) = hq_power_sums(L.grid->nodes, weights, probes, k, p);
  });
  return sampled_body(std::move(grid_n), hp.array().pow(1.0 / p).matrix());
}

double dnp_constant(int n, int m, double p, const Polytope& Q) {
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  if (Q.dim != m) throw Error("domain", "Q must live in R^m");
  const auto inner = default_sphere_grid(n);
  const auto outer = default_sphere_grid(n * m);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d/%d/%.17g/%ld/%ld|", n, m, p, long(inner->size()), long(outer->size()));
  const std::string key = buf + q_key(Q);
  static std::mutex mutex;
  static std::map<std::string, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const ConvexBody body = projection_body_of_measure(uniform_measure(*inner), Q, p, m, outer);
  const double nm = double(n) * m;
  const double d = std::pow(sphere_area(n), 1.0 / p) * std::pow(nm * polar_projection_volume(body), 1.0 / nm);
  std::lock_guard lock(mutex);
  cache.emplace(key, d);
  return d;
}

namespace {

Eigen::MatrixXd haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd G(n, n);
  for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Qm = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Qm.col(j) *= -1.0;
  return Qm;
}

}  // namespace

double dnp_constant_haar(int n, int m, double p, const Polytope& Q, int rotations, unsigned long seed) {
  if (rotations < 1) throw Error("domain", "need at least one rotation");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd v(n, rotations);
  for (int s = 0; s < rotations; ++s) v.col(s) = haar_orthogonal(n, rng).row(0).transpose();
  const auto outer = default_sphere_grid(n * m);
  const Eigen::VectorXd mean = cosine_transform_nodes(
      v, Eigen::VectorXd::Constant(rotations, 1.0 / rotations), Q, p, outer->nodes);
  const double nm = double(n) * m;
  const Eigen::VectorXd values = mean.array().pow(-nm / p).matrix();
  return std::pow(integrate_sphere(*outer, values), 1.0 / nm);
}

double dnp_constant_infinity(int n, int m, const Polytope& Q) {
  const auto outer = default_sphere_grid(n * m);
  const double nm = double(n) * m;
  Eigen::VectorXd values(outer->size());
  for (Eigen::Index t = 0; t < outer->size(); ++t) {
    const Eigen::MatrixXd images = outer->node(t).reshaped(n, m) * Q.vertices;
    values(t) = std::pow(images.colwise().norm().maxCoeff(), -nm);
  }
  return std::pow(integrate_sphere(*outer, values), 1.0 / nm);
}

Eigen::MatrixXd random_sl(int n, double max_condition, std::uint64_t seed) {
  if (!(max_condition >= 1)) throw Error("domain", "condition bound must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  const double span = std::log(max_condition);
  Eigen::VectorXd logs(n);
  for (int i = 0; i < n; ++i) logs(i) = span * uni(rng);
  logs.array() -= logs.mean();
  // Range of logs is at most span, so the condition number is at most max_condition.
  const Eigen::MatrixXd U = haar_orthogonal(n, rng), V = haar_orthogonal(n, rng);
  Eigen::MatrixXd phi = U * logs.array().exp().matrix().asDiagonal() * V.transpose();
  if (phi.determinant() < 0) phi.col(0) *= -1.0;
  return phi;
}

}  // namespace affiq
