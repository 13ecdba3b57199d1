#include "affiq/covariogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace affiq {

double m_covariogram(const Polytope& K, const Eigen::MatrixXd& xs) {
  if (xs.rows() != K.dim) throw Error("domain", "translation vectors must live in R^n");
  const Eigen::Index F = K.facet_count(), m = xs.cols();
  Eigen::MatrixXd normals(K.dim, F * (m + 1));
  Eigen::VectorXd offsets(F * (m + 1));
  normals.leftCols(F) = K.normals;
  offsets.head(F) = K.offsets;
  for (Eigen::Index i = 0; i < m; ++i) {
    normals.middleCols(F * (i + 1), F) = K.normals;
    offsets.segment(F * (i + 1), F) = K.offsets + K.normals.transpose() * xs.col(i);
  }
  // Shift so that the centroid of K is the origin; the volume is unchanged.
  offsets -= normals.transpose() * K.centroid;
  return intersect_halfspaces(normals, offsets).volume;
}

double covariogram(const Polytope& K, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return m_covariogram(K, Eigen::MatrixXd(x));
}

namespace {

// max c^T x subject to A x <= b, x >= 0, with b >= 0. Bland's rule.
double simplex_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index rows = A.rows(), vars = A.cols();
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(rows + 1, vars + rows + 1);
  T.topLeftCorner(rows, vars) = A;
  T.block(0, vars, rows, rows).setIdentity();
  T.topRightCorner(rows, 1) = b;
  T.bottomLeftCorner(1, vars) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) basis[std::size_t(i)] = vars + i;
  const double eps = 1e-12;
  const Eigen::Index rhs = vars + rows;
  for (int it = 0; it < 10000; ++it) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < vars + rows; ++j)
      if (T(rows, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) return T(rows, rhs);
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (T(i, enter) <= eps) continue;
      const double ratio = T(i, rhs) / T(i, enter);
      if (leave < 0 || ratio < best - eps) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + eps && basis[std::size_t(i)] < basis[std::size_t(leave)]) {
        leave = i;
      }
    }
    if (leave < 0) throw Error("solver", "linear program is unbounded");
    T.row(leave) /= T(leave, enter);
    for (Eigen::Index i = 0; i <= rows; ++i)
      if (i != leave && T(i, enter) != 0) T.row(i) -= T(i, enter) * T.row(leave);
    basis[std::size_t(leave)] = enter;
  }
  throw Error("solver", "simplex iteration limit reached");
}

}  // namespace

double difference_body_radial(const Polytope& K, int m, const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const int n = K.dim;
  if (m < 1 || theta.size() != Eigen::Index(n) * m) throw Error("domain", "theta must lie in R^{nm}");
  if (!(theta.norm() > 0)) throw Error("domain", "theta must be nonzero");
  const Eigen::Index F = K.facet_count();
  // y = centroid + z+ - z-, variables (z+, z-, r).
  const Eigen::VectorXd slack = K.offsets - K.normals.transpose() * K.centroid;
  Eigen::MatrixXd A(F * (m + 1), 2 * n + 1);
  Eigen::VectorXd b(F * (m + 1));
  for (int i = 0; i <= m; ++i) {
    auto block = A.middleRows(F * i, F);
    block.leftCols(n) = K.normals.transpose();
    block.middleCols(n, n) = -K.normals.transpose();
    block.col(2 * n) = i == 0 ? Eigen::VectorXd::Zero(F)
                              : Eigen::VectorXd(-K.normals.transpose() * theta.segment(Eigen::Index(n) * (i - 1), n));
    b.segment(F * i, F) = slack;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * n + 1);
  c(2 * n) = 1;
  return simplex_max(A, b, c);
}

RadialSample difference_body(const Polytope& K, int m, SphereGridPtr grid) {
  if (grid->dim != K.dim * m) throw Error("domain", "grid must live on S^{nm-1}");
  RadialSample out{grid, Eigen::VectorXd(grid->size())};
  parallel_for(grid->size(), [&](Eigen::Index i) { out.rho(i) = difference_body_radial(K, m, grid->node(i)); });
  return out;
}

double schneider_ratio(const Polytope& K, int m, SphereGridPtr grid) {
  if (K.dim * m > 6) throw Error("domain", "schneider_ratio needs nm <= 6");
  return volume(difference_body(K, m, std::move(grid))) * std::pow(K.volume, -double(m));
}

double schneider_ratio(const Polytope& K, int m) { return schneider_ratio(K, m, default_sphere_grid(K.dim * m)); }

SphereGridPtr ratio_verification_grid(int m) {
  if (m == 1) return default_sphere_grid(2);
  return shared_sphere_grid(2 * m, 32768, default_scheme(2 * m));
}

double matheron_derivative(const Polytope& K, const Eigen::Ref<const Eigen::VectorXd>& theta) {
  if (K.dim > 3) throw Error("domain", "matheron_derivative needs n <= 3");
  if (theta.size() != K.dim || !(theta.norm() > 0)) throw Error("domain", "theta must be a nonzero vector in R^n");
  const Eigen::VectorXd u = theta.normalized();
  const double diam = (K.vertices.rowwise().maxCoeff() - K.vertices.rowwise().minCoeff()).norm();
  const double g0 = K.volume;
  auto slope = [&](double r) {
    const double s = r * diam;
    return (covariogram(K, s * u) - g0) / s;
  };
  const double d1 = slope(1e-2), d2 = slope(5e-3), d3 = slope(2.5e-3);
  if (!std::isfinite(d1 + d2 + d3)) throw Error("underflow", "difference quotient is not finite");
  // Two Richardson levels for D(r) = D0 + a r + b r^2.
  const double r1 = 2 * d2 - d1, r2 = 2 * d3 - d2;
  return (4 * r2 - r1) / 3;
}

namespace {

// Polygon from search coordinates; false when degenerate.
bool build_polygon(PolygonFamily family, const Eigen::VectorXd& x, Polytope& out) {
  Eigen::MatrixXd pts;
  if (family == PolygonFamily::polygons) {
    pts = Eigen::Map<const Eigen::MatrixXd>(x.data(), 2, x.size() / 2);
  } else {
    const Eigen::Index k = x.size() / 2;
    pts.resize(2, 2 * k);
    for (Eigen::Index i = 0; i < k; ++i) {
      pts.col(i) = x.segment(2 * i, 2);
      pts.col(i + k) = -x.segment(2 * i, 2);
    }
  }
  if (!pts.allFinite()) return false;
  // Isotropic position: the ratio is affine invariant and round bodies keep
  // the radial quadrature accurate.
  const Eigen::VectorXd mean = pts.rowwise().mean();
  const Eigen::MatrixXd centred = pts.colwise() - mean;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centred * centred.transpose() / double(pts.cols()));
  const Eigen::VectorXd ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 1e-10 * ev.maxCoeff())) return false;
  const Eigen::MatrixXd T = eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  try {
    out = make_polytope(T * centred);
  } catch (const Error&) {
    return false;
  }
  return out.volume > 1e-3;
}

}  // namespace

RatioSearch optimize_ratio(PolygonFamily family, int n, int m, Sense sense, int budget, std::uint64_t seed,
                           int restarts) {
  if (n != 2) throw Error("domain", "ratio optimisation is implemented for n = 2");
  if (m != 1 && m != 2) throw Error("domain", "ratio optimisation needs m in {1, 2}");
  if (budget < 10 || restarts < 1) throw Error("domain", "budget and restarts must be positive");
  const int dims = family == PolygonFamily::polygons ? 12 : 6;
  const SphereGridPtr coarse = shared_sphere_grid(2 * m, m == 1 ? 180 : 2048, default_scheme(2 * m));
  const double sign = sense == Sense::max ? -1.0 : 1.0;

  struct Outcome {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    bool exhausted = false;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(restarts, [&](Eigen::Index r) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * std::uint64_t(r + 1));
    std::normal_distribution<double> normal;
    Outcome& out = outcomes[std::size_t(r)];
    auto objective = [&](const Eigen::VectorXd& x) {
      ++out.evaluations;
      Polytope P;
      if (!build_polygon(family, x, P)) return std::numeric_limits<double>::infinity();
      return sign * schneider_ratio(P, m, coarse);
    };
    // Start from points near a regular polygon with random jitter.
    Eigen::VectorXd x0(dims);
    const int k = dims / 2;
    for (int i = 0; i < k; ++i) {
      const double a = (family == PolygonFamily::polygons ? 2.0 : 1.0) * std::numbers::pi * i / k;
      x0(2 * i) = std::cos(a) + 0.3 * normal(rng);
      x0(2 * i + 1) = std::sin(a) + 0.3 * normal(rng);
    }
    struct {
      std::vector<Eigen::VectorXd> simplex;
      std::vector<double> values;
    } nm;
    nm.simplex.push_back(x0);
    for (int j = 0; j < dims; ++j) {
      Eigen::VectorXd v = x0;
      v(j) += 0.25;
      nm.simplex.push_back(v);
    }
    for (const auto& v : nm.simplex) nm.values.push_back(objective(v));
    std::vector<int> order(static_cast<std::size_t>(dims + 1));
    while (out.evaluations < budget) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return nm.values[std::size_t(a)] < nm.values[std::size_t(b)]; });
      const int best = order.front(), worst = order.back(), second = order[order.size() - 2];
      if (std::abs(nm.values[std::size_t(worst)] - nm.values[std::size_t(best)]) < 1e-10) break;
      Eigen::VectorXd centre = Eigen::VectorXd::Zero(dims);
      for (int j : order)
        if (j != worst) centre += nm.simplex[std::size_t(j)];
      centre /= dims;
      const Eigen::VectorXd& xw = nm.simplex[std::size_t(worst)];
      const Eigen::VectorXd xr = centre + (centre - xw);
      const double fr = objective(xr);
      if (fr < nm.values[std::size_t(best)]) {
        const Eigen::VectorXd xe = centre + 2 * (centre - xw);
        const double fe = objective(xe);
        if (fe < fr) {
          nm.simplex[std::size_t(worst)] = xe;
          nm.values[std::size_t(worst)] = fe;
        } else {
          nm.simplex[std::size_t(worst)] = xr;
          nm.values[std::size_t(worst)] = fr;
        }
      } else if (fr < nm.values[std::size_t(second)]) {
        nm.simplex[std::size_t(worst)] = xr;
        nm.values[std::size_t(worst)] = fr;
      } else {
        const bool outside = fr < nm.values[std::size_t(worst)];
        const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centre + 0.5 * (xr - centre))
                                           : Eigen::VectorXd(centre + 0.5 * (xw - centre));
        const double fc = objective(xc);
        if (fc < std::min(fr, nm.values[std::size_t(worst)])) {
          nm.simplex[std::size_t(worst)] = xc;
          nm.values[std::size_t(worst)] = fc;
        } else {
          const Eigen::VectorXd xb = nm.simplex[std::size_t(best)];
          for (int j = 0; j <= dims; ++j) {
            if (j == best) continue;
            nm.simplex[std::size_t(j)] = xb + 0.5 * (nm.simplex[std::size_t(j)] - xb);
            nm.values[std::size_t(j)] = objective(nm.simplex[std::size_t(j)]);
          }
        }
      }
    }
    out.exhausted = out.evaluations >= budget;
    const auto it = std::min_element(nm.values.begin(), nm.values.end());
    out.value = *it;
    out.x = nm.simplex[std::size_t(it - nm.values.begin())];
  });

  const auto winner = std::min_element(outcomes.begin(), outcomes.end(),
                                       [](const Outcome& a, const Outcome& b) { return a.value < b.value; });
  RatioSearch result;
  for (const auto& o : outcomes) result.evaluations += o.evaluations;
  result.budget_exhausted = std::any_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.exhausted; });
  Polytope P;
  if (!std::isfinite(winner->value) || !build_polygon(family, winner->x, P))
    throw Error("solver", "ratio search found no admissible polygon");
  // Unit area, centroid at the origin; the ratio is affine invariant.
  const Eigen::MatrixXd centred = (P.vertices.colwise() - P.centroid) / std::sqrt(P.volume);
  result.body = make_polytope(centred);
  result.ratio = schneider_ratio(result.body, m, ratio_verification_grid(m));
  return result;
}

}  // namespace affiq
