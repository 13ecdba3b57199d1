#include "affiq/minkowski.hpp"

#include <algorithm>

namespace affiq {

namespace {

struct WulffEval {
  double phi = 0;  // sum w h^p
  double volume = 0;
  Eigen::VectorXd areas;
  double value = 0;  // log phi - (p/n) log volume
  Eigen::VectorXd grad;
};

WulffEval evaluate(const SphericalMeasure& nu, const Eigen::VectorXd& h, double p) {
  const int n = nu.dim;
  WulffEval e;
  HalfspaceCell cell;
  try {
    cell = intersect_halfspaces(nu.directions, h);
  } catch (const Error&) {
    e.value = INFINITY;
    return e;
  }
  e.volume = cell.volume;
  e.areas = cell.facet_areas;
  Eigen::VectorXd hp(h.size());
  for (Eigen::Index i = 0; i < h.size(); ++i) hp(i) = nu.weights(i) * pow_p(std::max(h(i), 0.0), p);
  e.phi = pairwise_sum(hp);
  if (!(e.volume > 0) || !(e.phi > 0)) {
    e.value = INFINITY;
    return e;
  }
  e.value = std::log(e.phi) - p / n * std::log(e.volume);
  e.grad.resize(h.size());
  for (Eigen::Index i = 0; i < h.size(); ++i)
    e.grad(i) = p * nu.weights(i) * pow_p(std::max(h(i), 0.0), p - 1) / e.phi - p / n * e.areas(i) / e.volume;
  return e;
}

// Euler-Lagrange residual after rescaling so that (1/n) sum w h^p = 1.
double residual(const SphericalMeasure& nu, const Eigen::VectorXd& h, const WulffEval& e, double p) {
  const int n = nu.dim;
  const double c = std::pow(n / e.phi, 1.0 / p);
  const double vol = std::pow(c, n) * e.volume, ca = std::pow(c, n - 1);
  double res = 0;
  for (Eigen::Index i = 0; i < h.size(); ++i)
    res = std::max(res, std::abs(vol * pow_p(c * h(i), p - 1) * nu.weights(i) - ca * e.areas(i)));
  return res;
}

MinkowskiSolution finish(const SphericalMeasure& nu, const Eigen::VectorXd& h, const WulffEval& e, double p,
                         double floor) {
  const int n = nu.dim;
  const double c = std::pow(n / e.phi, 1.0 / p);
  MinkowskiSolution s;
  s.support = c * h;
  double sum = 0;
  for (Eigen::Index i = 0; i < h.size(); ++i) sum += nu.weights(i) * pow_p(s.support(i), p);
  s.residual = residual(nu, h, e, p);
  s.defect = std::abs(1 - sum / n);
  s.floored = p > 1 && h.minCoeff() <= floor * (1 + 1e-12);
  const HalfspaceCell cell = intersect_halfspaces(nu.directions, s.support);
  s.body = polytope_body(cell.vertices);
  s.origin_distance = std::max(0.0, s.body.polytope().offsets.minCoeff());
  return s;
}

}  // namespace

MinkowskiSolution solve_lp_minkowski(const SphericalMeasure& nu, double p, const MinkowskiOptions& options) {
  const int n = nu.dim;
  if (n != 2 && n != 3) throw Error("unsupported", "the Minkowski solver works in dimensions 2 and 3");
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  if (nu.directions.fullPivLu().rank() < n) throw Error("domain", "measure atoms do not span R^n");
  require_not_concentrated(nu);
  const Eigen::VectorXd centre = nu.directions * nu.weights;
  if (p == 1.0 && centre.norm() > 1e-9 * nu.total())
    throw Error("domain", "p = 1 needs a measure with zero centre of mass");

  Eigen::VectorXd h = Eigen::VectorXd::Ones(nu.size());
  WulffEval e = evaluate(nu, h, p);
  double step = 1e-2;
  Eigen::VectorXd best_h = h;
  WulffEval best_e = e;
  double best_res = residual(nu, h, e, p);
  // Non-monotone Armijo test against the worst of the last few values.
  std::vector<double> recent{e.value};
  int it = 0;
  for (; it < options.max_iterations && best_res > options.tolerance; ++it) {
    Eigen::VectorXd trial;
    WulffEval et;
    double t = step;
    bool accepted = false;
    const double ref = *std::max_element(recent.begin(), recent.end());
    for (int back = 0; back < 40; ++back, t *= 0.5) {
      trial = h - t * e.grad;
      if (p > 1) trial = trial.cwiseMax(options.floor);
      et = evaluate(nu, trial, p);
      if (et.value <= ref - 1e-4 * e.grad.dot(h - trial)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    if (p == 1.0) {
      // Translations leave the objective unchanged; keep the centroid at 0.
      const HalfspaceCell cell = intersect_halfspaces(nu.directions, trial);
      const Eigen::VectorXd c = cell.vertices.rowwise().mean();
      trial -= nu.directions.transpose() * c;
      et = evaluate(nu, trial, p);
    }
    // Scale to unit volume; the objective is scale invariant and the gradient is (-1)-homogeneous.
    const double s = std::pow(et.volume, -1.0 / n);
    trial *= s;
    et = evaluate(nu, trial, p);
    const Eigen::VectorXd dh = trial - h, dg = et.grad - e.grad;
    const double sy = dh.dot(dg);
    step = sy > 0 ? dh.squaredNorm() / sy : 2 * t;
    step = std::clamp(step, 1e-12, 1e6);
    h = std::move(trial);
    e = std::move(et);
    recent.push_back(e.value);
    if (recent.size() > 10) recent.erase(recent.begin());
    const double res = residual(nu, h, e, p);
    if (res < best_res) {
      best_res = res;
      best_h = h;
      best_e = e;
    }
  }
  MinkowskiSolution best = finish(nu, best_h, best_e, p, options.floor);
  best.iterations = it;
  best.converged = best.residual <= options.tolerance;
  return best;
}

namespace {

struct Band {
  Eigen::MatrixXd directions;  // unit, n x N
  Eigen::VectorXd grad_norm;
  Eigen::VectorXd hat;  // triangular weight in |f| - t, integrates to 1
  double delta = 0;
  double cell_volume = 0;
};

Band level_band(const GridFunction& f, double t, double band_factor) {
  const double fmax = f.values.cwiseAbs().maxCoeff();
  if (!(t > 0) || !(t < fmax)) throw Error("domain", "level t must lie in (0, max|f|)");
  const Eigen::MatrixXd g = gradient(f, Stencil::second);
  const Eigen::VectorXd len = g.colwise().norm().transpose();
  Band b;
  b.delta = band_factor * f.grid.cell_diameter() * len.maxCoeff();
  b.cell_volume = f.grid.cell_volume();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double v = std::abs(f.values(i));
    if (std::abs(v - t) < b.delta && len(i) >= 1e-12) keep.push_back(i);
  }
  if (keep.empty()) throw Error("empty", "no cells in the level band");
  b.directions.resize(f.dim(), Eigen::Index(keep.size()));
  b.grad_norm.resize(Eigen::Index(keep.size()));
  b.hat.resize(Eigen::Index(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    b.grad_norm(Eigen::Index(j)) = len(keep[j]);
    b.hat(Eigen::Index(j)) = (1 - std::abs(std::abs(f.values(keep[j])) - t) / b.delta) / b.delta;
    b.directions.col(Eigen::Index(j)) = g.col(keep[j]) / len(keep[j]);
  }
  return b;
}

}  // namespace

SphericalMeasure level_set_measure(const GridFunction& f, double t, double p, double band_factor) {
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  const Band b = level_band(f, t, band_factor);
  const int n = f.dim();
  const auto bins = default_sphere_grid(n);
  const Eigen::Index N = b.directions.cols();
  // Kernel width: wide enough to wash out the lattice directions of the grid.
  const double area = sphere_area(n);
  const double sample_spacing = std::pow(area / N, 1.0 / (n - 1));
  const double bin_spacing = std::pow(area / bins->size(), 1.0 / (n - 1));
  const double sigma = std::max(2 * sample_spacing, (n == 2 ? 4.0 : 1.5) * bin_spacing);
  const Eigen::MatrixXd cosines = bins->nodes.transpose() * b.directions;  // bins x N
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(bins->size());
  for (Eigen::Index j = 0; j < N; ++j) {
    const double mass = std::pow(b.grad_norm(j), p) * b.cell_volume * b.hat(j);
    Eigen::VectorXd k(bins->size());
    for (Eigen::Index i = 0; i < k.size(); ++i) {
      const double angle = std::acos(std::clamp(cosines(i, j), -1.0, 1.0));
      k(i) = angle > 4 * sigma ? 0.0 : std::exp(-0.5 * angle * angle / (sigma * sigma));
    }
    weights += (mass / k.sum()) * k;
  }
  std::vector<Eigen::Index> nz;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (weights(i) > 0) nz.push_back(i);
  Eigen::MatrixXd dirs(n, Eigen::Index(nz.size()));
  Eigen::VectorXd w(Eigen::Index(nz.size()));
  for (std::size_t j = 0; j < nz.size(); ++j) {
    dirs.col(Eigen::Index(j)) = bins->node(nz[j]);
    w(Eigen::Index(j)) = weights(nz[j]);
  }
  return make_measure(dirs, w);
}

MinkowskiSolution asymmetric_convexification(const GridFunction& f, double t, double p) {
  SphericalMeasure nu = level_set_measure(f, t, p);
  if (p == 1.0) {
    // The discrete band leaves a tiny net drift; remove it by reweighting
    // along the drift so the p = 1 problem is solvable.
    const Eigen::VectorXd c = nu.directions * nu.weights;
    if (c.norm() > 0) {
      const Eigen::VectorXd u = c / c.norm();
      Eigen::VectorXd s = (nu.directions.transpose() * u).cwiseMax(0.0);
      const double pos = s.dot(nu.weights);
      for (Eigen::Index i = 0; i < nu.size(); ++i) nu.weights(i) *= 1 - c.norm() * s(i) / pos;
      nu = make_measure(nu.directions, nu.weights);
    }
  }
  return solve_lp_minkowski(nu, p);
}

double polar_projection_volume_ball(int n, double p, const Polytope& Q) {
  const int m = Q.dim;
  const ConvexBody body = projection_body_of_measure(uniform_measure(*default_sphere_grid(n)), Q, p, m,
                                                     default_sphere_grid(n * m));
  return polar_projection_volume(body);
}

LemmaCheck verify_lemma_body(const SphericalMeasure& nu, double p, const Polytope& Q) {
  const int n = nu.dim, m = Q.dim;
  require_not_concentrated(nu);
  LemmaCheck out;
  out.solution = solve_lp_minkowski(nu, p);
  const ConvexBody body = projection_body_of_measure(nu, Q, p, m, default_sphere_grid(n * m));
  out.lhs = polar_projection_volume(body) * std::pow(volume(out.solution.body), -double(m));
  out.rhs = polar_projection_volume_ball(n, p, Q) * std::pow(ball_volume(n), double(n) * m / p - m);
  return out;
}

ConvexificationBound convexification_bound(const GridFunction& f, double t, double p) {
  const int n = f.dim();
  const Band b = level_band(f, t, 2.0);
  // Coarea: int g hat(|f| - t) approximates int_{f = t} g / |grad f|.
  const double boundary = b.hat.sum() * b.cell_volume;
  const MinkowskiSolution K = asymmetric_convexification(f, t, p);
  ConvexificationBound out;
  out.lhs = std::pow(volume(K.body), -p / n);
  out.rhs = std::pow(distribution_function(f, t), p * (n - 1) / n) * std::pow(boundary / n, 1 - p);
  return out;
}

}  // namespace affiq
