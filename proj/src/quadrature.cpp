#include "affiq/quadrature.hpp"

#include "affiq/config.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace affiq {

double ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double sphere_area(int d) { return d * ball_volume(d); }

namespace {
thread_local bool inside_worker = false;
}

void parallel_for(Eigen::Index count, const std::function<void(Eigen::Index)>& body) {
  long threads = global_config().get_int("threads");
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<long>(threads, count);
  // Nested calls run serially on the calling worker.
  if (threads <= 1 || inside_worker) {
    for (Eigen::Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const Eigen::Index chunk = (count + threads - 1) / threads;
  for (long t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      inside_worker = true;
      try {
        const Eigen::Index lo = t * chunk, hi = std::min(count, lo + chunk);
        for (Eigen::Index i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

GaussRule gauss_gegenbauer(int points, double a) {
  if (points < 1) throw Error("domain", "gauss rule needs at least one point");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(points);
  Eigen::VectorXd off(std::max(points - 1, 0));
  for (int k = 1; k < points; ++k) {
    const double s = 2.0 * k + 2.0 * a;
    off(k - 1) = std::sqrt(k * (k + 2.0 * a) / (s * s - 1.0));
  }
  const double mass = std::sqrt(std::numbers::pi) * std::tgamma(a + 1.0) / std::tgamma(a + 1.5);
  GaussRule rule;
  if (points == 1) {
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Constant(1, mass);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  rule.nodes = solver.eigenvalues();
  rule.weights = mass * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

namespace {

SphereGrid circle_grid(int count) {
  SphereGrid g;
  g.dim = 2;
  g.uniform_circle = true;
  g.nodes.resize(2, count);
  for (int i = 0; i < count; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / count;
    g.nodes(0, i) = std::cos(phi);
    g.nodes(1, i) = std::sin(phi);
  }
  g.weights = Eigen::VectorXd::Constant(count, 2.0 * std::numbers::pi / count);
  return g;
}

// Hyperspherical coordinates: x1 = t1, x2 = s1 t2, ..., x_{d-1} = s1..s_{d-2} cos(phi),
// x_d = s1..s_{d-2} sin(phi), with s_k = sqrt(1 - t_k^2). Level k carries the
// weight (1 - t^2)^{(d-2-k)/2}.
SphereGrid product_grid(int d, int resolution) {
  if (d == 2) return circle_grid(resolution);
  const int polar = std::max(2, int(std::lround(std::pow(resolution / 2.0, 1.0 / (d - 1)))));
  const int azimuth =
      std::max(3, int(std::lround(resolution / std::pow(double(polar), d - 2))));
  std::vector<GaussRule> levels;
  for (int k = 1; k <= d - 2; ++k) levels.push_back(gauss_gegenbauer(polar, 0.5 * (d - 2 - k)));

  Eigen::Index total = azimuth;
  for (int k = 0; k < d - 2; ++k) total *= polar;
  SphereGrid g;
  g.dim = d;
  g.nodes.resize(d, total);
  g.weights.resize(total);
  std::vector<int> idx(d - 2, 0);
  Eigen::Index col = 0;
  for (Eigen::Index flat = 0; flat < total / azimuth; ++flat) {
    Eigen::Index rem = flat;
    for (int k = d - 3; k >= 0; --k) {
      idx[k] = int(rem % polar);
      rem /= polar;
    }
    double scale = 1.0, w = 2.0 * std::numbers::pi / azimuth;
    Eigen::VectorXd x(d);
    for (int k = 0; k < d - 2; ++k) {
      const double t = levels[k].nodes(idx[k]);
      x(k) = scale * t;
      scale *= std::sqrt(std::max(0.0, 1.0 - t * t));
      w *= levels[k].weights(idx[k]);
    }
    for (int a = 0; a < azimuth; ++a) {
      const double phi = 2.0 * std::numbers::pi * (a + 0.5) / azimuth;
      x(d - 2) = scale * std::cos(phi);
      x(d - 1) = scale * std::sin(phi);
      g.nodes.col(col) = x / x.norm();
      g.weights(col) = w;
      ++col;
    }
  }
  return g;
}

double inverse_normal_cdf(double u) {
  // Abramowitz-Stegun 26.2.23 start, then Newton on the exact CDF.
  const double q = std::min(u, 1.0 - u);
  const double t = std::sqrt(-2.0 * std::log(q));
  double z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                     (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
  if (u < 0.5) z = -z;
  for (int it = 0; it < 4; ++it) {
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    z -= (cdf - u) / pdf;
  }
  return z;
}

// R_d Kronecker lattice, Gaussian-quantile mapped and normalised, closed under
// cyclic coordinate shifts and antipodes so second moments are exact.
SphereGrid low_discrepancy_grid(int d, int resolution) {
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
  Eigen::VectorXd alpha(d);
  for (int j = 0; j < d; ++j) alpha(j) = std::fmod(std::pow(1.0 / phi, j + 1), 1.0);

  const int base = std::max(1, (resolution + 2 * d - 1) / (2 * d));
  const Eigen::Index total = Eigen::Index(base) * 2 * d;
  SphereGrid g;
  g.dim = d;
  g.nodes.resize(d, total);
  g.weights = Eigen::VectorXd::Constant(total, sphere_area(d) / double(total));
  constexpr double seed_offset = 0.5;
  Eigen::Index col = 0;
  for (int k = 1; k <= base; ++k) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) {
      double u = std::fmod(seed_offset + k * alpha(j), 1.0);
      u = std::clamp(u, 1e-12, 1.0 - 1e-12);
      x(j) = inverse_normal_cdf(u);
    }
    x /= x.norm();
    for (int shift = 0; shift < d; ++shift) {
      Eigen::VectorXd y(d);
      for (int j = 0; j < d; ++j) y((j + shift) % d) = x(j);
      g.nodes.col(col++) = y;
      g.nodes.col(col++) = -y;
    }
  }
  return g;
}

}  // namespace

Eigen::Index SphereGrid::nearest(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  if (uniform_circle) {
    const Eigen::Index count = size();
    double angle = std::atan2(u(1), u(0));
    if (angle < 0) angle += 2.0 * std::numbers::pi;
    return Eigen::Index(std::lround(angle * count / (2.0 * std::numbers::pi))) % count;
  }
  Eigen::Index best = 0;
  (nodes.transpose() * u).maxCoeff(&best);
  return best;
}

SphereGrid sphere_grid(int d, int resolution, SphereScheme scheme) {
  if (d < 2) throw Error("domain", "sphere grid needs d >= 2, got " + std::to_string(d));
  if (resolution < 16)
    throw Error("domain", "sphere grid resolution must be >= 16, got " + std::to_string(resolution));
  return scheme == SphereScheme::product ? product_grid(d, resolution)
                                         : low_discrepancy_grid(d, resolution);
}

SphereScheme default_scheme(int d) {
  return d <= 4 ? SphereScheme::product : SphereScheme::low_discrepancy;
}

SphereGridPtr shared_sphere_grid(int d, int resolution, SphereScheme scheme) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, SphereGridPtr> cache;
  const auto key = std::make_tuple(d, resolution, int(scheme));
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto grid = std::make_shared<const SphereGrid>(sphere_grid(d, resolution, scheme));
  cache.emplace(key, grid);
  return grid;
}

SphereGridPtr default_sphere_grid(int d) {
  return shared_sphere_grid(d, global_config().sphere_resolution(d), default_scheme(d));
}

double integrate_sphere(const SphereGrid& grid, const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() != grid.size())
    throw Error("domain", "value count does not match sphere grid size");
  Eigen::VectorXd terms(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(values(i)))
      throw Error("nonfinite", "integrand is not finite at sphere node " + std::to_string(i));
    terms(i) = grid.weights(i) * values(i);
  }
  return pairwise_sum(std::span<const double>(terms.data(), std::size_t(terms.size())));
}

double integrate_sphere(const SphereGrid& grid,
                        const std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>& g) {
  Eigen::VectorXd values(grid.size());
  parallel_for(grid.size(), [&](Eigen::Index i) { values(i) = g(grid.nodes.col(i)); });
  return integrate_sphere(grid, values);
}

BoxGrid::BoxGrid(int n, double halfwidth, int cells)
    : dim_(n), halfwidth_(halfwidth), cells_(cells), size_(1) {
  if (n < 1 || n > 3) throw Error("domain", "box grid dimension must be 1, 2 or 3");
  if (!(halfwidth > 0)) throw Error("domain", "box grid halfwidth must be positive");
  if (cells % 2 == 0) throw Error("domain", "box grid needs an odd cell count so the origin is a node");
  if (cells < 33) throw Error("domain", "box grid needs at least 33 cells per axis");
  for (int k = 0; k < n; ++k) size_ *= cells;
}

BoxGrid box_grid(int n, double halfwidth, int cells) { return BoxGrid(n, halfwidth, cells); }

std::array<int, 3> BoxGrid::unravel(Eigen::Index index) const {
  std::array<int, 3> ijk{0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    ijk[k] = int(index % cells_);
    index /= cells_;
  }
  return ijk;
}

Eigen::Index BoxGrid::ravel(const std::array<int, 3>& ijk) const {
  Eigen::Index index = 0;
  for (int k = dim_ - 1; k >= 0; --k) index = index * cells_ + ijk[k];
  return index;
}

Eigen::VectorXd BoxGrid::center(Eigen::Index index) const {
  const auto ijk = unravel(index);
  Eigen::VectorXd x(dim_);
  for (int k = 0; k < dim_; ++k) x(k) = coordinate(ijk[k]);
  return x;
}

Eigen::MatrixXd BoxGrid::centers() const {
  Eigen::MatrixXd x(dim_, size_);
  for (Eigen::Index i = 0; i < size_; ++i) x.col(i) = center(i);
  return x;
}

}  // namespace affiq
