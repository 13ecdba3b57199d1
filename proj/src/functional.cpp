#include "affiq/functional.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace affiq {

GridFunction sample(const BoxGrid& grid, const PointFunction& f) {
  GridFunction out{grid, Eigen::VectorXd(grid.size())};
  parallel_for(grid.size(), [&](Eigen::Index i) { out.values(i) = f(grid.center(i)); });
  if (!out.values.allFinite()) throw Error("domain", "sampled function is not finite");
  return out;
}

bool has_compact_support(const GridFunction& f) {
  const int c = f.grid.cells();
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (f.values(i) == 0) continue;
    const auto ijk = f.grid.unravel(i);
    for (int a = 0; a < f.dim(); ++a)
      if (ijk[a] < 2 || ijk[a] > c - 3) return false;
  }
  return true;
}

void require_compact_support(const GridFunction& f) {
  if (!has_compact_support(f)) throw Error("support", "function support reaches the box margin");
}

Eigen::MatrixXd gradient(const GridFunction& f, Stencil stencil) {
  const int n = f.dim(), c = f.grid.cells();
  const double h = f.grid.spacing();
  Eigen::MatrixXd g(n, f.size());
  parallel_for(f.size(), [&](Eigen::Index i) {
    const auto ijk = f.grid.unravel(i);
    auto at = [&](int a, int shift) {
      auto idx = ijk;
      idx[a] += shift;
      return f.values(f.grid.ravel(idx));
    };
    for (int a = 0; a < n; ++a) {
      const int k = ijk[a];
      if (stencil == Stencil::fourth && k >= 2 && k <= c - 3)
        g(a, i) = (8.0 * (at(a, 1) - at(a, -1)) - (at(a, 2) - at(a, -2))) / (12.0 * h);
      else if (k >= 1 && k <= c - 2)
        g(a, i) = (at(a, 1) - at(a, -1)) / (2.0 * h);
      else if (k == 0)
        g(a, i) = (at(a, 1) - at(a, 0)) / h;
      else
        g(a, i) = (at(a, 0) - at(a, -1)) / h;
    }
  });
  return g;
}

double lp_norm(const GridFunction& f, double p) {
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  if (!(p > 0)) throw Error("domain", "norm exponent must be positive");
  const Eigen::VectorXd v = f.values.cwiseAbs().array().pow(p).matrix();
  return std::pow(pairwise_sum(v) * f.grid.cell_volume(), 1.0 / p);
}

double dirichlet_norm(const Eigen::MatrixXd& grad, double cell_volume, double p) {
  const Eigen::VectorXd len = grad.colwise().norm().transpose();
  if (std::isinf(p)) return len.maxCoeff();
  const Eigen::VectorXd v = len.array().pow(p).matrix();
  return std::pow(pairwise_sum(v) * cell_volume, 1.0 / p);
}

double dirichlet_norm(const GridFunction& f, double p, Stencil stencil) {
  return dirichlet_norm(gradient(f, stencil), f.grid.cell_volume(), p);
}

double support_volume(const GridFunction& f) {
  return double((f.values.array() != 0).count()) * f.grid.cell_volume();
}

double distribution_function(const GridFunction& f, double t) {
  return double((f.values.array().abs() > t).count()) * f.grid.cell_volume();
}

namespace {

GridFunction rearrange_by_key(const GridFunction& f, const Eigen::VectorXd& key) {
  const Eigen::Index N = f.size();
  std::vector<Eigen::Index> cells(N);
  std::iota(cells.begin(), cells.end(), 0);
  std::stable_sort(cells.begin(), cells.end(), [&](Eigen::Index a, Eigen::Index b) { return key(a) < key(b); });
  std::vector<double> sorted(f.values.data(), f.values.data() + N);
  for (double& v : sorted) v = std::abs(v);
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
  GridFunction out{f.grid, Eigen::VectorXd::Zero(N)};
  for (Eigen::Index k = 0; k < N; ++k) out.values(cells[k]) = sorted[k];
  return out;
}

}  // namespace

GridFunction schwarz_rearrangement(const GridFunction& f) {
  const Eigen::VectorXd key = f.grid.centers().colwise().squaredNorm().transpose();
  return rearrange_by_key(f, key);
}

GridFunction convex_rearrangement(const GridFunction& f, const ConvexBody& K) {
  if (K.dim() != f.dim()) throw Error("domain", "body and function dimensions differ");
  const Eigen::MatrixXd x = f.grid.centers();
  Eigen::VectorXd key(f.size());
  parallel_for(f.size(), [&](Eigen::Index i) { key(i) = minkowski_functional(K, x.col(i)); });
  return rearrange_by_key(f, key);
}

GradientSample gradient_sample(const GridFunction& f, Stencil stencil) {
  const Eigen::MatrixXd g = gradient(f, stencil);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < g.cols(); ++i)
    if (g.col(i).norm() >= 1e-12) keep.push_back(i);
  GradientSample s;
  s.cell_volume = f.grid.cell_volume();
  s.vectors.resize(g.rows(), Eigen::Index(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) s.vectors.col(Eigen::Index(j)) = g.col(keep[j]);
  if (keep.empty()) throw Error("constant", "function is constant (zero gradient everywhere)");
  return s;
}

ConvexBody lyz_body(const GradientSample& g, const Polytope& Q, double p, int m, SphereGridPtr grid) {
  if (!(p >= 1)) throw Error("domain", "p must be >= 1");
  if (Q.dim != m) throw Error("domain", "Q must live in R^m");
  const Eigen::Index n = g.vectors.rows();
  if (grid->dim != n * m) throw Error("domain", "grid must be on S^{nm-1}");
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(g.vectors.cols(), g.cell_volume);
  const Eigen::VectorXd hp = cosine_transform_nodes(g.vectors, w, Q, p, grid->nodes);
  Eigen::VectorXd h = hp.array().pow(1.0 / p).matrix();
  if (h.minCoeff() < 1e-10)
    throw Error("degenerate", "LYZ support function vanishes; positivity requires a non-constant f");
  return sampled_body(std::move(grid), std::move(h));
}

ConvexBody lyz_body(const GridFunction& f, const Polytope& Q, double p, int m, SphereGridPtr grid) {
  return lyz_body(gradient_sample(f), Q, p, m, std::move(grid));
}

GradientSample isotropic_position(const GradientSample& g) {
  const Eigen::Index n = g.vectors.rows();
  const Eigen::MatrixXd M = g.vectors * g.vectors.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  if (eig.eigenvalues().minCoeff() <= 0) return g;
  const Eigen::VectorXd ev = eig.eigenvalues();
  const double scale = std::exp(ev.array().log().sum() / (2.0 * n));
  const Eigen::MatrixXd T =
      eig.eigenvectors() * (scale * ev.array().rsqrt()).matrix().asDiagonal() * eig.eigenvectors().transpose();
  return GradientSample{T * g.vectors, g.cell_volume};
}

double energy(const GradientSample& raw, const Polytope& Q, double p) {
  const GradientSample g = isotropic_position(raw);
  const int n = int(g.vectors.rows()), m = Q.dim;
  const double nm = double(n) * m;
  const ConvexBody body = lyz_body(g, Q, p, m, default_sphere_grid(n * m));
  return dnp_constant(n, m, p, Q) * std::pow(nm * polar_projection_volume(body), -1.0 / nm);
}

double energy(const GridFunction& f, const Polytope& Q, double p) { return energy(gradient_sample(f), Q, p); }

double energy_direct(const GridFunction& f, const Polytope& Q, double p, const SphereGrid& grid) {
  const GradientSample g = gradient_sample(f);
  const int n = f.dim(), m = Q.dim;
  if (grid.dim != n * m) throw Error("domain", "grid must be on S^{nm-1}");
  const double nm = double(n) * m;
  Eigen::VectorXd inner(grid.size());
  parallel_for(grid.size(), [&](Eigen::Index t) {
    const Eigen::MatrixXd images = grid.node(t).reshaped(n, m) * Q.vertices;  // n x k
    const Eigen::MatrixXd s = g.vectors.transpose() * images;                 // N x k
    Eigen::VectorXd terms(s.rows());
    for (Eigen::Index j = 0; j < s.rows(); ++j) terms(j) = std::pow(std::max(0.0, s.row(j).maxCoeff()), p);
    inner(t) = std::pow(pairwise_sum(terms) * g.cell_volume, -nm / p);
  });
  return dnp_constant(n, m, p, Q) * std::pow(integrate_sphere(grid, inner), -1.0 / nm);
}

namespace {

// sup_cells h_Q(grad f^t theta) at every node, or the inner L^q norm when q is finite.
Eigen::VectorXd inner_norms(const GradientSample& g, const Polytope& Q, double q, const SphereGrid& grid) {
  const int n = int(g.vectors.rows()), m = Q.dim;
  Eigen::VectorXd out(grid.size());
  parallel_for(grid.size(), [&](Eigen::Index t) {
    const Eigen::MatrixXd images = grid.node(t).reshaped(n, m) * Q.vertices;
    const Eigen::VectorXd hq = (g.vectors.transpose() * images).rowwise().maxCoeff().cwiseMax(0.0);
    out(t) = std::isinf(q) ? hq.maxCoeff()
                           : std::pow(pairwise_sum(Eigen::VectorXd(hq.array().pow(q))) * g.cell_volume, 1.0 / q);
  });
  return out;
}

}  // namespace

namespace {

// Gradients of cells whose axis neighbours carry nearly the same gradient.
// Near a kink (cone apex, support rim) central differences mix gradients from
// both sides and can leave the true gradient set, which spoils a supremum.
GradientSample regular_gradient_sample(const GridFunction& f, double tau) {
  const Eigen::MatrixXd g = gradient(f, Stencil::second);
  const int n = f.dim(), cells = f.grid.cells();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < g.cols(); ++i) {
    const double len = g.col(i).norm();
    if (len < 1e-12) continue;
    const auto ijk = f.grid.unravel(i);
    bool regular = true;
    for (int a = 0; a < n && regular; ++a)
      for (int step : {-1, 1}) {
        auto nb = ijk;
        nb[a] += step;
        if (nb[a] < 0 || nb[a] >= cells) continue;
        if ((g.col(f.grid.ravel(nb)) - g.col(i)).norm() > tau * len) {
          regular = false;
          break;
        }
      }
    if (regular) keep.push_back(i);
  }
  if (keep.empty()) throw Error("constant", "no cell with a regular nonzero gradient");
  GradientSample s;
  s.cell_volume = f.grid.cell_volume();
  s.vectors.resize(n, Eigen::Index(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) s.vectors.col(Eigen::Index(j)) = g.col(keep[j]);
  return s;
}

}  // namespace

double energy_infty(const GridFunction& f, const Polytope& Q) {
  const GradientSample g = isotropic_position(regular_gradient_sample(f, 0.1));
  const int n = f.dim(), m = Q.dim;
  const double nm = double(n) * m;
  const auto grid = default_sphere_grid(n * m);
  const Eigen::VectorXd inner = inner_norms(g, Q, INFINITY, *grid);
  if (inner.minCoeff() < 1e-10) throw Error("degenerate", "sup of h_Q(grad f^t theta) vanishes");
  const Eigen::VectorXd values = inner.array().pow(-nm).matrix();
  return dnp_constant_infinity(n, m, Q) * std::pow(integrate_sphere(*grid, values), -1.0 / nm);
}

double energy_q_inner(const GridFunction& f, const Polytope& Q, double q) {
  const GradientSample g = isotropic_position(gradient_sample(f));
  const int n = f.dim(), m = Q.dim;
  const double nm = double(n) * m;
  const auto grid = default_sphere_grid(n * m);
  const Eigen::VectorXd values = inner_norms(g, Q, q, *grid).array().pow(-nm).matrix();
  return dnp_constant(n, m, q, Q) * std::pow(integrate_sphere(*grid, values), -1.0 / nm);
}

double anisotropic_norm(const GridFunction& f, const ConvexBody& K, double p) {
  const Eigen::MatrixXd g = gradient(f);
  Eigen::VectorXd terms(g.cols());
  parallel_for(g.cols(), [&](Eigen::Index i) {
    terms(i) = g.col(i).norm() < 1e-12 ? 0.0 : std::pow(support(K, g.col(i)), p);
  });
  return std::pow(pairwise_sum(terms) * f.grid.cell_volume(), 1.0 / p);
}

CentroidEnergy centroid_energy(const GridFunction& f, const Polytope& Q, double p) {
  const GradientSample g = gradient_sample(f);
  const int n = f.dim(), m = Q.dim;
  const double nm = double(n) * m;
  const ConvexBody lyz = lyz_body(g, Q, p, m, default_sphere_grid(n * m));
  const RadialSample L = polar_radial(lyz);
  const double vol_l = volume(L);
  const ConvexBody G = centroid_body(L, Q, p, default_sphere_grid(n));
  Eigen::VectorXd terms(g.vectors.cols());
  for (Eigen::Index i = 0; i < terms.size(); ++i) terms(i) = std::pow(support(G, g.vectors.col(i)), p);
  const double integral = pairwise_sum(terms) * g.cell_volume;
  CentroidEnergy out;
  out.centroid_volume = volume(G);
  out.energy = dnp_constant(n, m, p, Q) * std::pow(vol_l * (nm + p) * integral, -1.0 / nm);
  out.lower_bound = std::pow(ball_volume(n) / out.centroid_volume, 1.0 / n) * std::pow(integral, 1.0 / p);
  return out;
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write '" + path + "'");
  char buf[32];
  out << "x";
  for (int k = 0; k < f.grid.cells(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", f.grid.coordinate(k));
    out << ',' << buf;
  }
  out << '\n';
  const int c = f.grid.cells();
  for (Eigen::Index i = 0; i < f.size(); i += c) {
    for (int k = 0; k < c; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", f.values(i + k));
      out << (k ? "," : "") << buf;
    }
    out << '\n';
  }
}

GridFunction read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open '" + path + "'");
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw Error("parse", "empty grid file");
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "x") throw Error("parse", "grid file must start with an x header");
  std::vector<double> coords;
  for (std::size_t k = 1; k < header.size(); ++k) coords.push_back(std::stod(header[k]));
  const int c = int(coords.size());
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = split(line);
    if (int(row.size()) != c) throw Error("parse", "grid row has wrong length");
    for (const auto& s : row) values.push_back(std::stod(s));
  }
  int n = 0;
  for (long total = 1; total < long(values.size()); total *= c) ++n;
  if (n < 1 || std::pow(double(c), n) != double(values.size()))
    throw Error("parse", "value count is not a power of the axis length");
  const double h = coords[1] - coords[0];
  BoxGrid grid(n, -coords[0] + 0.5 * h, c);
  return GridFunction{grid, Eigen::Map<Eigen::VectorXd>(values.data(), Eigen::Index(values.size()))};
}

}  // namespace affiq
