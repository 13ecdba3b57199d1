#pragma once

#include "affiq/projection.hpp"

#include <functional>
#include <string>

namespace affiq {

/// Scalar field sampled at the cell centres of a BoxGrid.
struct GridFunction {
  BoxGrid grid;
  Eigen::VectorXd values;

  int dim() const { return grid.dim(); }
  Eigen::Index size() const { return values.size(); }
};

using PointFunction = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

GridFunction sample(const BoxGrid& grid, const PointFunction& f);
/// True when f vanishes on the two outermost cell layers.
bool has_compact_support(const GridFunction& f);
/// Throws "support" unless has_compact_support(f).
void require_compact_support(const GridFunction& f);

/// Central difference order. The fourth-order stencil falls back to second
/// order next to the box boundary; sup-norm quantities use second order,
/// which does not overshoot at kinks.
enum class Stencil { second, fourth };

/// Central differences, one-sided on the box boundary. n x N.
Eigen::MatrixXd gradient(const GridFunction& f, Stencil stencil = Stencil::fourth);

/// (sum |f|^p cellvol)^{1/p}; p = infinity gives max |f|.
double lp_norm(const GridFunction& f, double p);
/// ||grad f||_p.
double dirichlet_norm(const GridFunction& f, double p, Stencil stencil = Stencil::fourth);
double dirichlet_norm(const Eigen::MatrixXd& grad, double cell_volume, double p);
/// vol{|f| > 0}.
double support_volume(const GridFunction& f);
/// mu_f(t) = vol{|f| > t}.
double distribution_function(const GridFunction& f, double t);

/// f*(x) = f*(omega_n |x|^n): sorted |f| assigned to cells in order of |x|.
GridFunction schwarz_rearrangement(const GridFunction& f);
/// f^K: sorted |f| assigned to cells in order of ||x||_K.
GridFunction convex_rearrangement(const GridFunction& f, const ConvexBody& K);

/// Gradients with |grad f| >= 1e-12 and their cell weight.
struct GradientSample {
  Eigen::MatrixXd vectors;  ///< n x N
  double cell_volume = 0;
};
GradientSample gradient_sample(const GridFunction& f, Stencil stencil = Stencil::fourth);

/// LYZ body: h(theta)^p = sum_cells h_Q(grad f^t theta)^p cellvol.
/// Throws "degenerate" (positivity lemma) when some h < 1e-10.
ConvexBody lyz_body(const GridFunction& f, const Polytope& Q, double p, int m, SphereGridPtr grid);
ConvexBody lyz_body(const GradientSample& g, const Polytope& Q, double p, int m, SphereGridPtr grid);

/// Gradients mapped by the unique positive definite T with det T = 1 that makes
/// sum g g^t a multiple of the identity. E_p and E_inf are unchanged by this
/// SL(n) change of variables; it keeps the sphere integrands round.
GradientSample isotropic_position(const GradientSample& g);

/// E_p(Q, f) = d_{n,p}(Q) (nm vol(polar LYZ body))^{-1/nm}, default grids.
double energy(const GridFunction& f, const Polytope& Q, double p);
double energy(const GradientSample& g, const Polytope& Q, double p);
/// E_p from the defining theta-integral, evaluated node by node on `grid`.
double energy_direct(const GridFunction& f, const Polytope& Q, double p, const SphereGrid& grid);
/// E_inf(Q, f) with the exact limit constant d_{n,inf}(Q). The supremum runs
/// over cells whose gradient agrees with all axis neighbours to 10%.
double energy_infty(const GridFunction& f, const Polytope& Q);
/// Inner L^q norm version of E used to watch E_q approach E_inf.
double energy_q_inner(const GridFunction& f, const Polytope& Q, double q);

/// The energy through the centroid body of the polar LYZ body.
struct CentroidEnergy {
  double energy = 0;       ///< d (vol(L)(nm+p) int h_G(grad f)^p)^{-1/nm}
  double lower_bound = 0;  ///< (omega_n / vol G)^{1/n} (int h_G(grad f)^p)^{1/p}
  double centroid_volume = 0;
};
CentroidEnergy centroid_energy(const GridFunction& f, const Polytope& Q, double p);

/// (int h_K(grad f)^p)^{1/p}.
double anisotropic_norm(const GridFunction& f, const ConvexBody& K, double p);

/// CSV: first line "x0,<coords>" with axis coordinates, then values in cell
/// order (i0 fastest), one per line.
void write_csv(const GridFunction& f, const std::string& path);
GridFunction read_csv(const std::string& path);

}  // namespace affiq
