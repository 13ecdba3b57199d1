#pragma once

#include <functional>
#include <string>
#include <vector>

namespace affiq {

/// a_{n,p}, 1 <= p < n; p = 1 is the closed-form limit n omega_n^{1/n}.
double sobolev_constant(int n, double p);
/// b_{n,p}, p > n.
double morrey_constant(int n, double p);
/// c_{n,p}, 1 <= p < n or p = 2; p = 1 is the limit omega_n^{-1/n} / n.
double logsobolev_constant(int n, double p);

struct GNParameters {
  int n = 0;
  double p = 0, q = 0;
  double r = 0;      ///< p (q - 1) / (p - 1)
  double theta = 0;  ///< n (q - p) / ((q - 1)(np - (n - p) q))
  double delta = 0;  ///< np - q (n - p)
  double alpha = 0;  ///< alpha_{n,p}(r, q)
};
/// Requires 1 < p < n and p < q <= p (n - 1) / (n - p).
GNParameters gn_parameters(int n, double p, double q);

/// Radial Neumann eigenpair on the unit ball: u'' + (n-1) u'/r + lambda u = 0,
/// u(0) = 1, u'(0) = u'(1) = 0, lambda the first positive eigenvalue.
struct NashProfile {
  int n = 0;
  double lambda = 0;
  double beta = 0;  ///< beta_n
  std::vector<double> r, u, du;

  /// u(r) on [0, 1] by cubic Hermite interpolation.
  double operator()(double radius) const;
};
/// Shooting with RK4 on `steps` uniform steps and bisection on lambda. n in {2, 3}.
NashProfile nash_profile(int n, int steps = 4000);
double nash_constant(int n);

/// Lower estimate of m_n over phi' = kappa (1 + t/b)^{-gamma} on [0, a],
/// normalised by int phi'^n = 1, plus phi = 0. Never used as a threshold.
struct MoserTrudingerEstimate {
  double value = 1;
  double a = 0, b = 0, gamma = 0;
};
MoserTrudingerEstimate moser_trudinger_lower_estimate(int n, int sweeps = 6);
/// J(phi) for one member of the family above.
double moser_trudinger_functional(int n, double a, double b, double gamma);

/// One row of the constants table.
struct ConstantRow {
  std::string name;
  double value;
  std::string provenance;  ///< CLOSED-FORM, ODE or ESTIMATE
};
std::vector<ConstantRow> constants_table(int n, double p);

}  // namespace affiq
