#include "affiq/constants.hpp"

#include "affiq/config.hpp"
#include "affiq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace affiq {

double sobolev_constant(int n, double p) {
  if (n < 1 || !(p >= 1) || !(p < n)) throw Error("domain", "a_{n,p} needs 1 <= p < n");
  const double w = ball_volume(n);
  if (p == 1.0) return n * std::pow(w, 1.0 / n);
  const double bracket = w / std::tgamma(double(n)) * std::tgamma(n / p) * std::tgamma(n + 1 - n / p);
  return std::pow(double(n), 1.0 / p) * std::pow((n - p) / (p - 1), (p - 1) / p) * std::pow(bracket, 1.0 / n);
}

double morrey_constant(int n, double p) {
  if (n < 1 || !(p > n)) throw Error("domain", "b_{n,p} needs p > n");
  return std::pow(double(n), -1.0 / p) * std::pow(ball_volume(n), -1.0 / n) *
         std::pow((p - 1) / (p - n), (p - 1) / p);
}

double logsobolev_constant(int n, double p) {
  // p = 2 is the Gaussian log-Sobolev inequality, valid in every dimension.
  if (n < 1 || !(p >= 1) || !(p < n || p == 2.0)) throw Error("domain", "c_{n,p} needs 1 <= p < n or p = 2");
  if (p == 1.0) return std::pow(ball_volume(n), -1.0 / n) / n;
  const double g = std::tgamma(1 + n / 2.0) /
                   (std::pow(std::numbers::pi, n / 2.0) * std::tgamma(1 + n * (p - 1) / p));
  return std::pow(p / n, 1.0 / p) * std::pow((p - 1) / std::numbers::e, 1 - 1.0 / p) * std::pow(g, 1.0 / n);
}

GNParameters gn_parameters(int n, double p, double q) {
  if (!(p > 1) || !(p < n)) throw Error("domain", "Gagliardo-Nirenberg needs 1 < p < n");
  const double qmax = p * (n - 1) / (n - p);
  if (!(q > p) || q > qmax * (1 + 1e-12))
    throw Error("domain", "Gagliardo-Nirenberg needs p < q <= p(n-1)/(n-p)");
  GNParameters g;
  g.n = n;
  g.p = p;
  g.q = q;
  g.r = p * (q - 1) / (p - 1);
  g.delta = n * p - q * (n - p);
  g.theta = n * (q - p) / ((q - 1) * g.delta);
  const double gam = std::tgamma(g.delta * (p - 1) / (p * (q - p))) * std::tgamma(1 + n * (p - 1) / p) /
                     (std::tgamma(q * (p - 1) / (q - p)) * std::tgamma(1 + n / 2.0));
  const double inner = (p * std::sqrt(std::numbers::pi) / (q - p)) * std::pow(n * (q - p) / (p * q), 1.0 / p) *
                       std::pow(gam, 1.0 / n);
  g.alpha = std::pow(p * q / g.delta, 1.0 / g.r) * std::pow(inner, g.theta);
  return g;
}

namespace {

using State = std::array<double, 2>;  // (u, u')

State rhs(double r, const State& s, int n, double lambda) {
  return {s[1], -(n - 1) * s[1] / r - lambda * s[0]};
}

State rk4_step(double r, const State& s, double h, int n, double lambda) {
  auto add = [](const State& a, const State& b, double c) { return State{a[0] + c * b[0], a[1] + c * b[1]}; };
  const State k1 = rhs(r, s, n, lambda);
  const State k2 = rhs(r + h / 2, add(s, k1, h / 2), n, lambda);
  const State k3 = rhs(r + h / 2, add(s, k2, h / 2), n, lambda);
  const State k4 = rhs(r + h, add(s, k3, h), n, lambda);
  return {s[0] + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          s[1] + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

// Integrates from a small r0 (series start) to 1; fills the trajectory when asked.
State shoot(int n, double lambda, int steps, NashProfile* out) {
  const double r0 = 1e-6;
  State s{1 - lambda * r0 * r0 / (2 * n), -lambda * r0 / n};
  const double h = (1 - r0) / steps;
  if (out) {
    out->r.assign(1, 0.0);
    out->u.assign(1, 1.0);
    out->du.assign(1, 0.0);
  }
  for (int i = 0; i < steps; ++i) {
    const double r = r0 + i * h;
    s = rk4_step(r, s, h, n, lambda);
    if (out) {
      out->r.push_back(r + h);
      out->u.push_back(s[0]);
      out->du.push_back(s[1]);
    }
  }
  return s;
}

}  // namespace

double NashProfile::operator()(double radius) const {
  if (radius <= 0) return u.front();
  if (radius >= 1) return u.back();
  const auto it = std::upper_bound(r.begin(), r.end(), radius);
  const std::size_t j = std::size_t(it - r.begin());
  const std::size_t i = j - 1;
  const double h = r[j] - r[i], t = (radius - r[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * u[i] + h10 * h * du[i] + h01 * u[j] + h11 * h * du[j];
}

NashProfile nash_profile(int n, int steps) {
  if (n != 2 && n != 3) throw Error("domain", "Nash constant is implemented for n in {2, 3}");
  if (steps < 100) throw Error("domain", "too few integration steps");
  // u'(1; lambda) < 0 for small lambda; the first sign change is the eigenvalue.
  double lo = 0.5, hi = 0.5;
  double flo = shoot(n, lo, steps, nullptr)[1];
  while (true) {
    hi = lo + 0.5;
    const double fhi = shoot(n, hi, steps, nullptr)[1];
    if ((flo < 0) != (fhi < 0)) break;
    lo = hi;
    flo = fhi;
    if (lo > 200) throw Error("solver", "no Neumann eigenvalue bracket found");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = shoot(n, mid, steps, nullptr)[1];
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  NashProfile prof;
  prof.n = n;
  prof.lambda = 0.5 * (lo + hi);
  shoot(n, prof.lambda, steps, &prof);
  const double half = 1 + n / 2.0;
  prof.beta = std::sqrt(2 * std::pow(half, half) / (n * prof.lambda * std::pow(ball_volume(n), 2.0 / n)));
  return prof;
}

double nash_constant(int n) { return nash_profile(n).beta; }

double moser_trudinger_functional(int n, double a, double b, double gamma) {
  if (!(a > 0) || !(b > 0) || !(gamma >= 0)) throw Error("domain", "bad profile parameters");
  const double np = double(n) / (n - 1);
  // kappa from int_0^a (kappa (1 + t/b)^{-gamma})^n dt = 1.
  const double e = 1 - n * gamma;
  const double base = std::abs(e) < 1e-12 ? b * std::log1p(a / b) : b / e * (std::pow(1 + a / b, e) - 1);
  const double kappa = std::pow(base, -1.0 / n);
  auto phi = [&](double t) {
    const double g = 1 - gamma;
    return std::abs(g) < 1e-12 ? kappa * b * std::log1p(t / b) : kappa * b / g * (std::pow(1 + t / b, g) - 1);
  };
  // Simpson on [0, a] with t concentrated near 0, where phi' is steepest.
  const int steps = 4000;
  double sum = 0;
  const double h = a / steps;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    const double w = (i == 0 || i == steps) ? 1 : (i % 2 ? 4 : 2);
    sum += w * std::exp(std::pow(phi(t), np) - t);
  }
  return sum * h / 3 + std::exp(std::pow(phi(a), np) - a);
}

MoserTrudingerEstimate moser_trudinger_lower_estimate(int n, int sweeps) {
  if (n < 2) throw Error("domain", "Moser-Trudinger needs n >= 2");
  // Parameters in log space: a in [1e-2, 60], b in [1e-3, 1e3], gamma in [0, 3].
  std::array<double, 3> lo{std::log(1e-2), std::log(1e-3), 0.0}, hi{std::log(60.0), std::log(1e3), 3.0};
  std::array<double, 3> x{std::log(2.0), 0.0, 0.5};
  auto J = [&](const std::array<double, 3>& v) {
    return moser_trudinger_functional(n, std::exp(v[0]), std::exp(v[1]), v[2]);
  };
  MoserTrudingerEstimate best;
  double fbest = J(x);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int s = 0; s < sweeps; ++s) {
    for (int k = 0; k < 3; ++k) {
      double a = lo[k], b = hi[k];
      auto at = [&](double v) {
        auto y = x;
        y[k] = v;
        return J(y);
      };
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = at(c), fd = at(d);
      for (int it = 0; it < 40; ++it) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = at(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = at(d);
        }
      }
      const double v = 0.5 * (a + b), fv = at(v);
      if (fv > fbest) {
        fbest = fv;
        x[k] = v;
      }
    }
  }
  best.value = std::max(1.0, fbest);
  best.a = std::exp(x[0]);
  best.b = std::exp(x[1]);
  best.gamma = x[2];
  return best;
}

std::vector<ConstantRow> constants_table(int n, double p) {
  std::vector<ConstantRow> rows;
  auto add = [&](const std::string& name, auto&& f, const std::string& provenance) {
    try {
      rows.push_back({name, f(), provenance});
    } catch (const Error&) {
    }
  };
  add("a_{n,p}", [&] { return sobolev_constant(n, p); }, "CLOSED-FORM");
  add("b_{n,p}", [&] { return morrey_constant(n, p); }, "CLOSED-FORM");
  add("c_{n,p}", [&] { return logsobolev_constant(n, p); }, "CLOSED-FORM");
  if (p > 1 && p < n) {
    const double q = 0.5 * (p + p * (n - 1) / (n - p));
    add("alpha_{n,p}(r,q) q=" + std::to_string(q), [&] { return gn_parameters(n, p, q).alpha; }, "CLOSED-FORM");
  }
  if (n == 2 || n == 3) {
    const NashProfile prof = nash_profile(n);
    rows.push_back({"lambda_n", prof.lambda, "ODE"});
    rows.push_back({"beta_n", prof.beta, "ODE"});
  }
  if (n >= 2) rows.push_back({"m_n", moser_trudinger_lower_estimate(n).value, "ESTIMATE"});
  return rows;
}

}  // namespace affiq
