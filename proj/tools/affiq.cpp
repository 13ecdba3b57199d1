#include "affiq/constants.hpp"
#include "affiq/covariogram.hpp"
#include "affiq/minkowski.hpp"
#include "affiq/report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace affiq;

namespace {

// "x,y;x,y;..." -> 2 x k (or d x k).
Eigen::MatrixXd parse_columns(const std::string& text) {
  std::vector<std::vector<double>> cols;
  std::stringstream outer(text);
  std::string item;
  while (std::getline(outer, item, ';')) {
    std::vector<double> col;
    std::stringstream inner(item);
    std::string v;
    while (std::getline(inner, v, ',')) col.push_back(std::stod(v));
    if (!cols.empty() && col.size() != cols.front().size()) throw Error("parse", "ragged coordinate list");
    cols.push_back(col);
  }
  if (cols.empty() || cols.front().empty()) throw Error("parse", "empty coordinate list");
  Eigen::MatrixXd m(Eigen::Index(cols.front().size()), Eigen::Index(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(Eigen::Index(i), Eigen::Index(j)) = cols[j][i];
  return m;
}

Eigen::VectorXd parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) v.push_back(std::stod(item));
  return Eigen::Map<Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

Eigen::MatrixXd parse_matrix(const std::string& text, int n) {
  const Eigen::VectorXd v = parse_list(text);
  if (v.size() != n * n) throw Error("parse", "matrix needs n*n entries, row-major");
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = v(i * n + j);
  return A;
}

void print(const char* name, double value) { std::printf("%-24s %.9g\n", name, value); }

struct EnergyArgs {
  std::string function = "cone", Q = "segment", matrix, csv, save;
  int n = 2, cells = 0;
  double p = 2, q = 0;
  std::uint64_t seed = 0;
};

GridFunction build_energy_function(const EnergyArgs& a) {
  if (!a.csv.empty()) return read_csv(a.csv);
  const Eigen::MatrixXd A = a.matrix.empty() ? Eigen::MatrixXd() : parse_matrix(a.matrix, a.n);
  if (a.function == "random") return sample_composed(random_test_function(a.n, a.seed), A, {}, a.cells);
  ExtremalParams prm;
  prm.n = a.n;
  prm.p = a.p;
  prm.q = a.q;
  prm.cells = a.cells;
  prm.A = A;
  const ExtremalKind kind = parse_extremal(a.function);
  if (kind == ExtremalKind::gn) prm.cutoff = 1e-3;
  return make_extremal(kind, prm);
}

int run_energy(const EnergyArgs& a) {
  const GridFunction f = build_energy_function(a);
  if (!a.save.empty()) write_csv(f, a.save);
  const Polytope Q = q_preset(a.Q);
  std::printf("function %s  n=%d  m=%d  Q=%s  cells=%d\n", a.csv.empty() ? a.function.c_str() : a.csv.c_str(), f.dim(),
              Q.dim, a.Q.c_str(), f.grid.cells());
  if (std::isinf(a.p)) {
    print("E_inf", energy_infty(f, Q));
    print("||grad f||_inf", dirichlet_norm(f, INFINITY, Stencil::second));
  } else {
    print("E_p", energy(f, Q, a.p));
    print("||grad f||_p", dirichlet_norm(f, a.p));
    print("E_p(f*)", energy(schwarz_rearrangement(f), Q, a.p));
  }
  print("||f||_inf", lp_norm(f, INFINITY));
  print("vol(supp f)", support_volume(f));
  return 0;
}

int run_body(const std::string& literal, const std::string& qname, double p) {
  const ConvexBody K = parse_body(literal);
  const Polytope Q = q_preset(qname);
  std::printf("%s\n", format_body(K).c_str());
  print("vol(K)", volume(K));
  print("Petty quantity", petty_quantity(K, Q, p));
  if (K.dim() == 2) print("Petty (ball)", petty_quantity(unit_ball(2), Q, p));
  return 0;
}

Polytope shape(const std::string& name) {
  if (name == "triangle") {
    Eigen::MatrixXd v(2, 3);
    v << 0, 1, 0, 0, 0, 1;
    return make_polytope(v);
  }
  if (name == "square") return cube(2, 0.5).polytope();
  if (name == "disk") return regular_polygon(720).polytope();
  return make_polytope(parse_columns(name));
}

int run_schneider(const std::string& name, int m, const std::string& optimize, int budget, std::uint64_t seed) {
  if (!optimize.empty()) {
    if (optimize != "max" && optimize != "min") throw Error("parse", "--optimize takes max or min");
    const RatioSearch r = optimize_ratio(PolygonFamily::polygons, 2, m, optimize == "max" ? Sense::max : Sense::min,
                                         budget, seed);
    print("ratio", r.ratio);
    print("evaluations", r.evaluations);
    std::printf("%s\n", format_body(ConvexBody(r.body)).c_str());
    return 0;
  }
  print("ratio", schneider_ratio(shape(name), m));
  return 0;
}

int run_minkowski(const std::string& directions, const std::string& weights, double p) {
  Eigen::MatrixXd d = parse_columns(directions);
  for (Eigen::Index j = 0; j < d.cols(); ++j) d.col(j).normalize();
  const Eigen::VectorXd w = weights.empty() ? Eigen::VectorXd::Ones(d.cols()) : parse_list(weights);
  const MinkowskiSolution s = solve_lp_minkowski(make_measure(d, w), p);
  std::printf("%s\n", format_body(s.body).c_str());
  print("volume", volume(s.body));
  print("residual", s.residual);
  print("iterations", s.iterations);
  std::printf("%-24s %s\n", "converged", s.converged ? "yes" : "no");
  return s.converged ? 0 : 1;
}

int run_constants(int n, double p) {
  std::printf("%-28s %-18s %s\n", "constant", "value", "provenance");
  for (const ConstantRow& r : constants_table(n, p)) std::printf("%-28s %-18.10g %s\n", r.name.c_str(), r.value, r.provenance.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affiq: affine Sobolev energies, bodies and inequality suites"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file (overrides AFFIQ_CONFIG)");

  EnergyArgs ea;
  auto* energy_cmd = app.add_subcommand("energy", "E_p(Q, f) for an extremal, a random test function or a CSV grid");
  energy_cmd->add_option("--function", ea.function, "cone, bump, morrey, log-sobolev, gn, nash or random");
  energy_cmd->add_option("--csv", ea.csv, "read the grid function from CSV instead");
  energy_cmd->add_option("--save", ea.save, "write the sampled grid function as CSV");
  energy_cmd->add_option("--n", ea.n, "dimension");
  energy_cmd->add_option("--p", ea.p, "exponent (inf for E_inf)");
  energy_cmd->add_option("--q", ea.q, "GN exponent q");
  energy_cmd->add_option("--Q", ea.Q, "Q preset");
  energy_cmd->add_option("--seed", ea.seed, "seed for random");
  energy_cmd->add_option("--cells", ea.cells, "cells per axis");
  energy_cmd->add_option("--A", ea.matrix, "row-major matrix composed inside f");

  std::string body_literal, body_q = "segment";
  double body_p = 1;
  auto* body_cmd = app.add_subcommand("body", "Projection-body quantities of a body literal");
  body_cmd->add_option("literal", body_literal, "e.g. 'polytope n=2 v=(-1,-1);(2,-1);(-1,2)', origin inside")->required();
  body_cmd->add_option("--Q", body_q, "Q preset");
  body_cmd->add_option("--p", body_p, "exponent");

  std::string suite, out_csv, out_svg;
  double tol = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run an inequality suite");
  verify_cmd->add_option("--suite", suite, "suite name or all")->required();
  verify_cmd->add_option("--tol", tol, "tolerance for le and eq rows (default: per case)");
  verify_cmd->add_option("--out", out_csv, "CSV output path");
  verify_cmd->add_option("--svg", out_svg, "SVG output path");

  std::string sch_shape = "triangle", sch_opt;
  int sch_m = 1, sch_budget = 400;
  std::uint64_t sch_seed = 42;
  auto* sch_cmd = app.add_subcommand("schneider", "vol(D^m K) / vol(K)^m");
  sch_cmd->add_option("--shape", sch_shape, "triangle, square, disk or 'x,y;x,y;...'");
  sch_cmd->add_option("--m", sch_m, "order m in {1, 2}");
  sch_cmd->add_option("--optimize", sch_opt, "max or min over polygons");
  sch_cmd->add_option("--budget", sch_budget, "evaluations per restart");
  sch_cmd->add_option("--seed", sch_seed, "optimiser seed");

  std::string mk_dirs = "1,0;-1,0;0,1;0,-1", mk_weights;
  double mk_p = 1;
  auto* mk_cmd = app.add_subcommand("minkowski", "Solve the discrete L^p Minkowski problem");
  mk_cmd->add_option("--directions", mk_dirs, "atoms as 'x,y;x,y;...'");
  mk_cmd->add_option("--weights", mk_weights, "comma-separated weights (default 1)");
  mk_cmd->add_option("--p", mk_p, "exponent");

  int c_n = 2;
  double c_p = 2;
  auto* const_cmd = app.add_subcommand("constants", "Sharp constants with provenance");
  const_cmd->add_option("--n", c_n, "dimension");
  const_cmd->add_option("--p", c_p, "exponent");

  std::string rep_in, rep_svg;
  auto* rep_cmd = app.add_subcommand("report", "Render a report CSV as SVG");
  rep_cmd->add_option("--in", rep_in, "report CSV")->required();
  rep_cmd->add_option("--svg", rep_svg, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) set_global_config(Config::from_file(config_path));
    if (*energy_cmd) return run_energy(ea);
    if (*body_cmd) return run_body(body_literal, body_q, body_p);
    if (*verify_cmd) {
      if (!is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'\nsuites: all";
        for (const auto& s : suite_names()) std::cerr << ' ' << s;
        std::cerr << "\n\n" << verify_cmd->help();
        return 2;
      }
      if (verify_cmd->count("--tol") && !(tol > 0 && tol <= 0.1)) {
        std::cerr << "--tol must lie in (0, 0.1]\n";
        return 2;
      }
      auto cases = suite_cases(suite);
      if (verify_cmd->count("--tol"))
        for (CaseSpec& c : cases)
          if (c.relation == Relation::le || c.relation == Relation::eq) c.tol = tol;
      const Report report = run_cases(cases);
      if (!out_csv.empty()) write_csv(report, out_csv);
      else std::cout << to_csv(report);
      if (!out_svg.empty()) write_svg(report, out_svg);
      std::cerr << summary(report);
      return report.all_passed() ? 0 : 1;
    }
    if (*sch_cmd) return run_schneider(sch_shape, sch_m, sch_opt, sch_budget, sch_seed);
    if (*mk_cmd) return run_minkowski(mk_dirs, mk_weights, mk_p);
    if (*const_cmd) return run_constants(c_n, c_p);
    if (*rep_cmd) {
      const Report report = read_report_csv(rep_in);
      write_svg(report, rep_svg);
      std::cerr << summary(report);
      return report.all_passed() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
