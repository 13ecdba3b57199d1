// Runs every suite at the configured defaults and prints one PASS/FAIL line per
// acceptance criterion. Exit status 0 iff all criteria pass.

#include "affiq/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

using namespace affiq;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(const CaseSpec&)> member;
};

bool in(const CaseSpec& c, std::initializer_list<const char*> suites) {
  for (const char* s : suites)
    if (c.suite == s) return true;
  return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string csv_path = argc > 1 ? argv[1] : "acceptance_report.csv";

  const std::vector<Criterion> criteria{
      {1, "radial equality", [](const CaseSpec& c) { return c.suite == "relate" && c.check != "comparison"; }},
      {2, "comparison with the Dirichlet norm", [](const CaseSpec& c) { return c.check == "comparison"; }},
      {3, "Polya-Szego", [](const CaseSpec& c) { return in(c, {"polya-szego"}); }},
      {4, "affine invariance", [](const CaseSpec& c) { return in(c, {"affine-invariance"}); }},
      {5, "affine Sobolev", [](const CaseSpec& c) { return in(c, {"sobolev"}); }},
      {6, "m-th order Petty projection", [](const CaseSpec& c) { return in(c, {"petty"}); }},
      {7, "Busemann-Petty centroid", [](const CaseSpec& c) { return in(c, {"busemann-petty"}); }},
      {8, "Schneider ratios", [](const CaseSpec& c) { return in(c, {"schneider"}); }},
      {9, "Matheron derivative", [](const CaseSpec& c) { return in(c, {"matheron"}); }},
      {10, "Minkowski solver and lemma", [](const CaseSpec& c) { return in(c, {"minkowski"}); }},
      {11, "sharp constants", [](const CaseSpec& c) { return in(c, {"constants"}); }},
      {12, "Morrey-Sobolev and Faber-Krahn", [](const CaseSpec& c) { return in(c, {"morrey", "faber-krahn"}); }},
      {13, "Moser-Trudinger sandwich", [](const CaseSpec& c) { return in(c, {"moser-trudinger"}); }},
      {14, "Nash, log-Sobolev, Gagliardo-Nirenberg",
       [](const CaseSpec& c) { return in(c, {"nash", "log-sobolev", "gagliardo-nirenberg"}); }},
      {15, "Poincare positivity and resolution", [](const CaseSpec& c) { return in(c, {"poincare"}); }},
  };

  const auto cases = suite_cases("all");
  std::map<std::string, const CaseSpec*> by_id;
  for (const CaseSpec& c : cases) by_id[c.suite + "|" + c.case_id()] = &c;

  auto t0 = std::chrono::steady_clock::now();
  const Report first = run_cases(cases);
  std::fprintf(stderr, "first run: %zu rows in %.0f s\n", first.rows.size(), seconds_since(t0));
  write_csv(first, csv_path);

  std::map<int, std::pair<int, int>> tally;  // criterion -> (passed, total)
  std::pair<int, int> extra{0, 0};
  std::vector<const ReportRow*> unassigned;
  for (const ReportRow& r : first.rows) {
    const CaseSpec& c = *by_id.at(r.suite + "|" + r.case_id);
    bool assigned = false;
    for (const Criterion& k : criteria)
      if (k.member(c)) {
        auto& t = tally[k.id];
        t.first += r.pass;
        t.second += 1;
        assigned = true;
      }
    // The convex Lorentz chain is optional and no criterion names it; its rows
    // still have to pass.
    if (!assigned && c.suite == "lorentz") {
      extra.first += r.pass;
      extra.second += 1;
      assigned = true;
    }
    if (!assigned) unassigned.push_back(&r);
    if (!r.pass)
      std::fprintf(stderr, "  failed: %s %s lhs=%.9g rhs=%.9g ratio=%.9g tol=%g %s\n", r.suite.c_str(),
                   r.case_id.c_str(), r.lhs, r.rhs, r.ratio, r.tol, r.error.c_str());
  }

  bool all = unassigned.empty() && extra.first == extra.second;
  std::fprintf(stderr, "lorentz (no criterion): %d/%d rows\n", extra.first, extra.second);
  for (const ReportRow* r : unassigned) std::fprintf(stderr, "  row without criterion: %s\n", r->case_id.c_str());
  for (const Criterion& k : criteria) {
    const auto [ok, total] = tally[k.id];
    const bool pass = total > 0 && ok == total;
    all = all && pass;
    std::printf("%s  %2d  %-40s %d/%d rows\n", pass ? "PASS" : "FAIL", k.id, k.title.c_str(), ok, total);
    std::fflush(stdout);
  }

  clear_suite_caches();
  t0 = std::chrono::steady_clock::now();
  const Report second = run_cases(suite_cases("all"));
  std::fprintf(stderr, "second run: %.0f s\n", seconds_since(t0));
  const bool same = to_csv(first) == to_csv(second);
  all = all && same;
  std::printf("%s  16  %-40s %s\n", same ? "PASS" : "FAIL", "deterministic report", same ? "byte-identical CSV" : "CSV differs");
  return all ? 0 : 1;
}
