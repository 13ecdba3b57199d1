#include "affiq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace affiq {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

// Case ids and preset names never contain commas or quotes; quote anyway if
// one ever does.
std::string field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s) {
  if (s == "nan") return NAN;
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("parse", "not a number: '" + s + "'");
}

}  // namespace

void write_csv(const Report& report, std::ostream& out) {
  out << kReportVersionLine << '\n' << kReportHeader << '\n';
  for (const ReportRow& r : report.rows) {
    out << field(r.suite) << ',' << field(r.case_id) << ',' << r.n << ',' << r.m << ',' << num(r.p) << ','
        << field(r.Q) << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.ratio) << ',' << num(r.tol) << ','
        << (r.pass ? "true" : "false") << ',' << num(r.runtime_ms) << '\n';
  }
}

std::string to_csv(const Report& report) {
  std::ostringstream s;
  write_csv(report, s);
  return s.str();
}

void write_csv(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path);
  write_csv(report, out);
}

Report read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line != kReportVersionLine) throw Error("parse", "missing version line");
  if (!std::getline(in, line) || line != kReportHeader) throw Error("parse", "unexpected header");
  Report report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 12) throw Error("parse", "expected 12 fields: " + line);
    ReportRow r;
    r.suite = f[0];
    r.case_id = f[1];
    r.tag = r.case_id.substr(0, r.case_id.find('/'));
    r.n = int(parse_number(f[2]));
    r.m = int(parse_number(f[3]));
    r.p = parse_number(f[4]);
    r.Q = f[5];
    r.lhs = parse_number(f[6]);
    r.rhs = parse_number(f[7]);
    r.ratio = parse_number(f[8]);
    r.tol = parse_number(f[9]);
    if (f[10] != "true" && f[10] != "false") throw Error("parse", "pass must be true or false");
    r.pass = f[10] == "true";
    r.runtime_ms = parse_number(f[11]);
    report.rows.push_back(r);
  }
  return report;
}

std::string to_svg(const Report& report) {
  std::vector<std::string> suites;
  for (const ReportRow& r : report.rows)
    if (std::find(suites.begin(), suites.end(), r.suite) == suites.end()) suites.push_back(r.suite);

  const double width = 720, panel = 180, left = 60, right = 20, top = 30, bottom = 30;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
    << panel * double(suites.size()) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t k = 0; k < suites.size(); ++k) {
    const auto rows = report.suite_rows(suites[k]);
    std::vector<double> ratios;
    for (const ReportRow& r : rows)
      if (std::isfinite(r.ratio)) ratios.push_back(r.ratio);
    double lo = 1, hi = 1;
    if (!ratios.empty()) {
      lo = std::min(lo, *std::min_element(ratios.begin(), ratios.end()));
      hi = std::max(hi, *std::max_element(ratios.begin(), ratios.end()));
    }
    if (hi - lo < 1e-3) {
      lo -= 5e-4;
      hi += 5e-4;
    }
    const double y0 = panel * double(k), plot_h = panel - top - bottom, plot_w = width - left - right;
    auto X = [&](std::size_t i) {
      return left + (rows.size() > 1 ? plot_w * double(i) / double(rows.size() - 1) : plot_w / 2);
    };
    auto Y = [&](double v) { return y0 + top + plot_h * (hi - v) / (hi - lo); };

    std::size_t passed = 0;
    for (const ReportRow& r : rows) passed += r.pass;
    s << "<g>\n<text x=\"" << left << "\" y=\"" << y0 + 18 << "\">" << suites[k] << " (" << passed << "/"
      << rows.size() << " pass)</text>\n";
    s << "<rect x=\"" << left << "\" y=\"" << y0 + top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#999\"/>\n";
    s << "<line x1=\"" << left << "\" x2=\"" << left + plot_w << "\" y1=\"" << num(Y(1)) << "\" y2=\"" << num(Y(1))
      << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    s << "<text x=\"4\" y=\"" << num(Y(hi) + 4) << "\">" << num(hi) << "</text>\n";
    s << "<text x=\"4\" y=\"" << num(Y(lo) + 4) << "\">" << num(lo) << "</text>\n";
    s << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << y0 + panel - 8 << "\" text-anchor=\"middle\">case index</text>\n";
    s << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (std::isfinite(rows[i].ratio)) s << num(X(i)) << ',' << num(Y(rows[i].ratio)) << ' ';
    s << "\"/>\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].pass)
        s << "<circle cx=\"" << num(X(i)) << "\" cy=\"" << num(std::isfinite(rows[i].ratio) ? Y(rows[i].ratio) : y0 + top)
          << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

void write_svg(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path);
  out << to_svg(report);
}

std::string summary(const Report& report) {
  std::ostringstream s;
  s << report.passed() << "/" << report.rows.size() << " passed\n";
  std::vector<std::string> suites;
  for (const ReportRow& r : report.rows)
    if (std::find(suites.begin(), suites.end(), r.suite) == suites.end()) suites.push_back(r.suite);
  for (const auto& name : suites) {
    const auto rows = report.suite_rows(name);
    const auto ok = std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
    s << "  " << name << ": " << ok << "/" << rows.size() << "\n";
  }
  return s.str();
}

}  // namespace affiq
