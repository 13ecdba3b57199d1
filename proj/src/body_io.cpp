#include "affiq/bodies.hpp"
#include "affiq/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace affiq {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(strip(cur));
  return parts;
}

double to_number(const std::string& s, const std::string& literal) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error("parse", "bad number '" + s + "' in body literal: " + literal);
  }
}

std::string unwrap(const std::string& s, const std::string& literal) {
  const std::string t = strip(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw Error("parse", "expected parenthesised list in body literal: " + literal);
  return t.substr(1, t.size() - 2);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConvexBody parse_body(const std::string& literal) {
  std::istringstream in(literal);
  std::string kind;
  in >> kind;
  std::map<std::string, std::string> fields;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Error("parse", "expected key=value in body literal: " + literal);
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  if (!fields.count("n")) throw Error("parse", "body literal lacks n=: " + literal);
  const int n = int(to_number(fields["n"], literal));
  if (n < 1) throw Error("parse", "dimension must be positive: " + literal);

  if (kind == "polytope") {
    if (!fields.count("v")) throw Error("parse", "polytope literal lacks v=: " + literal);
    const auto points = split(fields["v"], ';');
    Eigen::MatrixXd v(n, Eigen::Index(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
      const auto coords = split(unwrap(points[j], literal), ',');
      if (int(coords.size()) != n) throw Error("parse", "vertex has wrong dimension: " + literal);
      for (int k = 0; k < n; ++k) v(k, Eigen::Index(j)) = to_number(coords[k], literal);
    }
    return polytope_body(v);
  }
  if (kind == "ellipsoid") {
    if (!fields.count("a")) throw Error("parse", "ellipsoid literal lacks a=: " + literal);
    const auto rows = split(unwrap(fields["a"], literal), ';');
    if (int(rows.size()) != n) throw Error("parse", "matrix has wrong row count: " + literal);
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) {
      const auto entries = split(rows[i], ',');
      if (int(entries.size()) != n) throw Error("parse", "matrix row has wrong length: " + literal);
      for (int j = 0; j < n; ++j) A(i, j) = to_number(entries[j], literal);
    }
    return ellipsoid_body(A);
  }
  throw Error("parse", "unknown body kind '" + kind + "'");
}

std::string format_body(const ConvexBody& K) {
  std::string out;
  if (K.is_polytope()) {
    const auto& v = K.polytope().vertices;
    out = "polytope n=" + std::to_string(v.rows()) + " v=";
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      if (j) out += ';';
      out += '(';
      for (Eigen::Index k = 0; k < v.rows(); ++k) out += (k ? "," : "") + fmt(v(k, j));
      out += ')';
    }
    return out;
  }
  if (K.is_ellipsoid()) {
    const auto& A = K.ellipsoid().A;
    out = "ellipsoid n=" + std::to_string(A.rows()) + " a=(";
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i) out += ';';
      for (Eigen::Index j = 0; j < A.cols(); ++j) out += (j ? "," : "") + fmt(A(i, j));
    }
    return out + ")";
  }
  throw Error("unsupported", "sampled bodies have no literal form");
}

std::vector<ConvexBody> read_bodies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open body file '" + path + "'");
  std::vector<ConvexBody> bodies;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (!line.empty()) bodies.push_back(parse_body(line));
  }
  return bodies;
}

}  // namespace affiq
