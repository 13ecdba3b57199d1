#include "affiq/polytope.hpp"

#include "affiq/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace affiq {

namespace {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

double spread(const Eigen::MatrixXd& points) {
  if (points.cols() == 0) return 1.0;
  const double s = (points.rowwise().maxCoeff() - points.rowwise().minCoeff()).maxCoeff();
  return s > 0 ? s : 1.0;
}

// Orthonormal basis of the plane orthogonal to unit vector n.
std::pair<Vec3, Vec3> plane_basis(const Vec3& n) {
  Vec3 helper = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 e1 = n.cross(helper).normalized();
  Vec3 e2 = n.cross(e1);
  return {e1, e2};
}

// Orders coplanar points counter-clockwise seen from the tip of `normal`,
// dropping near-duplicates.
std::vector<Vec3> order_ccw(std::vector<Vec3> pts, const Vec3& normal, double eps) {
  std::vector<Vec3> unique;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : unique)
      if ((p - q).norm() <= eps) {
        dup = true;
        break;
      }
    if (!dup) unique.push_back(p);
  }
  if (unique.size() < 3) return unique;
  Vec3 c = Vec3::Zero();
  for (const auto& p : unique) c += p;
  c /= double(unique.size());
  const auto [e1, e2] = plane_basis(normal);
  std::vector<std::pair<double, Vec3>> keyed;
  for (const auto& p : unique) keyed.emplace_back(std::atan2((p - c).dot(e2), (p - c).dot(e1)), p);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec3> out;
  for (auto& kp : keyed) out.push_back(kp.second);
  return out;
}

Vec3 vector_area(const std::vector<Vec3>& poly) {
  Vec3 s = Vec3::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) s += poly[i].cross(poly[(i + 1) % poly.size()]);
  return 0.5 * s;
}

Polytope polytope_1d(const Eigen::MatrixXd& points) {
  Polytope p;
  p.dim = 1;
  const double lo = points.minCoeff(), hi = points.maxCoeff();
  p.vertices.resize(1, 2);
  p.vertices << lo, hi;
  p.normals.resize(1, 2);
  p.normals << -1.0, 1.0;
  p.offsets.resize(2);
  p.offsets << -lo, hi;
  p.areas = Eigen::VectorXd::Ones(2);
  p.volume = hi - lo;
  p.centroid = Eigen::VectorXd::Constant(1, 0.5 * (lo + hi));
  return p;
}

Polytope polytope_2d(const Eigen::MatrixXd& points) {
  const Eigen::MatrixXd hull = convex_hull_2d(points);
  Polytope p;
  p.dim = 2;
  p.vertices = hull;
  const Eigen::Index k = hull.cols();
  p.volume = k >= 3 ? polygon_area(hull) : 0.0;
  if (p.volume <= 1e-12) throw Error("degenerate", "polygon has (near) zero area");
  p.normals.resize(2, k);
  p.offsets.resize(k);
  p.areas.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Vector2d a = hull.col(i), b = hull.col((i + 1) % k);
    const Eigen::Vector2d e = b - a;
    const double len = e.norm();
    const Eigen::Vector2d n(e.y() / len, -e.x() / len);
    p.normals.col(i) = n;
    p.offsets(i) = n.dot(a);
    p.areas(i) = len;
  }
  p.centroid = hull.rowwise().mean();
  return p;
}

// Quickhull-style incremental 3-D hull with outside sets. Triangles are
// oriented outward; points within eps of the surface count as inside.
struct Triangle {
  int v[3];
  Vec3 normal;
  double offset;
};

std::uint64_t edge_key(int a, int b) { return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b); }

std::vector<Triangle> convex_hull_3d(const std::vector<Vec3>& pts, double eps) {
  const int n = int(pts.size());
  if (n < 4) throw Error("degenerate", "polyhedron is not full-dimensional");
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i].x() < pts[i0].x()) i0 = i;
  int i1 = -1, i2 = -1, i3 = -1;
  double best = 0;
  for (int i = 0; i < n; ++i)
    if (const double d = (pts[i] - pts[i0]).norm(); d > best) best = d, i1 = i;
  if (i1 < 0 || best <= eps) throw Error("degenerate", "polyhedron is not full-dimensional");
  const Vec3 axis = (pts[i1] - pts[i0]).normalized();
  best = 0;
  for (int i = 0; i < n; ++i)
    if (const double d = (pts[i] - pts[i0]).cross(axis).norm(); d > best) best = d, i2 = i;
  if (i2 < 0 || best <= eps) throw Error("degenerate", "polyhedron is not full-dimensional");
  const Vec3 pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  best = 0;
  for (int i = 0; i < n; ++i)
    if (const double d = std::abs((pts[i] - pts[i0]).dot(pn)); d > best) best = d, i3 = i;
  if (i3 < 0 || best <= eps) throw Error("degenerate", "polyhedron is not full-dimensional");
  const Vec3 inside = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);

  std::vector<Triangle> tris;
  std::vector<char> alive;
  std::vector<std::vector<int>> outside;
  std::unordered_map<std::uint64_t, int> edge;  // directed edge -> triangle
  edge.reserve(std::size_t(6 * n));
  auto dist = [&](int t, int p) { return tris[std::size_t(t)].normal.dot(pts[std::size_t(p)]) - tris[std::size_t(t)].offset; };
  auto add = [&](int a, int b, int c) {
    Vec3 nrm = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    if (nrm.dot(inside - pts[a]) > 0) {
      std::swap(b, c);
      nrm = -nrm;
    }
    nrm.normalize();
    const int id = int(tris.size());
    tris.push_back({{a, b, c}, nrm, nrm.dot(pts[a])});
    alive.push_back(1);
    outside.emplace_back();
    edge[edge_key(a, b)] = id;
    edge[edge_key(b, c)] = id;
    edge[edge_key(c, a)] = id;
    return id;
  };
  add(i0, i1, i2);
  add(i0, i1, i3);
  add(i0, i2, i3);
  add(i1, i2, i3);
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    for (int t = 0; t < 4; ++t)
      if (dist(t, p) > eps) {
        outside[std::size_t(t)].push_back(p);
        break;
      }
  }

  std::vector<int> work{0, 1, 2, 3}, visible, stack, fresh, orphans;
  std::vector<std::pair<int, int>> horizon;
  while (!work.empty()) {
    const int f = work.back();
    work.pop_back();
    if (!alive[std::size_t(f)] || outside[std::size_t(f)].empty()) continue;
    int p = outside[std::size_t(f)][0];
    for (int q : outside[std::size_t(f)])
      if (dist(f, q) > dist(f, p)) p = q;
    // Visible region: connected, grown from f across shared edges.
    visible.assign(1, f);
    stack.assign(1, f);
    alive[std::size_t(f)] = 2;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int e = 0; e < 3; ++e) {
        const Triangle& tr = tris[std::size_t(t)];
        const auto it = edge.find(edge_key(tr.v[(e + 1) % 3], tr.v[e]));
        if (it == edge.end()) continue;
        const int u = it->second;
        if (alive[std::size_t(u)] == 1 && dist(u, p) > eps) {
          alive[std::size_t(u)] = 2;
          visible.push_back(u);
          stack.push_back(u);
        }
      }
    }
    horizon.clear();
    orphans.clear();
    for (int t : visible) {
      for (int e = 0; e < 3; ++e) {
        const int a = tris[std::size_t(t)].v[e], b = tris[std::size_t(t)].v[(e + 1) % 3];
        const auto it = edge.find(edge_key(b, a));
        if (it == edge.end() || alive[std::size_t(it->second)] != 2) horizon.emplace_back(a, b);
      }
      for (int q : outside[std::size_t(t)])
        if (q != p) orphans.push_back(q);
    }
    for (int t : visible) {
      alive[std::size_t(t)] = 0;
      outside[std::size_t(t)].clear();
      outside[std::size_t(t)].shrink_to_fit();
      for (int e = 0; e < 3; ++e) {
        const auto it = edge.find(edge_key(tris[std::size_t(t)].v[e], tris[std::size_t(t)].v[(e + 1) % 3]));
        if (it != edge.end() && it->second == t) edge.erase(it);
      }
    }
    fresh.clear();
    for (const auto& [a, b] : horizon) fresh.push_back(add(a, b, p));
    for (int q : orphans)
      for (int t : fresh)
        if (dist(t, q) > eps) {
          outside[std::size_t(t)].push_back(q);
          break;
        }
    for (int t : fresh)
      if (!outside[std::size_t(t)].empty()) work.push_back(t);
  }
  std::vector<Triangle> out;
  for (std::size_t t = 0; t < tris.size(); ++t)
    if (alive[t]) out.push_back(tris[t]);
  return out;
}

// Representative triangle of each maximal set of coplanar neighbours.
std::vector<int> coplanar_groups(const std::vector<Triangle>& tris, double eps) {
  std::unordered_map<std::uint64_t, int> edge;
  edge.reserve(3 * tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int e = 0; e < 3; ++e) edge[edge_key(tris[t].v[e], tris[t].v[(e + 1) % 3])] = int(t);
  std::vector<int> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
    return x;
  };
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int e = 0; e < 3; ++e) {
      const auto it = edge.find(edge_key(tris[t].v[(e + 1) % 3], tris[t].v[e]));
      if (it == edge.end()) continue;
      const Triangle& u = tris[std::size_t(it->second)];
      if ((u.normal - tris[t].normal).norm() < 1e-9 && std::abs(u.offset - tris[t].offset) < eps)
        parent[std::size_t(find(int(t)))] = find(it->second);
    }
  for (std::size_t t = 0; t < tris.size(); ++t) parent[t] = find(int(t));
  return parent;
}

Polytope polytope_3d(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.cols();
  const double eps = 1e-10 * spread(points);
  std::vector<Vec3> pts(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) pts[std::size_t(i)] = points.col(i);
  const std::vector<Triangle> tris = convex_hull_3d(pts, eps);
  const std::vector<int> group = coplanar_groups(tris, eps);
  std::vector<Vec3> normals;
  std::vector<double> offsets, areas;
  std::vector<int> facet_of(tris.size(), -1);
  std::vector<char> is_vertex(std::size_t(n), 0);
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Triangle& tr = tris[t];
    const double area = 0.5 * (pts[std::size_t(tr.v[1])] - pts[std::size_t(tr.v[0])])
                                  .cross(pts[std::size_t(tr.v[2])] - pts[std::size_t(tr.v[0])])
                                  .norm();
    for (int k : tr.v) is_vertex[std::size_t(k)] = 1;
    const std::size_t root = std::size_t(group[t]);
    if (facet_of[root] < 0) {
      facet_of[root] = int(normals.size());
      normals.push_back(tris[root].normal);
      offsets.push_back(tris[root].offset);
      areas.push_back(0);
    }
    areas[std::size_t(facet_of[root])] += area;
  }
  Polytope p;
  p.dim = 3;
  const auto F = Eigen::Index(normals.size());
  p.normals.resize(3, F);
  p.offsets.resize(F);
  p.areas.resize(F);
  for (Eigen::Index f = 0; f < F; ++f) {
    p.normals.col(f) = normals[std::size_t(f)];
    p.offsets(f) = offsets[std::size_t(f)];
    p.areas(f) = areas[std::size_t(f)];
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index l = 0; l < n; ++l)
    if (is_vertex[std::size_t(l)]) keep.push_back(l);
  p.vertices.resize(3, Eigen::Index(keep.size()));
  for (std::size_t l = 0; l < keep.size(); ++l) p.vertices.col(Eigen::Index(l)) = points.col(keep[l]);
  p.centroid = p.vertices.rowwise().mean();
  double vol = 0;
  for (Eigen::Index f = 0; f < F; ++f) vol += p.areas(f) * (p.offsets(f) - p.normals.col(f).dot(p.centroid));
  p.volume = vol / 3.0;
  if (p.volume <= 1e-12) throw Error("degenerate", "polyhedron has (near) zero volume");
  return p;
}

// Sorted-angle half-plane intersection, O(N log N). The box half-planes keep
// the result bounded; facet lengths are reported per label.
HalfspaceCell intersect_2d(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets, double L) {
  struct Line {
    Vec2 a;
    double b;
    double angle;
    int label;
  };
  std::vector<Line> lines;
  lines.reserve(std::size_t(offsets.size()) + 4);
  const double eps = 1e-13 * L;
  for (Eigen::Index i = 0; i < offsets.size(); ++i) {
    const Vec2 raw = normals.col(i);
    const double na = raw.norm();
    const Vec2 a = raw / na;
    lines.push_back({a, offsets(i) / na, std::atan2(a.y(), a.x()), int(i)});
  }
  const Vec2 box[4] = {Vec2(0, -1), Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0)};
  for (int k = 0; k < 4; ++k) lines.push_back({box[k], L, std::atan2(box[k].y(), box[k].x()), -1 - k});
  std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
    if (x.angle != y.angle) return x.angle < y.angle;
    if (x.b != y.b) return x.b < y.b;
    if ((x.label < 0) != (y.label < 0)) return y.label < 0;
    return x.label < y.label;
  });
  auto meet = [](const Line& x, const Line& y) {
    const double det = x.a.x() * y.a.y() - x.a.y() * y.a.x();
    return Vec2((x.b * y.a.y() - y.b * x.a.y()) / det, (x.a.x() * y.b - y.a.x() * x.b) / det);
  };
  auto outside = [&](const Line& l, const Vec2& p) { return l.a.dot(p) > l.b + eps; };
  std::vector<Line> dq(lines.size());
  std::size_t head = 0, tail = 0;  // [head, tail)
  HalfspaceCell cell;
  cell.facet_areas = Eigen::VectorXd::Zero(offsets.size());
  cell.vertices.resize(2, 0);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0 && lines[i].angle - lines[i - 1].angle < 1e-15) continue;  // parallel, looser
    const Line& l = lines[i];
    while (tail - head >= 2 && outside(l, meet(dq[tail - 2], dq[tail - 1]))) --tail;
    while (tail - head >= 2 && outside(l, meet(dq[head], dq[head + 1]))) ++head;
    if (tail - head >= 1) {
      const Line& prev = dq[tail - 1];
      const double det = prev.a.x() * l.a.y() - prev.a.y() * l.a.x();
      if (det <= 1e-15) {
        // Turn of pi or more between consecutive normals: empty when the strip is infeasible.
        if (prev.a.dot(l.a) < 0 && prev.b + l.b < 0) return cell;
      }
    }
    dq[tail++] = l;
  }
  while (tail - head >= 3 && outside(dq[head], meet(dq[tail - 2], dq[tail - 1]))) --tail;
  while (tail - head >= 3 && outside(dq[tail - 1], meet(dq[head], dq[head + 1]))) ++head;
  const std::size_t k = tail - head;
  if (k < 3) return cell;
  std::vector<Vec2> pts(k);
  for (std::size_t i = 0; i < k; ++i) pts[i] = meet(dq[head + i], dq[head + (i + 1) % k]);
  // Vertex i closes line i and opens line i+1.
  cell.vertices.resize(2, Eigen::Index(k));
  for (std::size_t i = 0; i < k; ++i) cell.vertices.col(Eigen::Index(i)) = pts[i];
  for (std::size_t i = 0; i < k; ++i) {
    const Line& l = dq[head + (i + 1) % k];
    const double len = (pts[(i + 1) % k] - pts[i]).norm();
    if (l.label < 0) {
      if (len > 1e-9 * L) throw Error("unbounded", "half-space intersection is unbounded");
      continue;
    }
    cell.facet_areas(l.label) += len;
  }
  cell.volume = polygon_area(cell.vertices);
  if (!(cell.volume > 0)) {
    cell.volume = 0;
    cell.facet_areas.setZero();
    cell.vertices.resize(2, 0);
  }
  return cell;
}

struct Face {
  int label;
  std::vector<Vec3> pts;
};

// Origin strictly inside: the cell is the polar of conv{a_i / b_i}. Hull
// triangles give cell vertices; the triangles around hull vertex i bound facet i.
HalfspaceCell intersect_3d_dual(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets, double L) {
  const Eigen::Index N = offsets.size();
  std::vector<Vec3> dual(static_cast<std::size_t>(N));
  double scale = 0;
  for (Eigen::Index i = 0; i < N; ++i) {
    dual[std::size_t(i)] = Vec3(normals.col(i)) / offsets(i);
    scale = std::max(scale, dual[std::size_t(i)].norm());
  }
  const std::vector<Triangle> tris = convex_hull_3d(dual, 1e-12 * scale);
  const std::vector<int> group = coplanar_groups(tris, 1e-12 * scale);
  std::vector<Vec3> corner(tris.size());
  std::vector<std::vector<int>> around(static_cast<std::size_t>(N));
  HalfspaceCell cell;
  std::vector<Vec3> verts;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Triangle& g = tris[std::size_t(group[t])];
    if (!(g.offset * L > 1)) throw Error("unbounded", "half-space intersection is unbounded");
    corner[t] = g.normal / g.offset;
    if (group[t] == int(t)) verts.push_back(corner[t]);
    for (int k : tris[t].v) around[std::size_t(k)].push_back(group[t]);
  }
  cell.facet_areas = Eigen::VectorXd::Zero(N);
  double vol = 0;
  for (Eigen::Index i = 0; i < N; ++i) {
    auto& ts = around[std::size_t(i)];
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.size() < 3) continue;
    std::vector<Vec3> poly;
    for (int t : ts) poly.push_back(corner[std::size_t(t)]);
    const Vec3 a = normals.col(i);
    poly = order_ccw(std::move(poly), a.normalized(), 0.0);
    const double area = vector_area(poly).norm();
    cell.facet_areas(i) = area;
    vol += area * offsets(i) / a.norm() / 3.0;
  }
  cell.volume = vol;
  cell.vertices.resize(3, Eigen::Index(verts.size()));
  for (std::size_t j = 0; j < verts.size(); ++j) cell.vertices.col(Eigen::Index(j)) = verts[j];
  return cell;
}

HalfspaceCell intersect_3d(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets, double L) {
  if (offsets.size() >= 4 && offsets.minCoeff() > 1e-9 * offsets.cwiseAbs().maxCoeff())
    return intersect_3d_dual(normals, offsets, L);
  const double eps = 1e-13 * L;
  std::vector<Face> faces;
  {
    std::vector<Vec3> corners;
    for (int c = 0; c < 8; ++c)
      corners.emplace_back((c & 1) ? L : -L, (c & 2) ? L : -L, (c & 4) ? L : -L);
    int label = -1;
    for (int axis = 0; axis < 3; ++axis)
      for (int sign : {-1, 1}) {
        Vec3 n = Vec3::Zero();
        n(axis) = sign;
        std::vector<Vec3> on;
        for (const auto& c : corners)
          if (c(axis) * sign > 0) on.push_back(c);
        faces.push_back({label--, order_ccw(on, n, eps)});
      }
  }
  for (Eigen::Index i = 0; i < offsets.size() && !faces.empty(); ++i) {
    const Vec3 raw = normals.col(i);
    const double na = raw.norm();
    const Vec3 a = raw / na;
    const double b = offsets(i) / na;
    std::vector<Face> next;
    std::vector<Vec3> cap;
    for (auto& face : faces) {
      std::vector<Vec3> out;
      const std::size_t k = face.pts.size();
      for (std::size_t j = 0; j < k; ++j) {
        const Vec3& P = face.pts[j];
        const Vec3& Q = face.pts[(j + 1) % k];
        const double sp = a.dot(P) - b, sq = a.dot(Q) - b;
        const bool pin = sp <= eps, qin = sq <= eps;
        if (pin) {
          out.push_back(P);
          if (std::abs(sp) <= eps) cap.push_back(P);
        }
        if (pin != qin) {
          const Vec3 X = P + (sp / (sp - sq)) * (Q - P);
          out.push_back(X);
          cap.push_back(X);
        }
      }
      std::vector<Vec3> clean;
      for (std::size_t j = 0; j < out.size(); ++j)
        if ((out[j] - out[(j + 1) % out.size()]).norm() > eps) clean.push_back(out[j]);
      if (clean.size() >= 3) next.push_back({face.label, std::move(clean)});
    }
    auto cap_poly = order_ccw(cap, a, 10 * eps);
    if (cap_poly.size() >= 3) next.push_back({int(i), std::move(cap_poly)});
    faces = std::move(next);
    if (faces.size() < 4) faces.clear();
  }
  HalfspaceCell cell;
  cell.facet_areas = Eigen::VectorXd::Zero(offsets.size());
  std::vector<Vec3> verts;
  double vol = 0;
  for (const auto& face : faces) {
    const Vec3 va = vector_area(face.pts);
    const double area = va.norm();
    if (face.label < 0) {
      if (area > eps * L) throw Error("unbounded", "half-space intersection is unbounded");
      continue;
    }
    cell.facet_areas(face.label) += area;
    vol += face.pts[0].dot(va) / 3.0;
    for (const auto& p : face.pts) {
      bool dup = false;
      for (const auto& q : verts)
        if ((p - q).norm() <= 10 * eps) {
          dup = true;
          break;
        }
      if (!dup) verts.push_back(p);
    }
  }
  cell.volume = std::max(vol, 0.0);
  cell.vertices.resize(3, Eigen::Index(verts.size()));
  for (std::size_t j = 0; j < verts.size(); ++j) cell.vertices.col(Eigen::Index(j)) = verts[j];
  return cell;
}

}  // namespace

double polygon_area(const Eigen::MatrixXd& ordered) {
  const Eigen::Index k = ordered.cols();
  double s = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::Index j = (i + 1) % k;
    s += ordered(0, i) * ordered(1, j) - ordered(0, j) * ordered(1, i);
  }
  return 0.5 * std::abs(s);
}

Eigen::MatrixXd convex_hull_2d(const Eigen::MatrixXd& points) {
  std::vector<Vec2> pts;
  for (Eigen::Index i = 0; i < points.cols(); ++i) pts.emplace_back(points(0, i), points(1, i));
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const double eps = 1e-12 * spread(points) * spread(points);
  std::vector<Vec2> hull;
  if (pts.size() < 3) {
    hull = pts;
  } else {
    for (const auto& p : pts) {
      while (hull.size() >= 2 && cross2(hull[hull.size() - 2], hull.back(), p) <= eps) hull.pop_back();
      hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
      while (hull.size() >= lower && cross2(hull[hull.size() - 2], hull.back(), *it) <= eps) hull.pop_back();
      hull.push_back(*it);
    }
    hull.pop_back();
  }
  Eigen::MatrixXd out(2, Eigen::Index(hull.size()));
  for (std::size_t i = 0; i < hull.size(); ++i) out.col(Eigen::Index(i)) = hull[i];
  return out;
}

Polytope make_polytope(const Eigen::MatrixXd& points) {
  const int d = int(points.rows());
  if (points.cols() < d + 1)
    throw Error("degenerate", "polytope needs at least d+1 vertices");
  if (!points.allFinite()) throw Error("domain", "polytope vertices must be finite");
  switch (d) {
    case 1: {
      Polytope p = polytope_1d(points);
      if (p.volume <= 1e-12) throw Error("degenerate", "segment has (near) zero length");
      return p;
    }
    case 2: return polytope_2d(points);
    case 3: return polytope_3d(points);
    default: throw Error("unsupported", "polytopes are supported in dimensions 1 to 3");
  }
}

HalfspaceCell intersect_halfspaces(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets,
                                   double bound) {
  const int d = int(normals.rows());
  if (normals.cols() != offsets.size()) throw Error("domain", "normals/offsets size mismatch");
  if (d == 1) {
    double lo = -bound, hi = bound;
    Eigen::Index ilo = -1, ihi = -1;
    for (Eigen::Index i = 0; i < offsets.size(); ++i) {
      const double a = normals(0, i);
      if (a > 0 && offsets(i) / a < hi) hi = offsets(i) / a, ihi = i;
      if (a < 0 && offsets(i) / a > lo) lo = offsets(i) / a, ilo = i;
    }
    if (ilo < 0 || ihi < 0) throw Error("unbounded", "half-line intersection is unbounded");
    HalfspaceCell cell;
    cell.facet_areas = Eigen::VectorXd::Zero(offsets.size());
    if (hi > lo) {
      cell.volume = hi - lo;
      cell.facet_areas(ilo) = cell.facet_areas(ihi) = 1.0;
      cell.vertices.resize(1, 2);
      cell.vertices << lo, hi;
    }
    return cell;
  }
  if (d == 2) return intersect_2d(normals, offsets, bound);
  if (d == 3) return intersect_3d(normals, offsets, bound);
  throw Error("unsupported", "half-space intersection is supported in dimensions 1 to 3");
}

HalfspaceCell intersect_halfspaces(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets) {
  Eigen::VectorXd scaled(offsets.size());
  for (Eigen::Index i = 0; i < offsets.size(); ++i) scaled(i) = std::abs(offsets(i)) / normals.col(i).norm();
  const double bound = 1e3 * (scaled.size() ? scaled.maxCoeff() : 1.0) + 1.0;
  return intersect_halfspaces(normals, offsets, bound);
}

}  // namespace affiq
