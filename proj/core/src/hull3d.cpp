#include "flatnewt/hull3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "flatnewt/errors.hpp"

namespace flatnewt {

namespace {

struct WorkFacet {
  int a, b, c;
  Point3 n;       // unit normal
  double off;     // <n, a>
  bool alive = true;
};

double plane_dist(const WorkFacet& f, const Point3& p) {
  return dot(f.n, p) - f.off;
}

bool lex_less(const Point3& p, const Point3& q) {
  if (p.x != q.x) return p.x < q.x;
  if (p.y != q.y) return p.y < q.y;
  return p.z < q.z;
}

}  // namespace

std::vector<int> Polytope3::hull_vertex_indices() const {
  std::set<int> s;
  for (const auto& f : facets) s.insert(f.v.begin(), f.v.end());
  return {s.begin(), s.end()};
}

Polytope3 convex_hull_3d(std::vector<Point3> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point3& p, const Point3& q) {
                          return p.x == q.x && p.y == q.y && p.z == q.z;
                        }),
            pts.end());
  const int n = (int)pts.size();
  if (n < 4) throw DegenerateInput("need at least 4 distinct points");

  double scale = 0.0;
  for (const auto& p : pts)
    scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  const double eps = 1e-12 * std::max(scale, 1e-30);

  // Initial simplex: first point, first distinct, first non-collinear,
  // first non-coplanar, in lexicographic order.
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  for (int i = 1; i < n && i1 < 0; ++i) {
    Point3 d = pts[i] - pts[i0];
    if (std::sqrt(dot(d, d)) > eps) i1 = i;
  }
  if (i1 < 0) throw DegenerateInput("all points coincide");
  Point3 e1 = pts[i1] - pts[i0];
  for (int i = i1 + 1; i < n && i2 < 0; ++i) {
    Point3 cr = cross(e1, pts[i] - pts[i0]);
    if (std::sqrt(dot(cr, cr)) > eps * std::sqrt(dot(e1, e1))) i2 = i;
  }
  if (i2 < 0) throw DegenerateInput("all points collinear");
  Point3 nrm = cross(e1, pts[i2] - pts[i0]);
  double nn = std::sqrt(dot(nrm, nrm));
  nrm = {nrm.x / nn, nrm.y / nn, nrm.z / nn};
  for (int i = i2 + 1; i < n && i3 < 0; ++i) {
    if (std::abs(dot(nrm, pts[i] - pts[i0])) > eps) i3 = i;
  }
  if (i3 < 0) throw DegenerateInput("all points coplanar");

  Point3 interior = {(pts[i0].x + pts[i1].x + pts[i2].x + pts[i3].x) / 4,
                     (pts[i0].y + pts[i1].y + pts[i2].y + pts[i3].y) / 4,
                     (pts[i0].z + pts[i1].z + pts[i2].z + pts[i3].z) / 4};

  std::vector<WorkFacet> facets;
  auto make_facet = [&](int a, int b, int c) {
    Point3 nr = cross(pts[b] - pts[a], pts[c] - pts[a]);
    double len = std::sqrt(dot(nr, nr));
    WorkFacet f;
    if (len > 0) nr = {nr.x / len, nr.y / len, nr.z / len};
    f.n = nr;
    f.off = dot(nr, pts[a]);
    f.a = a; f.b = b; f.c = c;
    if (plane_dist(f, interior) > 0) {
      std::swap(f.b, f.c);
      f.n = {-f.n.x, -f.n.y, -f.n.z};
      f.off = -f.off;
    }
    return f;
  };
  facets.push_back(make_facet(i0, i1, i2));
  facets.push_back(make_facet(i0, i1, i3));
  facets.push_back(make_facet(i0, i2, i3));
  facets.push_back(make_facet(i1, i2, i3));

  std::map<std::pair<int, int>, int> edge_map;
  auto facet_edges = [](const WorkFacet& f) {
    return std::array<std::pair<int, int>, 3>{
        std::pair{f.a, f.b}, std::pair{f.b, f.c}, std::pair{f.c, f.a}};
  };

  for (int ip = 0; ip < n; ++ip) {
    if (ip == i0 || ip == i1 || ip == i2 || ip == i3) continue;
    const Point3& p = pts[ip];

    std::vector<int> visible;
    for (int fi = 0; fi < (int)facets.size(); ++fi) {
      if (facets[fi].alive && plane_dist(facets[fi], p) > eps) visible.push_back(fi);
    }
    if (visible.empty()) continue;  // inside or on the surface

    edge_map.clear();
    for (int fi = 0; fi < (int)facets.size(); ++fi) {
      if (!facets[fi].alive) continue;
      for (auto [u, v] : facet_edges(facets[fi])) edge_map[{u, v}] = fi;
    }
    for (int fi : visible) facets[fi].alive = false;

    // Horizon: directed edges of dead facets whose twin facet survives. New
    // facets keep the dead facet's edge direction, preserving orientation.
    for (int fi : visible) {
      for (auto [u, v] : facet_edges(facets[fi])) {
        auto it = edge_map.find({v, u});
        if (it != edge_map.end() && facets[it->second].alive) {
          facets.push_back(make_facet(u, v, ip));
        }
      }
    }
  }

  Polytope3 out;
  out.points = std::move(pts);
  for (const auto& f : facets) {
    if (f.alive) out.facets.push_back(HullFacet{{f.a, f.b, f.c}, f.n, f.off});
  }
  return out;
}

void validate_polytope(const Polytope3& poly, double slack) {
  double scale = 0.0;
  for (const auto& p : poly.points)
    scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  const double tol = slack * std::max(scale, 1e-30);

  // Closed 2-manifold: each directed edge appears exactly once and has a twin.
  std::set<std::pair<int, int>> edges;
  for (const auto& f : poly.facets) {
    std::array<std::pair<int, int>, 3> es{
        std::pair{f.v[0], f.v[1]}, std::pair{f.v[1], f.v[2]}, std::pair{f.v[2], f.v[0]}};
    for (auto e : es) {
      if (!edges.insert(e).second) throw Error("duplicate directed edge");
    }
  }
  for (auto [u, v] : edges) {
    if (!edges.count({v, u})) throw Error("boundary edge in closed polytope");
  }

  size_t V = poly.hull_vertex_indices().size();
  size_t E = edges.size() / 2;
  size_t F = poly.facets.size();
  if (V + F != 2 + E) throw Error("Euler characteristic violated");

  for (const auto& f : poly.facets) {
    for (const auto& p : poly.points) {
      if (dot(f.normal, p) - f.offset > tol) throw Error("point above facet plane");
    }
  }
}

UpperSurface upper_surface(const Polytope3& poly, double check_area,
                           double normal_z_tol) {
  UpperSurface s;
  for (const auto& f : poly.facets) {
    if (f.normal.z <= normal_z_tol) continue;
    SurfaceFacet sf;
    for (int k = 0; k < 3; ++k) {
      const Point3& p = poly.points[f.v[k]];
      sf.tri[k] = {p.x, p.y};
    }
    sf.gx = -f.normal.x / f.normal.z;
    sf.gy = -f.normal.y / f.normal.z;
    sf.offset = f.offset / f.normal.z;
    sf.area = 0.5 * std::abs(cross(sf.tri[1] - sf.tri[0], sf.tri[2] - sf.tri[0]));
    s.facets.push_back(sf);
    s.total_area += sf.area;
  }
  if (s.facets.empty()) throw EmptyUpperSurface("no facet faces upward");
  if (check_area > 0 && std::abs(s.total_area - check_area) > 1e-9 * check_area)
    throw Error("upper surface does not tile the base region");
  return s;
}

}  // namespace flatnewt
