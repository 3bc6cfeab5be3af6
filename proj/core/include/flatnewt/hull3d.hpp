#pragma once

#include <array>
#include <vector>

#include "flatnewt/geom2d.hpp"

namespace flatnewt {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(Point3 a, Point3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Triangular facet of a convex polytope; plane {p : <n, p> = offset} with n
// the outward unit normal.
struct HullFacet {
  std::array<int, 3> v;
  Point3 normal;
  double offset = 0.0;
};

// Simplicial convex polytope. `points` is the deduplicated input in
// lexicographic insertion order; facets reference it. Points strictly inside
// or on the surface simply go unreferenced.
struct Polytope3 {
  std::vector<Point3> points;
  std::vector<HullFacet> facets;

  std::vector<int> hull_vertex_indices() const;
};

// Incremental convex hull with deterministic lexicographic insertion.
// Near-coplanar sightings count as not-visible, so coplanar faces stay
// triangulated and repeated runs produce identical facet lists.
// Throws DegenerateInput when all points are coplanar.
Polytope3 convex_hull_3d(std::vector<Point3> pts);

// Consistency check used by tests: closed 2-manifold, Euler formula,
// every point on or below every facet plane within slack*scale.
void validate_polytope(const Polytope3& poly, double slack = 1e-10);

// Facet of the graph surface of a concave function: z = offset + g . (x,y)
// over a triangle in the plane.
struct SurfaceFacet {
  std::array<Point2, 3> tri;
  double gx = 0.0;
  double gy = 0.0;
  double offset = 0.0;
  double area = 0.0;  // projected (plane) area
};

struct UpperSurface {
  std::vector<SurfaceFacet> facets;
  double total_area = 0.0;

  bool empty() const { return facets.empty(); }
};

// Extracts facets whose outward unit normal has z-component above tol and
// projects them to the plane. When `check_area` is positive, the projected
// areas must tile it within relative 1e-9. Throws EmptyUpperSurface.
UpperSurface upper_surface(const Polytope3& poly, double check_area = -1.0,
                           double normal_z_tol = 1e-10);

}  // namespace flatnewt
