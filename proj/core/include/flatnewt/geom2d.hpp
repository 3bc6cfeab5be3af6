#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flatnewt/errors.hpp"

namespace flatnewt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};
using Vec2 = Point2;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(b - a); }
// Left-hand normal; rotating a by +90 degrees.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0 ? Vec2{a.x / n, a.y / n} : Vec2{0, 0};
}
inline Vec2 dir_of(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct Segment {
  Point2 from;
  Point2 to;
};

// Circular arc traversed counterclockwise; end_angle > start_angle and the
// sweep is at most a full turn (exactly 2*pi encodes a full circle).
struct Arc {
  Point2 center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = 0.0;

  double sweep() const { return end_angle - start_angle; }
  double length() const { return radius * sweep(); }
  Point2 point_at(double t) const {
    return {center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
  }
  // Unit tangent in traversal direction.
  Vec2 tangent_at(double t) const { return {-std::sin(t), std::cos(t)}; }
  // Reduces t to [start_angle, start_angle + 2*pi) and tests membership.
  bool contains_angle(double t, double angle_tol = 0.0) const;
};

using BoundaryPiece = std::variant<Segment, Arc>;

Point2 piece_start(const BoundaryPiece& p);
Point2 piece_end(const BoundaryPiece& p);
double piece_length(const BoundaryPiece& p);

// Closed convex region bounded by counterclockwise segments and arcs.
// Validation and the inscribed polygonization happen at build time; the
// polygonization carries every piece junction exactly and distributes at
// least n_poly vertices over arcs by arc length. Pure polygons keep just
// their corners so facet counts downstream stay canonical.
class Domain {
public:
  static Domain build(std::vector<BoundaryPiece> pieces, int n_poly = 512);

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  const std::vector<Point2>& polygon() const { return polygon_; }
  int n_poly() const { return n_poly_; }

  double area() const { return area_; }                  // exact from pieces
  double polygon_area() const { return polygon_area_; }  // inscribed polygon
  // Bounding-box corners and diagonal; the diagonal sets absolute tolerances.
  Point2 bbox_min() const { return bbox_min_; }
  Point2 bbox_max() const { return bbox_max_; }
  double scale() const { return scale_; }
  double tol() const { return tol_; }

  Point2 centroid() const { return centroid_; }

  // Signed distance from p to the polygon boundary, positive inside.
  double interior_margin(Point2 p) const;
  // Index of the polygon edge attaining interior_margin.
  int nearest_edge(Point2 p) const;
  bool contains(Point2 p) const { return interior_margin(p) >= -tol_; }
  bool strictly_inside(Point2 p, double margin) const {
    return interior_margin(p) > margin;
  }

private:
  Domain() = default;
  std::vector<BoundaryPiece> pieces_;
  std::vector<Point2> polygon_;
  int n_poly_ = 0;
  double area_ = 0.0;
  double polygon_area_ = 0.0;
  Point2 bbox_min_, bbox_max_;
  double scale_ = 0.0;
  double tol_ = 0.0;
  Point2 centroid_;
};

// Support line with outward normal dir_of(angle): {p : <p,d> = offset}.
struct SupportInfo {
  double angle = 0.0;
  double offset = 0.0;
  std::variant<Point2, Segment> contact;

  bool point_contact() const { return std::holds_alternative<Point2>(contact); }
  Point2 contact_point() const { return std::get<Point2>(contact); }
};

SupportInfo support_line(const Domain& dom, double angle);
// Support function value h(d) = max over the boundary of <p, d>.
double support_value(const Domain& dom, double angle);

enum class Side { Left, Right };

enum class ContactKind {
  Angular,      // single-point contact, proper tangent cone, no vertical edge
  Tangent,      // contact at a smooth boundary point (arc interior or flat junction)
  HalfTangent,  // junction with one vertical one-sided tangent
  EdgeContact,  // a vertical boundary edge lies on the support line
};

std::string to_string(ContactKind k);

struct AngularVerdict {
  ContactKind kind = ContactKind::Tangent;
  Point2 contact_point;
  // One-sided boundary directions leaving the contact point (present for
  // point contacts at junctions). cone[0] continues the boundary forward,
  // cone[1] runs backward along the incoming piece.
  std::optional<std::array<Vec2, 2>> cone;
  std::optional<Segment> contact_edge;  // EdgeContact only
  // Angular margin: smallest |x|-component among cone directions (how far
  // the cone stays clear of vertical). Zero when not applicable.
  double margin = 0.0;
};

AngularVerdict classify_vertical_support(const Domain& dom, Side side);

// Affine placement with leftmost point at the origin, x-width 2, and the
// rightmost point sheared down to (2, 0). Applied as translate, then uniform
// scale, then the shear y -> y - (c/2) x.
struct NormalizedDomain {
  Domain domain;
  Vec2 translation;    // applied before scaling
  double scale = 1.0;
  double shear_c = 0.0;
};

NormalizedDomain normalize(const Domain& dom);

// Constants entering the closed-form upper bounds; requires both vertical
// support lines Angular.
struct GeometricConstants {
  double alpha = 0.0;   // containment cone half-angle from vertical, <= pi/4
  double beta = 0.0;    // min tangent-to-vertical angle over the boundary
  double h = 0.0;       // diameter
  double area = 0.0;    // exact area
  double m_left = 0.0;  // max |corner slope| after normalization, left corner
  double m_right = 0.0;
};

GeometricConstants geometric_constants(const Domain& dom);

// Largest distance between two boundary points (the maximal directional
// width), found by a dense direction scan with local refinement.
double diameter(const Domain& dom);

// Exact piece-wise transforms. Each rebuilds and revalidates the domain.
Domain translated(const Domain& dom, Vec2 t);
Domain scaled(const Domain& dom, double s);
Domain rotated(const Domain& dom, double angle);
Domain swapped_xy(const Domain& dom);
// y -> y - c_half * x. Arc pieces do not survive a shear exactly; they are
// replaced by their polygonization segments when c_half != 0.
Domain sheared_y(const Domain& dom, double c_half);

namespace gen {
Domain disk(double radius = 1.0, int n_poly = 512);
Domain half_disk(double radius = 1.0, int n_poly = 512);
Domain diamond(int n_poly = 512);
Domain square(int n_poly = 512);
Domain rectangle(double w, double h, int n_poly = 512);
Domain regular_ngon(int n, double rotation = 0.0, int n_poly = 512);
Domain triangle(Point2 p1, Point2 p2, Point2 p3, int n_poly = 512);
Domain ellipse(double a, double b, int n_arcs = 32, int n_poly = 512);
}  // namespace gen

// Parses generator specs of the form "name" or "name(arg,...)", e.g.
// "disk", "rectangle(2,1)", "triangle(0,0,4,2,2,3)". Throws ParseError.
Domain make_generated_domain(const std::string& spec, int n_poly = 512);

}  // namespace flatnewt
