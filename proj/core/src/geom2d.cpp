#include "flatnewt/geom2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace flatnewt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-12;

double wrap_from(double t, double lo) {
  // Reduce t into [lo, lo + 2*pi).
  double s = std::fmod(t - lo, kTwoPi);
  if (s < 0) s += kTwoPi;
  return lo + s;
}

double shoelace(const std::vector<Point2>& pts) {
  double a = 0.0;
  size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& p = pts[i];
    const Point2& q = pts[(i + 1) % n];
    a += cross(p, q);
  }
  return 0.5 * a;
}

}  // namespace

bool Arc::contains_angle(double t, double angle_tol) const {
  double s = wrap_from(t, start_angle - angle_tol);
  return s <= end_angle + angle_tol;
}

Point2 piece_start(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->from;
  const Arc& a = std::get<Arc>(p);
  return a.point_at(a.start_angle);
}

Point2 piece_end(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return s->to;
  const Arc& a = std::get<Arc>(p);
  return a.point_at(a.end_angle);
}

double piece_length(const BoundaryPiece& p) {
  if (const auto* s = std::get_if<Segment>(&p)) return dist(s->from, s->to);
  return std::get<Arc>(p).length();
}

Domain Domain::build(std::vector<BoundaryPiece> pieces, int n_poly) {
  if (pieces.empty()) throw DegenerateDomain("empty boundary");
  if (n_poly < 3) n_poly = 3;

  // Bounding box over control geometry, for scale-relative tolerances.
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_y;
  auto grow = [&](Point2 p) {
    lo_x = std::min(lo_x, p.x); lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x); hi_y = std::max(hi_y, p.y);
  };
  for (const auto& p : pieces) {
    grow(piece_start(p));
    grow(piece_end(p));
    if (const auto* a = std::get_if<Arc>(&p)) {
      // An arc's bbox extremes beyond its endpoints sit at the cardinal
      // directions its sweep passes through.
      for (int q = 0; q < 4; ++q) {
        double ang = q * (kTwoPi / 4.0);
        if (a->contains_angle(ang, 0.0)) grow(a->point_at(ang));
      }
    }
  }
  double scale = std::hypot(hi_x - lo_x, hi_y - lo_y);
  if (!(scale > 0) || !std::isfinite(scale)) throw DegenerateDomain("zero extent");
  const double tol = kRelTol * scale;

  // Per-piece invariants.
  for (const auto& p : pieces) {
    if (const auto* s = std::get_if<Segment>(&p)) {
      if (dist(s->from, s->to) <= tol) throw DegenerateDomain("zero-length segment");
    } else {
      const Arc& a = std::get<Arc>(p);
      if (!(a.radius > 0)) throw DegenerateDomain("non-positive arc radius");
      double sw = a.sweep();
      if (!(sw > 0) || sw > kTwoPi + 1e-12)
        throw DegenerateDomain("arc sweep outside (0, 2*pi]");
    }
  }

  // Closure: each piece must start where the previous one ends.
  size_t n = pieces.size();
  for (size_t i = 0; i < n; ++i) {
    Point2 e = piece_end(pieces[i]);
    Point2 s = piece_start(pieces[(i + 1) % n]);
    if (dist(e, s) > tol) throw OpenBoundary("boundary pieces do not close up");
  }

  // Polygonization: piece junctions exactly; arcs subdivided by arc length
  // so the total vertex count reaches n_poly whenever arcs are present.
  double total_arc_len = 0.0;
  for (const auto& p : pieces)
    if (std::holds_alternative<Arc>(p)) total_arc_len += piece_length(p);

  std::vector<Point2> poly;
  for (const auto& p : pieces) {
    poly.push_back(piece_start(p));
    if (const auto* a = std::get_if<Arc>(&p)) {
      int m = std::max(4, (int)std::ceil(n_poly * (a->length() / total_arc_len)));
      for (int k = 1; k < m; ++k) {
        double t = a->start_angle + a->sweep() * (double(k) / m);
        poly.push_back(a->point_at(t));
      }
    }
  }
  // Drop duplicate junctions (a full-circle arc closes onto itself).
  std::vector<Point2> dedup;
  for (const auto& p : poly) {
    if (dedup.empty() || dist(dedup.back(), p) > tol) dedup.push_back(p);
  }
  if (dedup.size() >= 2 && dist(dedup.front(), dedup.back()) <= tol) dedup.pop_back();
  poly = std::move(dedup);
  if (poly.size() < 3) throw DegenerateDomain("polygonization collapsed");

  double poly_area = shoelace(poly);
  if (poly_area < 0) throw NonConvexBoundary("boundary is oriented clockwise");

  // Convexity: every polygon turn is a (weak) left turn.
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    Vec2 e1 = poly[(i + 1) % m] - poly[i];
    Vec2 e2 = poly[(i + 2) % m] - poly[(i + 1) % m];
    if (cross(e1, e2) < -kRelTol * scale * scale)
      throw NonConvexBoundary("right turn in boundary polygonization");
  }

  // Exact area: corner polygon plus circular-segment corrections.
  std::vector<Point2> corners;
  for (const auto& p : pieces) corners.push_back(piece_start(p));
  double area = corners.size() >= 3 ? shoelace(corners) : 0.0;
  for (const auto& p : pieces) {
    if (const auto* a = std::get_if<Arc>(&p)) {
      double sw = a->sweep();
      area += 0.5 * a->radius * a->radius * (sw - std::sin(sw));
    }
  }
  if (area <= tol * scale) throw DegenerateDomain("vanishing area");

  Domain d;
  d.pieces_ = std::move(pieces);
  d.polygon_ = std::move(poly);
  d.n_poly_ = n_poly;
  d.area_ = area;
  d.polygon_area_ = poly_area;
  d.bbox_min_ = {lo_x, lo_y};
  d.bbox_max_ = {hi_x, hi_y};
  d.scale_ = scale;
  d.tol_ = tol;
  double cx = 0, cy = 0;
  for (size_t i = 0; i < d.polygon_.size(); ++i) {
    const Point2& p = d.polygon_[i];
    const Point2& q = d.polygon_[(i + 1) % d.polygon_.size()];
    double w = cross(p, q);
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  d.centroid_ = {cx / (6.0 * poly_area), cy / (6.0 * poly_area)};
  return d;
}

double Domain::interior_margin(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  size_t n = polygon_.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 e = polygon_[(i + 1) % n] - polygon_[i];
    double len = norm(e);
    if (len <= 0) continue;
    best = std::min(best, cross(e, p - polygon_[i]) / len);
  }
  return best;
}

int Domain::nearest_edge(Point2 p) const {
  double best = std::numeric_limits<double>::infinity();
  int idx = 0;
  size_t n = polygon_.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 e = polygon_[(i + 1) % n] - polygon_[i];
    double len = norm(e);
    if (len <= 0) continue;
    double d = cross(e, p - polygon_[i]) / len;
    if (d < best) { best = d; idx = (int)i; }
  }
  return idx;
}

namespace {

struct SupportCandidate {
  double value;
  Point2 point;
};

void piece_support(const BoundaryPiece& p, Vec2 d, std::vector<SupportCandidate>& out) {
  if (const auto* s = std::get_if<Segment>(&p)) {
    out.push_back({dot(s->from, d), s->from});
    out.push_back({dot(s->to, d), s->to});
    return;
  }
  const Arc& a = std::get<Arc>(p);
  out.push_back({dot(a.point_at(a.start_angle), d), a.point_at(a.start_angle)});
  out.push_back({dot(a.point_at(a.end_angle), d), a.point_at(a.end_angle)});
  double theta = std::atan2(d.y, d.x);
  if (a.contains_angle(theta)) {
    Point2 q = {a.center.x + a.radius * d.x, a.center.y + a.radius * d.y};
    out.push_back({dot(q, d), q});
  }
}

}  // namespace

double support_value(const Domain& dom, double angle) {
  Vec2 d = dir_of(angle);
  std::vector<SupportCandidate> cands;
  for (const auto& p : dom.pieces()) piece_support(p, d, cands);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::max(best, c.value);
  return best;
}

SupportInfo support_line(const Domain& dom, double angle) {
  Vec2 d = dir_of(angle);
  std::vector<SupportCandidate> cands;
  for (const auto& p : dom.pieces()) piece_support(p, d, cands);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cands) best = std::max(best, c.value);

  // All contact candidates within tolerance of the maximum, spread along the
  // line direction. Convexity makes the contact a point or a single edge.
  Vec2 t = perp(d);
  std::vector<Point2> hits;
  for (const auto& c : cands) {
    if (c.value >= best - dom.tol()) {
      bool dup = false;
      for (const auto& h : hits)
        if (dist(h, c.point) <= dom.tol()) { dup = true; break; }
      if (!dup) hits.push_back(c.point);
    }
  }
  SupportInfo info;
  info.angle = angle;
  info.offset = best;
  if (hits.size() == 1) {
    info.contact = hits[0];
  } else {
    auto lo = std::min_element(hits.begin(), hits.end(),
                               [&](Point2 a, Point2 b) { return dot(a, t) < dot(b, t); });
    auto hi = std::max_element(hits.begin(), hits.end(),
                               [&](Point2 a, Point2 b) { return dot(a, t) < dot(b, t); });
    info.contact = Segment{*lo, *hi};
  }
  return info;
}

std::string to_string(ContactKind k) {
  switch (k) {
    case ContactKind::Angular: return "Angular";
    case ContactKind::Tangent: return "Tangent";
    case ContactKind::HalfTangent: return "HalfTangent";
    case ContactKind::EdgeContact: return "EdgeContact";
  }
  return "?";
}

namespace {

// One-sided boundary directions at the junction shared by pieces
// (prev -> next): forward along next, backward along prev.
std::array<Vec2, 2> junction_cone(const BoundaryPiece& prev, const BoundaryPiece& next) {
  Vec2 fwd, bwd;
  if (const auto* s = std::get_if<Segment>(&next)) fwd = normalized(s->to - s->from);
  else {
    const Arc& a = std::get<Arc>(next);
    fwd = a.tangent_at(a.start_angle);
  }
  if (const auto* s = std::get_if<Segment>(&prev)) bwd = normalized(s->from - s->to);
  else {
    const Arc& a = std::get<Arc>(prev);
    bwd = -1.0 * a.tangent_at(a.end_angle);
  }
  return {fwd, bwd};
}

}  // namespace

AngularVerdict classify_vertical_support(const Domain& dom, Side side) {
  double angle = (side == Side::Right) ? 0.0 : kPi;
  SupportInfo info = support_line(dom, angle);

  AngularVerdict v;
  if (!info.point_contact()) {
    v.kind = ContactKind::EdgeContact;
    v.contact_edge = std::get<Segment>(info.contact);
    v.contact_point = 0.5 * (v.contact_edge->from + v.contact_edge->to);
    return v;
  }
  Point2 xi = info.contact_point();
  v.contact_point = xi;

  const auto& pieces = dom.pieces();
  const double tol = dom.tol();

  // Arc-interior contact is a smooth point: the support line is the tangent.
  for (const auto& p : pieces) {
    const auto* a = std::get_if<Arc>(&p);
    if (!a) continue;
    if (std::abs(dist(xi, a->center) - a->radius) > tol) continue;
    double t = std::atan2(xi.y - a->center.y, xi.x - a->center.x);
    double atol = tol / a->radius;
    if (a->contains_angle(t, atol)) {
      bool at_start = dist(xi, a->point_at(a->start_angle)) <= tol;
      bool at_end = dist(xi, a->point_at(a->end_angle)) <= tol;
      if (!at_start && !at_end) {
        v.kind = ContactKind::Tangent;
        return v;
      }
    }
  }

  // Junction contact: locate the junction index and take one-sided tangents.
  size_t n = pieces.size();
  size_t jbest = 0;
  double dbest = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < n; ++j) {
    double d = dist(xi, piece_start(pieces[j]));
    if (d < dbest) { dbest = d; jbest = j; }
  }
  const BoundaryPiece& next = pieces[jbest];
  const BoundaryPiece& prev = pieces[(jbest + n - 1) % n];
  auto cone = junction_cone(prev, next);
  v.cone = cone;

  double cr = cross(cone[0], cone[1]);
  double dt = dot(cone[0], cone[1]);
  if (std::abs(cr) <= 1e-9 && dt < 0) {
    // Equal one-sided tangents: a smooth point encoded as a junction.
    v.kind = ContactKind::Tangent;
    return v;
  }
  double ax = std::abs(cone[0].x), bx = std::abs(cone[1].x);
  if (ax <= 1e-9 || bx <= 1e-9) {
    v.kind = ContactKind::HalfTangent;
    v.margin = std::min(ax, bx);
    return v;
  }
  v.kind = ContactKind::Angular;
  v.margin = std::min(ax, bx);
  return v;
}

Domain translated(const Domain& dom, Vec2 t) {
  std::vector<BoundaryPiece> out;
  for (const auto& p : dom.pieces()) {
    if (const auto* s = std::get_if<Segment>(&p)) out.push_back(Segment{s->from + t, s->to + t});
    else {
      Arc a = std::get<Arc>(p);
      a.center = a.center + t;
      out.push_back(a);
    }
  }
  return Domain::build(std::move(out), dom.n_poly());
}

Domain scaled(const Domain& dom, double s) {
  if (!(s > 0)) throw ValidationError("scale factor must be positive");
  std::vector<BoundaryPiece> out;
  for (const auto& p : dom.pieces()) {
    if (const auto* sg = std::get_if<Segment>(&p)) out.push_back(Segment{s * sg->from, s * sg->to});
    else {
      Arc a = std::get<Arc>(p);
      a.center = s * a.center;
      a.radius *= s;
      out.push_back(a);
    }
  }
  return Domain::build(std::move(out), dom.n_poly());
}

Domain rotated(const Domain& dom, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](Point2 p) { return Point2{c * p.x - s * p.y, s * p.x + c * p.y}; };
  std::vector<BoundaryPiece> out;
  for (const auto& p : dom.pieces()) {
    if (const auto* sg = std::get_if<Segment>(&p)) out.push_back(Segment{rot(sg->from), rot(sg->to)});
    else {
      Arc a = std::get<Arc>(p);
      a.center = rot(a.center);
      a.start_angle += angle;
      a.end_angle += angle;
      out.push_back(a);
    }
  }
  return Domain::build(std::move(out), dom.n_poly());
}

Domain swapped_xy(const Domain& dom) {
  // (x,y) -> (y,x) reverses orientation; traverse pieces backwards.
  auto sw = [](Point2 p) { return Point2{p.y, p.x}; };
  std::vector<BoundaryPiece> out;
  const auto& ps = dom.pieces();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    if (const auto* sg = std::get_if<Segment>(&*it)) {
      out.push_back(Segment{sw(sg->to), sw(sg->from)});
    } else {
      const Arc& a = std::get<Arc>(*it);
      // Point at angle t maps to angle pi/2 - t; direction of traversal flips
      // twice (swap + reversal), staying counterclockwise.
      Arc b;
      b.center = sw(a.center);
      b.radius = a.radius;
      b.start_angle = kPi / 2 - a.end_angle;
      b.end_angle = b.start_angle + a.sweep();
      out.push_back(b);
    }
  }
  return Domain::build(std::move(out), dom.n_poly());
}

Domain sheared_y(const Domain& dom, double c_half) {
  auto sh = [&](Point2 p) { return Point2{p.x, p.y - c_half * p.x}; };
  std::vector<BoundaryPiece> out;
  bool exact = std::abs(c_half) == 0.0;
  for (const auto& p : dom.pieces()) {
    if (const auto* sg = std::get_if<Segment>(&p)) {
      out.push_back(Segment{sh(sg->from), sh(sg->to)});
    } else if (exact) {
      out.push_back(p);
    } else {
      // Sheared circles are ellipses; fall back to the polygonized arc.
      const Arc& a = std::get<Arc>(p);
      int m = std::max(8, (int)std::ceil(dom.n_poly() * a.length() /
                                         (kTwoPi * a.radius)) * 4);
      Point2 prev = sh(a.point_at(a.start_angle));
      for (int k = 1; k <= m; ++k) {
        Point2 q = sh(a.point_at(a.start_angle + a.sweep() * (double(k) / m)));
        out.push_back(Segment{prev, q});
        prev = q;
      }
    }
  }
  return Domain::build(std::move(out), dom.n_poly());
}

NormalizedDomain normalize(const Domain& dom) {
  SupportInfo left = support_line(dom, kPi);
  SupportInfo right = support_line(dom, 0.0);
  if (!left.point_contact() || !right.point_contact())
    throw NonPointContact("vertical support line touches along an edge");
  Point2 L = left.contact_point();
  Point2 R = right.contact_point();
  double width = R.x - L.x;
  if (width <= dom.tol()) throw DegenerateDomain("zero horizontal extent");

  double s = 2.0 / width;
  double c = s * (R.y - L.y);

  Domain placed = scaled(translated(dom, {-L.x, -L.y}), s);
  Domain out = (std::abs(c) > kRelTol) ? sheared_y(placed, c / 2.0) : placed;

  return NormalizedDomain{std::move(out), {-L.x, -L.y}, s, c};
}

namespace {

// Angle between a direction and the vertical line, in [0, pi/2].
double angle_to_vertical(Vec2 u) {
  double n = norm(u);
  if (n <= 0) return 0.0;
  double c = std::min(1.0, std::abs(u.y) / n);
  return std::acos(c);
}

double min_corner_angle(const AngularVerdict& v) {
  const auto& cone = *v.cone;
  return std::min(angle_to_vertical(cone[0]), angle_to_vertical(cone[1]));
}

}  // namespace

// Directional width maximized by scan plus local ternary refinement.
double diameter(const Domain& dom) {
  auto width = [&](double th) {
    return support_value(dom, th) + support_value(dom, th + kPi);
  };
  const int N = 2048;
  double best = -1, best_th = 0;
  for (int i = 0; i < N; ++i) {
    double th = kPi * i / N;
    double w = width(th);
    if (w > best) { best = w; best_th = th; }
  }
  double lo = best_th - kPi / N, hi = best_th + kPi / N;
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (width(m1) < width(m2)) lo = m1; else hi = m2;
  }
  return std::max(best, width(0.5 * (lo + hi)));
}

GeometricConstants geometric_constants(const Domain& dom) {
  AngularVerdict vl = classify_vertical_support(dom, Side::Left);
  AngularVerdict vr = classify_vertical_support(dom, Side::Right);
  if (vl.kind != ContactKind::Angular || vr.kind != ContactKind::Angular)
    throw NotAngular("a vertical support line is not angular");

  GeometricConstants g;
  g.alpha = std::min({min_corner_angle(vl), min_corner_angle(vr), kPi / 4});
  g.area = dom.area();
  g.h = diameter(dom);

  // beta: infimum of tangent-to-vertical angles across the boundary. For
  // arcs the tangent at parameter t is (-sin t, cos t); its angle to the
  // vertical is acos(|cos t|), minimized where |cos t| peaks.
  double beta = kPi / 2;
  for (const auto& p : dom.pieces()) {
    if (const auto* s = std::get_if<Segment>(&p)) {
      beta = std::min(beta, angle_to_vertical(s->to - s->from));
    } else {
      const Arc& a = std::get<Arc>(p);
      double best_cos = std::max(std::abs(std::cos(a.start_angle)),
                                 std::abs(std::cos(a.end_angle)));
      double k0 = std::ceil(a.start_angle / kPi);
      for (double k = k0; k * kPi <= a.end_angle; k += 1.0) best_cos = 1.0;
      beta = std::min(beta, std::acos(std::min(1.0, best_cos)));
    }
  }
  g.beta = beta;

  // Corner slopes in normalized coordinates: uniform scaling keeps slopes,
  // the shear y -> y - (c/2) x subtracts c/2.
  NormalizedDomain nd = normalize(dom);
  auto corner_m = [&](const AngularVerdict& v) {
    const auto& cone = *v.cone;
    double m = 0;
    for (const Vec2& u : cone) {
      if (std::abs(u.x) <= 1e-15) return std::numeric_limits<double>::infinity();
      m = std::max(m, std::abs(u.y / u.x - nd.shear_c / 2.0));
    }
    return m;
  };
  g.m_left = corner_m(vl);
  g.m_right = corner_m(vr);
  return g;
}

namespace gen {

Domain disk(double radius, int n_poly) {
  Arc a{{0, 0}, radius, 0.0, kTwoPi};
  return Domain::build({a}, n_poly);
}

Domain half_disk(double radius, int n_poly) {
  Segment base{{-radius, 0}, {radius, 0}};
  Arc a{{0, 0}, radius, 0.0, kPi};
  return Domain::build({base, a}, n_poly);
}

Domain diamond(int n_poly) {
  return Domain::build({Segment{{1, 0}, {0, 1}}, Segment{{0, 1}, {-1, 0}},
                        Segment{{-1, 0}, {0, -1}}, Segment{{0, -1}, {1, 0}}},
                       n_poly);
}

Domain square(int n_poly) { return rectangle(1.0, 1.0, n_poly); }

Domain rectangle(double w, double h, int n_poly) {
  if (!(w > 0) || !(h > 0)) throw ValidationError("rectangle sides must be positive");
  return Domain::build({Segment{{0, 0}, {w, 0}}, Segment{{w, 0}, {w, h}},
                        Segment{{w, h}, {0, h}}, Segment{{0, h}, {0, 0}}},
                       n_poly);
}

Domain regular_ngon(int n, double rotation, int n_poly) {
  if (n < 3) throw ValidationError("regular_ngon needs n >= 3");
  std::vector<BoundaryPiece> pieces;
  for (int k = 0; k < n; ++k) {
    double t0 = rotation + kTwoPi * k / n;
    double t1 = rotation + kTwoPi * (k + 1) / n;
    pieces.push_back(Segment{dir_of(t0), dir_of(t1)});
  }
  return Domain::build(std::move(pieces), n_poly);
}

Domain triangle(Point2 p1, Point2 p2, Point2 p3, int n_poly) {
  if (cross(p2 - p1, p3 - p1) < 0) std::swap(p2, p3);
  return Domain::build({Segment{p1, p2}, Segment{p2, p3}, Segment{p3, p1}}, n_poly);
}

Domain ellipse(double a, double b, int n_arcs, int n_poly) {
  if (!(a > 0) || !(b > 0)) throw ValidationError("ellipse semi-axes must be positive");
  if (n_arcs < 8) n_arcs = 8;
  // Tangent-continuous arc spline through samples offset from the axis
  // extremes, so vertical support contacts land in arc interiors.
  std::vector<Point2> pts(n_arcs + 1);
  for (int k = 0; k <= n_arcs; ++k) {
    double t = kTwoPi * (k + 0.5) / n_arcs;
    pts[k] = {a * std::cos(t), b * std::sin(t)};
  }
  pts[n_arcs] = pts[0];
  double t0 = kTwoPi * 0.5 / n_arcs;
  Vec2 dir = normalized({-a * std::sin(t0), b * std::cos(t0)});

  std::vector<BoundaryPiece> pieces;
  for (int k = 0; k < n_arcs; ++k) {
    Point2 A = pts[k], B = pts[k + 1];
    Vec2 ch = B - A;
    double beta = std::atan2(cross(dir, ch), dot(dir, ch));
    if (std::abs(beta) < 1e-12) {
      pieces.push_back(Segment{A, B});
    } else {
      double R = norm(ch) / (2.0 * std::sin(beta));
      Point2 center = A + R * perp(dir);
      double start = std::atan2(A.y - center.y, A.x - center.x);
      Arc arc{center, std::abs(R), start, start + 2 * beta};
      pieces.push_back(arc);
      dir = {std::cos(2 * beta) * dir.x - std::sin(2 * beta) * dir.y,
             std::sin(2 * beta) * dir.x + std::cos(2 * beta) * dir.y};
      continue;
    }
    dir = normalized(ch);
  }
  return Domain::build(std::move(pieces), n_poly);
}

}  // namespace gen

Domain make_generated_domain(const std::string& spec, int n_poly) {
  std::string name = spec;
  std::vector<double> args;
  auto lp = spec.find('(');
  if (lp != std::string::npos) {
    if (spec.back() != ')') throw ParseError("generator spec missing ')': " + spec);
    name = spec.substr(0, lp);
    std::string inner = spec.substr(lp + 1, spec.size() - lp - 2);
    std::stringstream ss(inner);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        args.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ParseError("bad generator argument '" + tok + "' in " + spec);
      }
    }
  }
  auto want = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw ParseError("wrong argument count for generator " + name);
  };
  if (name == "disk") { want(0, 1); return gen::disk(args.empty() ? 1.0 : args[0], n_poly); }
  if (name == "half_disk") { want(0, 1); return gen::half_disk(args.empty() ? 1.0 : args[0], n_poly); }
  if (name == "diamond") { want(0, 0); return gen::diamond(n_poly); }
  if (name == "square") { want(0, 0); return gen::square(n_poly); }
  if (name == "rectangle") { want(2, 2); return gen::rectangle(args[0], args[1], n_poly); }
  if (name == "regular_ngon") {
    want(1, 2);
    return gen::regular_ngon((int)std::lround(args[0]), args.size() > 1 ? args[1] : 0.0, n_poly);
  }
  if (name == "triangle") {
    want(6, 6);
    return gen::triangle({args[0], args[1]}, {args[2], args[3]}, {args[4], args[5]}, n_poly);
  }
  if (name == "ellipse") {
    want(2, 3);
    return gen::ellipse(args[0], args[1], args.size() > 2 ? (int)std::lround(args[2]) : 32, n_poly);
  }
  throw ParseError("unknown generator: " + name);
}

}  // namespace flatnewt
