#include "flatnewt/concave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace flatnewt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

HullFunction HullFunction::build(std::shared_ptr<const Domain> dom,
                                 std::vector<Apex> apexes) {
  if (!dom) throw ValidationError("null domain");
  if (apexes.empty()) return zero(std::move(dom));
  for (const auto& a : apexes) {
    if (!(a.height > 0)) throw ValidationError("apex height must be positive");
    if (!dom->strictly_inside(a.pos, dom->tol()))
      throw ApexOutsideDomain("apex not strictly inside the domain");
  }
  std::vector<Point3> pts;
  pts.reserve(dom->polygon().size() + apexes.size());
  for (const auto& p : dom->polygon()) pts.push_back({p.x, p.y, 0.0});
  for (const auto& a : apexes) pts.push_back({a.pos.x, a.pos.y, a.height});

  Polytope3 poly = convex_hull_3d(std::move(pts));
  HullFunction u;
  u.dom_ = std::move(dom);
  u.apexes_ = std::move(apexes);
  u.surface_ = upper_surface(poly, u.dom_->polygon_area());
  return u;
}

HullFunction HullFunction::zero(std::shared_ptr<const Domain> dom) {
  if (!dom) throw ValidationError("null domain");
  HullFunction u;
  u.dom_ = std::move(dom);
  return u;
}

double HullFunction::max_height() const {
  double m = 0.0;
  for (const auto& a : apexes_) m = std::max(m, a.height);
  return m;
}

double HullFunction::eval(Point2 p) const {
  if (!dom_->contains(p)) throw PointOutsideDomain("eval outside the domain");
  if (is_zero()) return 0.0;
  double v = std::numeric_limits<double>::infinity();
  for (const auto& f : surface_.facets)
    v = std::min(v, f.offset + f.gx * p.x + f.gy * p.y);
  return v;
}

std::optional<Vec2> HullFunction::gradient(Point2 p, double edge_tol) const {
  if (!dom_->contains(p)) throw PointOutsideDomain("gradient outside the domain");
  if (is_zero()) return Vec2{0.0, 0.0};
  const double tol = edge_tol * dom_->scale();
  for (const auto& f : surface_.facets) {
    // Signed edge distances; all nonnegative means p is inside the triangle.
    double d0 = cross(f.tri[1] - f.tri[0], p - f.tri[0]) / dist(f.tri[0], f.tri[1]);
    double d1 = cross(f.tri[2] - f.tri[1], p - f.tri[1]) / dist(f.tri[1], f.tri[2]);
    double d2 = cross(f.tri[0] - f.tri[2], p - f.tri[2]) / dist(f.tri[2], f.tri[0]);
    double dmin = std::min({d0, d1, d2});
    if (dmin < -tol) continue;
    if (dmin <= tol) return std::nullopt;  // on a facet boundary
    return Vec2{f.gx, f.gy};
  }
  // Inside the domain but outside every projected facet: a polygonization
  // sliver along a curved boundary; treat like a boundary point.
  return std::nullopt;
}

HullFunction tent(std::shared_ptr<const Domain> dom, Point2 apex, double height) {
  return HullFunction::build(std::move(dom), {Apex{apex, height}});
}

double c1_norm(const HullFunction& u) {
  double gx = 0.0, gy = 0.0;
  for (const auto& f : u.surface().facets) {
    gx = std::max(gx, std::abs(f.gx));
    gy = std::max(gy, std::abs(f.gy));
  }
  return u.max_height() + gx + gy;
}

namespace {

double wrap_pm_pi(double t) {
  double s = std::fmod(t, kTwoPi);
  if (s <= -kPi) s += kTwoPi;
  if (s > kPi) s -= kTwoPi;
  return s;
}

// Exact intersection points of the line {p : <p,d> = c} with the boundary.
std::vector<Point2> line_boundary_hits(const Domain& dom, Vec2 d, double c) {
  std::vector<Point2> hits;
  auto push = [&](Point2 p) {
    for (const auto& q : hits)
      if (dist(p, q) <= dom.tol()) return;
    hits.push_back(p);
  };
  for (const auto& piece : dom.pieces()) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      double va = dot(s->from, d) - c;
      double vb = dot(s->to, d) - c;
      if ((va > 0 && vb > 0) || (va < 0 && vb < 0)) continue;
      double denom = va - vb;
      if (std::abs(denom) < 1e-300) continue;  // segment runs along the line
      double t = va / denom;
      if (t < -1e-12 || t > 1 + 1e-12) continue;
      push(s->from + t * (s->to - s->from));
    } else {
      const Arc& a = std::get<Arc>(piece);
      // <center + R(cos t, sin t), d> = c  =>  cos(t - theta_d) = q
      double theta_d = std::atan2(d.y, d.x);
      double q = (c - dot(a.center, d)) / a.radius;
      if (std::abs(q) > 1.0) continue;
      double delta = std::acos(std::clamp(q, -1.0, 1.0));
      for (double t : {theta_d + delta, theta_d - delta}) {
        double atol = dom.tol() / a.radius;
        if (a.contains_angle(t, atol)) push(a.point_at(t));
      }
    }
  }
  return hits;
}

}  // namespace

double support_complement_distance(const Domain& dom, Point2 xi, double phi, Side side) {
  double base = (side == Side::Right) ? 0.0 : kPi;
  // Minimize h(alpha) - <xi, d(alpha)> over |alpha - base| in [phi, pi];
  // a dense scan plus ternary refinement reaches well past the needed
  // accuracy since the objective is piecewise smooth.
  auto f = [&](double rel) {
    double ang = base + rel;
    return support_value(dom, ang) - dot(xi, dir_of(ang));
  };
  const int N = 2048;
  double best = std::numeric_limits<double>::infinity(), best_rel = phi;
  for (int i = 0; i <= N; ++i) {
    double mag = phi + (kPi - phi) * (double(i) / N);
    for (double rel : {mag, -mag}) {
      double v = f(rel);
      if (v < best) { best = v; best_rel = rel; }
    }
  }
  double step = (kPi - phi) / N;
  double lo = best_rel - step, hi = best_rel + step;
  // Keep |rel| >= phi while refining.
  auto clampd = [&](double rel) {
    if (best_rel >= 0) return std::max(rel, phi);
    return std::min(rel, -phi);
  };
  lo = clampd(lo); hi = clampd(hi);
  for (int it = 0; it < 120; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f(m1) > f(m2)) lo = m1; else hi = m2;
  }
  best = std::min(best, f(0.5 * (lo + hi)));
  return std::max(0.0, best);
}

WitnessStep make_witness(std::shared_ptr<const Domain> dom, const WitnessParams& params,
                         std::optional<Side> side_opt) {
  if (!(params.phi > 0) || !(params.phi < kPi / 2))
    throw PhiOutOfRange("phi must lie in (0, pi/2)");
  if (!(params.eps > 0)) throw ValidationError("eps must be positive");
  if (!(params.shrink > 0 && params.shrink < 1))
    throw ValidationError("shrink must lie in (0, 1)");

  AngularVerdict vr = classify_vertical_support(*dom, Side::Right);
  AngularVerdict vl = classify_vertical_support(*dom, Side::Left);
  Side side;
  if (side_opt) side = *side_opt;
  else if (vr.kind != ContactKind::Angular) side = Side::Right;
  else if (vl.kind != ContactKind::Angular) side = Side::Left;
  else side = Side::Right;

  const AngularVerdict& v = (side == Side::Right) ? vr : vl;
  double base = (side == Side::Right) ? 0.0 : kPi;

  WitnessStep step;
  step.params = params;
  step.side = side;
  step.contact = v.kind;

  // Choose the regular reference point xi and the support angle offset.
  double theta = 0.0;
  Point2 xi = v.contact_point;
  bool clip = false;
  switch (v.kind) {
    case ContactKind::Tangent:
      theta = 0.0;
      clip = true;
      break;
    case ContactKind::HalfTangent: {
      // Walk onto the adjacent arc whose one-sided tangent is vertical;
      // points there are regular with support angle equal to their
      // parameter offset.
      double want = std::isnan(params.theta) ? params.phi / 2 : std::abs(params.theta);
      const Arc* arc = nullptr;
      bool from_start = true;
      for (const auto& piece : dom->pieces()) {
        const auto* a = std::get_if<Arc>(&piece);
        if (!a) continue;
        if (dist(a->point_at(a->start_angle), v.contact_point) <= dom->tol() &&
            std::abs(wrap_pm_pi(a->start_angle - base)) <= 1e-9) {
          arc = a; from_start = true; break;
        }
        if (dist(a->point_at(a->end_angle), v.contact_point) <= dom->tol() &&
            std::abs(wrap_pm_pi(a->end_angle - base)) <= 1e-9) {
          arc = a; from_start = false; break;
        }
      }
      if (!arc) throw ValidationError("half-tangent contact without a vertical arc end");
      double delta = std::min(want, arc->sweep() / 2);
      double t = from_start ? arc->start_angle + delta : arc->end_angle - delta;
      xi = arc->point_at(t);
      theta = from_start ? delta : -delta;
      clip = true;
      break;
    }
    case ContactKind::EdgeContact:
      // Chord parallel to the vertical edge; the construction is translation
      // along the edge, no locality clip.
      theta = 0.0;
      clip = false;
      break;
    case ContactKind::Angular:
      theta = 0.0;
      clip = false;
      break;
  }
  if (std::abs(theta) >= params.phi)
    throw ValidationError("support angle offset must stay below phi");
  step.xi = xi;

  // Exact chord at distance eps inside the support line through xi.
  double ang = base + theta;
  Vec2 d = dir_of(ang);
  double offset = support_value(*dom, ang) - params.eps;
  std::vector<Point2> hits = line_boundary_hits(*dom, d, offset);
  if (hits.size() < 2) throw ChordTooShort("chord does not cross the domain");
  Vec2 tangent = perp(d);
  auto tcoord = [&](Point2 p) { return dot(p, tangent); };
  std::sort(hits.begin(), hits.end(),
            [&](Point2 a, Point2 b) { return tcoord(a) < tcoord(b); });
  Point2 P1 = hits.front(), P2 = hits.back();
  step.chord = {P1, P2};
  step.chord_length = dist(P1, P2);
  if (step.chord_length <= 16 * dom->tol())
    throw ChordTooShort("chord shorter than the tolerance floor");

  // Central shrink fraction, then the (r/2)-ball clip around xi.
  Point2 mid = 0.5 * (P1 + P2);
  double half = 0.5 * params.shrink * step.chord_length;
  double lo = tcoord(mid) - half, hi = tcoord(mid) + half;
  if (clip) {
    step.r = support_complement_distance(*dom, xi, params.phi, side);
    double rad = step.r / 2;
    // Intersect the chord line with the ball around xi.
    double s0 = tcoord(xi) - tcoord(mid);
    Point2 foot = mid + s0 * tangent;
    double normal_gap = dist(foot, xi);
    double h2 = rad * rad - normal_gap * normal_gap;
    if (h2 <= 0) throw ChordTooShort("locality clip empties the chord");
    double halfw = std::sqrt(h2);
    lo = std::max(lo, tcoord(foot) - halfw);
    hi = std::min(hi, tcoord(foot) + halfw);
    if (hi - lo <= 16 * dom->tol()) throw ChordTooShort("locality clip empties the chord");
  }
  Point2 base_pt = mid;
  auto at = [&](double t) { return base_pt + (t - tcoord(base_pt)) * tangent; };

  // The chord is exact against the boundary pieces, which bulge outside the
  // inscribed polygon near curved stretches; pull each lifted endpoint along
  // the chord toward its center until it sits strictly inside the polygon.
  Point2 anchor = at(0.5 * (lo + hi));
  const double inner = 2 * dom->tol();
  if (!dom->strictly_inside(anchor, inner))
    throw ChordTooShort("chord center leaves the polygonized domain");
  auto pull_inside = [&](Point2 p) {
    if (dom->strictly_inside(p, inner)) return p;
    double s_in = 0.0, s_out = 1.0;
    for (int it = 0; it < 60; ++it) {
      double s = 0.5 * (s_in + s_out);
      if (dom->strictly_inside(anchor + s * (p - anchor), inner))
        s_in = s;
      else
        s_out = s;
    }
    return anchor + s_in * (p - anchor);
  };
  Point2 A = pull_inside(at(lo)), B = pull_inside(at(hi));
  if (dist(A, B) <= 16 * dom->tol())
    throw ChordTooShort("interior part of the chord is too short");
  step.ab = {A, B};
  step.ab_length = dist(A, B);

  step.function = HullFunction::build(dom, {Apex{A, 1.0}, Apex{B, 1.0}});
  step.params.theta = theta;
  return step;
}

std::vector<WitnessStep> witness_sequence(std::shared_ptr<const Domain> dom,
                                          const std::vector<WitnessParams>& schedule,
                                          std::optional<Side> side) {
  std::vector<WitnessStep> out;
  for (const auto& params : schedule) {
    try {
      out.push_back(make_witness(dom, params, side));
    } catch (const ChordTooShort&) {
      // Step eps too coarse for the clip; the schedule moves on.
    }
  }
  return out;
}

OscillatingField::OscillatingField(std::shared_ptr<const Domain> dom, int N)
    : dom_(std::move(dom)), n_(N) {
  if (!dom_) throw ValidationError("null domain");
  if (N < 0) throw ValidationError("oscillation index must be nonnegative");
}

double OscillatingField::eval(Point2 p) const {
  double d = std::max(0.0, dom_->interior_margin(p));
  return d * d * std::sin(n_ * p.x);
}

Vec2 OscillatingField::gradient(Point2 p) const {
  double d = dom_->interior_margin(p);
  if (d <= 0) return {0.0, 0.0};
  int e = dom_->nearest_edge(p);
  const auto& poly = dom_->polygon();
  Vec2 edge = poly[(e + 1) % poly.size()] - poly[e];
  Vec2 inward = normalized(perp(edge));  // left normal points into the domain
  double s = std::sin(n_ * p.x), c = std::cos(n_ * p.x);
  return {2 * d * inward.x * s + d * d * n_ * c, 2 * d * inward.y * s};
}

std::optional<std::pair<Point2, Point2>> find_concavity_violation(
    const Domain& dom, const OscillatingField& f, int samples) {
  // Deterministic grid of interior pairs; concave functions satisfy
  // f(mid) >= (f(p)+f(q))/2 for every pair.
  Point2 lo = dom.bbox_min(), hi = dom.bbox_max();
  std::vector<Point2> pts;
  for (int i = 1; i < samples; ++i) {
    for (int j = 1; j < samples; j += std::max(1, samples / 8)) {
      Point2 p{lo.x + (hi.x - lo.x) * i / samples, lo.y + (hi.y - lo.y) * j / samples};
      if (dom.strictly_inside(p, 1e-9 * dom.scale())) pts.push_back(p);
    }
  }
  const double slack = 1e-9 * dom.scale();
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      Point2 mid = 0.5 * (pts[i] + pts[j]);
      if (f.eval(mid) < 0.5 * (f.eval(pts[i]) + f.eval(pts[j])) - slack)
        return std::make_pair(pts[i], pts[j]);
    }
  }
  return std::nullopt;
}

}  // namespace flatnewt
