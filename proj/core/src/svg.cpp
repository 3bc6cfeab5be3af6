#include "flatnewt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "flatnewt/json_io.hpp"  // format_double

namespace flatnewt {

namespace {

constexpr double kView = 640.0;
constexpr double kPad = 48.0;

struct Mapper {
  Point2 lo, hi;
  double s = 1.0;

  explicit Mapper(const Domain& dom) {
    lo = dom.bbox_min();
    hi = dom.bbox_max();
    double bw = std::max(hi.x - lo.x, 1e-12), bh = std::max(hi.y - lo.y, 1e-12);
    s = (kView - 2 * kPad) / std::max(bw, bh);
  }
  double x(double v) const { return kPad + (v - lo.x) * s; }
  double y(double v) const { return kView - kPad - (v - lo.y) * s; }
  std::string pt(Point2 p) const {
    return format_double(x(p.x)) + "," + format_double(y(p.y));
  }
};

std::string polygon_path(const Mapper& m, const std::vector<Point2>& poly) {
  std::string d;
  for (size_t i = 0; i < poly.size(); ++i) {
    d += (i == 0) ? "M" : "L";
    d += m.pt(poly[i]);
  }
  d += "Z";
  return d;
}

// Keep the part of a convex polygon where <n, p> <= c.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, Vec2 n, double c) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 2);
  for (size_t i = 0; i < poly.size(); ++i) {
    Point2 cur = poly[i], nxt = poly[(i + 1) % poly.size()];
    double dc = dot(n, cur) - c, dn = dot(n, nxt) - c;
    if (dc <= 0) out.push_back(cur);
    if ((dc <= 0) != (dn <= 0)) {
      double t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Domain& dom, const std::optional<AngularVerdict>& left,
                       const std::optional<AngularVerdict>& right,
                       const HullFunction* witness, int n_levels) {
  Mapper m(dom);
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
         format_double(kView) + " " + format_double(kView) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Domain fill and boundary.
  svg += "<path d=\"" + polygon_path(m, dom.polygon()) +
         "\" fill=\"#dbe9f6\" stroke=\"#1f4e79\" stroke-width=\"1.5\"/>\n";

  // Level sets of the witness, outermost first.
  if (witness && !witness->is_zero()) {
    double hmax = witness->max_height();
    for (int k = 1; k <= n_levels; ++k) {
      double z = hmax * k / (n_levels + 1);
      std::vector<Point2> region = dom.polygon();
      for (const auto& fc : witness->surface().facets) {
        // Keep offset + <g, p> >= z.
        region = clip_halfplane(region, Vec2{-fc.gx, -fc.gy}, fc.offset - z);
        if (region.size() < 3) break;
      }
      if (region.size() < 3) continue;
      svg += "<path d=\"" + polygon_path(m, region) +
             "\" fill=\"#f08c3c\" fill-opacity=\"0.18\" stroke=\"#c05621\" "
             "stroke-width=\"0.8\"/>\n";
    }
    for (const auto& a : witness->apexes()) {
      svg += "<circle cx=\"" + format_double(m.x(a.pos.x)) + "\" cy=\"" +
             format_double(m.y(a.pos.y)) + "\" r=\"3\" fill=\"#c05621\"/>\n";
    }
  }

  // Vertical support lines and contact decorations.
  auto support_decor = [&](const AngularVerdict& v, double line_x) {
    svg += "<line x1=\"" + format_double(m.x(line_x)) + "\" y1=\"" +
           format_double(kPad / 2) + "\" x2=\"" + format_double(m.x(line_x)) +
           "\" y2=\"" + format_double(kView - kPad / 2) +
           "\" stroke=\"#666666\" stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n";
    if (v.contact_edge) {
      svg += "<line x1=\"" + format_double(m.x(v.contact_edge->from.x)) + "\" y1=\"" +
             format_double(m.y(v.contact_edge->from.y)) + "\" x2=\"" +
             format_double(m.x(v.contact_edge->to.x)) + "\" y2=\"" +
             format_double(m.y(v.contact_edge->to.y)) +
             "\" stroke=\"#b91c1c\" stroke-width=\"3\"/>\n";
    }
    svg += "<circle cx=\"" + format_double(m.x(v.contact_point.x)) + "\" cy=\"" +
           format_double(m.y(v.contact_point.y)) +
           "\" r=\"4\" fill=\"#b91c1c\"/>\n";
    if (v.cone) {
      double ray = 0.16 * std::max(dom.bbox_max().x - dom.bbox_min().x,
                                   dom.bbox_max().y - dom.bbox_min().y);
      for (const Vec2& u : *v.cone) {
        Point2 tip = v.contact_point + ray * u;
        svg += "<line x1=\"" + format_double(m.x(v.contact_point.x)) + "\" y1=\"" +
               format_double(m.y(v.contact_point.y)) + "\" x2=\"" +
               format_double(m.x(tip.x)) + "\" y2=\"" + format_double(m.y(tip.y)) +
               "\" stroke=\"#15803d\" stroke-width=\"2\"/>\n";
      }
    }
  };
  if (right) support_decor(*right, support_value(dom, 0.0));
  if (left) support_decor(*left, -support_value(dom, std::numbers::pi));

  svg += "</svg>\n";
  return svg;
}

}  // namespace flatnewt
