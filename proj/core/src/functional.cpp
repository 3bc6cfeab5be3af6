#include "flatnewt/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace flatnewt {

double polygon_area_of(const std::vector<Point2>& poly) {
  if (poly.size() < 3) return 0.0;
  double s = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

std::vector<Point2> clip_convex(std::vector<Point2> subject, const std::vector<Point2>& clip) {
  for (size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    Point2 a = clip[i];
    Point2 b = clip[(i + 1) % clip.size()];
    Vec2 e = b - a;
    auto inside = [&](Point2 p) { return cross(e, p - a) >= 0.0; };
    auto intersect = [&](Point2 p, Point2 q) {
      double dp = cross(e, p - a);
      double dq = cross(e, q - a);
      double t = dp / (dp - dq);
      return p + t * (q - p);
    };
    std::vector<Point2> out;
    out.reserve(subject.size() + 2);
    for (size_t j = 0; j < subject.size(); ++j) {
      Point2 cur = subject[j];
      Point2 nxt = subject[(j + 1) % subject.size()];
      bool cin = inside(cur), nin = inside(nxt);
      if (cin) out.push_back(cur);
      if (cin != nin) out.push_back(intersect(cur, nxt));
    }
    subject = std::move(out);
  }
  return subject;
}

DirichletSplit dirichlet_split(const HullFunction& u) {
  DirichletSplit s;
  for (const auto& f : u.surface().facets) {
    s.I_x += f.gx * f.gx * f.area;
    s.I_y += f.gy * f.gy * f.area;
  }
  return s;
}

DirichletSplit dirichlet_split(const HullFunction& u, const std::vector<Point2>& region) {
  DirichletSplit s;
  for (const auto& f : u.surface().facets) {
    std::vector<Point2> tri{f.tri[0], f.tri[1], f.tri[2]};
    double a = polygon_area_of(clip_convex(std::move(tri), region));
    s.I_x += f.gx * f.gx * a;
    s.I_y += f.gy * f.gy * a;
  }
  return s;
}

double rayleigh_ratio(const HullFunction& u) {
  if (u.is_zero()) throw ZeroDenominator("the zero function has no ratio");
  DirichletSplit s = dirichlet_split(u);
  if (s.I_y == 0.0) {
    if (s.I_x == 0.0) throw ZeroDenominator("both integrals vanish");
    return std::numeric_limits<double>::infinity();
  }
  return s.I_x / s.I_y;
}

double resistance(const HullFunction& u, const Integrand& f) {
  const double base = f(Vec2{0.0, 0.0});
  if (u.is_zero()) return base * u.domain().area();
  double total = 0.0;
  double covered = 0.0;
  for (const auto& fc : u.surface().facets) {
    total += f(Vec2{fc.gx, fc.gy}) * fc.area;
    covered += fc.area;
  }
  // Polygonization slivers where the hull facets fail to tile the polygon
  // carry the flat value.
  double rest = u.domain().polygon_area() - covered;
  if (rest > 0) total += base * rest;
  return total;
}

double perturbed_functional(const HullFunction& u, double a, double b, double eps) {
  if (!(a > 0) || !(b > 0)) throw ValidationError("a and b must be positive");
  DirichletSplit s = dirichlet_split(u);
  return (-a + eps) * s.I_x + (b + eps) * s.I_y;
}

double grid_quadrature(const std::function<double(double, double)>& field,
                       const Domain& dom, int n) {
  if (n <= 0) throw ValidationError("grid size must be positive");
  const Point2 lo = dom.bbox_min(), hi = dom.bbox_max();
  const double dx = (hi.x - lo.x) / n, dy = (hi.y - lo.y) / n;
  const double cell_area = dx * dy;
  const double half_diag = 0.5 * std::hypot(dx, dy);
  const auto& poly = dom.polygon();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Point2 c{lo.x + (i + 0.5) * dx, lo.y + (j + 0.5) * dy};
      double margin = dom.interior_margin(c);
      if (margin >= half_diag) {
        total += field(c.x, c.y) * cell_area;
        continue;
      }
      if (margin <= -half_diag) continue;
      std::vector<Point2> cell{{c.x - dx / 2, c.y - dy / 2},
                               {c.x + dx / 2, c.y - dy / 2},
                               {c.x + dx / 2, c.y + dy / 2},
                               {c.x - dx / 2, c.y + dy / 2}};
      std::vector<Point2> part = clip_convex(std::move(cell), poly);
      double a = polygon_area_of(part);
      if (a <= 0) continue;
      Point2 at = c;
      if (margin <= 0) {
        // Midpoint outside: evaluate at the clipped piece's centroid.
        Point2 acc{0, 0};
        double asum = 0;
        for (size_t k = 1; k + 1 < part.size(); ++k) {
          double t = cross(part[k] - part[0], part[k + 1] - part[0]) / 2;
          Point2 ctr = (1.0 / 3.0) * (part[0] + part[k] + part[k + 1]);
          acc = acc + t * ctr;
          asum += t;
        }
        if (asum > 0) at = (1.0 / asum) * acc;
      }
      total += field(at.x, at.y) * a;
    }
  }
  return total;
}

std::pair<double, double> wirtinger_check(const std::function<double(double)>& v, int n) {
  if (n < 3) throw ValidationError("need at least 3 samples");
  const double h = 1.0 / n;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = v((i + 0.5) * h);
  double lhs = 0.0, rhs = 0.0;
  for (int i = 0; i < n; ++i) {
    lhs += vals[i] * vals[i];
    double dv;
    if (i == 0)
      dv = (vals[1] - vals[0]) / h;
    else if (i == n - 1)
      dv = (vals[n - 1] - vals[n - 2]) / h;
    else
      dv = (vals[i + 1] - vals[i - 1]) / (2 * h);
    rhs += dv * dv;
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return {lhs * h, rhs * h / pi2};
}

}  // namespace flatnewt
