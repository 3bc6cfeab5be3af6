#pragma once

// Exact integrals of piecewise-linear concave functions, resistance
// integrands, grid quadrature for non-concave fields, and a numerical
// Wirtinger-inequality check.

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "flatnewt/concave.hpp"

namespace flatnewt {

// The two Dirichlet-type integrals of a piecewise-linear function:
// I_x = integral of u_x^2, I_y = integral of u_y^2.
struct DirichletSplit {
  double I_x = 0.0;
  double I_y = 0.0;
};

// Exact facet-by-facet sums: each facet contributes gradient^2 times its
// projected area. Exact up to the polygonization of curved boundaries.
DirichletSplit dirichlet_split(const HullFunction& u);

// Same sums restricted to a convex region (CCW polygon): each facet is
// clipped against the region and contributes its clipped area.
DirichletSplit dirichlet_split(const HullFunction& u, const std::vector<Point2>& region);

// I_x / I_y. A nonzero function with I_y = 0 (a ridge constant in y)
// returns +infinity; the zero function throws ZeroDenominator.
double rayleigh_ratio(const HullFunction& u);

// Resistance density f(grad u). Quadratic evaluates l1*z1^2 + l2*z2^2;
// Newtonian evaluates 1/(1+|z|^2); Custom wraps a callable and may carry a
// known second-derivative matrix at the origin (h11, h12, h22).
class Integrand {
 public:
  enum class Kind { Quadratic, Newtonian, Custom };

  static Integrand quadratic(double l1, double l2) {
    Integrand f;
    f.kind_ = Kind::Quadratic;
    f.l1_ = l1;
    f.l2_ = l2;
    return f;
  }
  static Integrand newtonian() {
    Integrand f;
    f.kind_ = Kind::Newtonian;
    return f;
  }
  static Integrand custom(std::function<double(Vec2)> fn,
                          std::optional<std::array<double, 3>> hessian = std::nullopt) {
    if (!fn) throw ValidationError("custom integrand requires a callable");
    Integrand f;
    f.kind_ = Kind::Custom;
    f.fn_ = std::move(fn);
    f.hessian_ = hessian;
    return f;
  }

  Kind kind() const { return kind_; }
  double lambda1() const { return l1_; }
  double lambda2() const { return l2_; }
  const std::optional<std::array<double, 3>>& known_hessian() const { return hessian_; }

  double operator()(Vec2 zeta) const {
    switch (kind_) {
      case Kind::Quadratic:
        return l1_ * zeta.x * zeta.x + l2_ * zeta.y * zeta.y;
      case Kind::Newtonian:
        return 1.0 / (1.0 + zeta.x * zeta.x + zeta.y * zeta.y);
      case Kind::Custom:
        return fn_(zeta);
    }
    return 0.0;
  }

 private:
  Kind kind_ = Kind::Newtonian;
  double l1_ = 0.0, l2_ = 0.0;
  std::function<double(Vec2)> fn_;
  std::optional<std::array<double, 3>> hessian_;
};

// Integral of f(grad u) over the domain; exact because the gradient is
// constant per facet. The zero function contributes f(0,0) * area.
double resistance(const HullFunction& u, const Integrand& f);

// (-a+eps) * I_x + (b+eps) * I_y.
double perturbed_functional(const HullFunction& u, double a, double b, double eps);

// Midpoint rule on an n-by-n bounding-box grid; cells are clipped against
// the domain polygon and weighted by the clipped area. Intended for fields
// that are not piecewise linear (everything else integrates exactly).
double grid_quadrature(const std::function<double(double, double)>& field,
                       const Domain& dom, int n);

// Returns (integral of v^2, (1/pi^2) * integral of v'^2) on [0, 1] for a
// function with v(0) = v(1) = 0, using n midpoint samples and difference
// quotients for v'. The first component never exceeds the second except
// for discretization error.
std::pair<double, double> wirtinger_check(const std::function<double(double)>& v,
                                          int n = 10000);

// Convex polygon clipping (Sutherland-Hodgman): intersection of a subject
// polygon with a convex CCW clip polygon. Result is CCW, possibly empty.
std::vector<Point2> clip_convex(std::vector<Point2> subject, const std::vector<Point2>& clip);

// Shoelace area of a CCW polygon (0 for fewer than 3 vertices).
double polygon_area_of(const std::vector<Point2>& poly);

}  // namespace flatnewt
