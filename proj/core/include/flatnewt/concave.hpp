#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "flatnewt/geom2d.hpp"
#include "flatnewt/hull3d.hpp"

namespace flatnewt {

struct Apex {
  Point2 pos;
  double height = 1.0;
};

// Concave piecewise-linear function on a domain: the upper hull of the
// polygonized boundary at height zero and the apex points. Empty apex list
// gives the zero function.
class HullFunction {
public:
  static HullFunction build(std::shared_ptr<const Domain> dom, std::vector<Apex> apexes);
  static HullFunction zero(std::shared_ptr<const Domain> dom);

  bool is_zero() const { return surface_.facets.empty(); }
  const Domain& domain() const { return *dom_; }
  const std::shared_ptr<const Domain>& domain_ptr() const { return dom_; }
  const std::vector<Apex>& apexes() const { return apexes_; }
  const UpperSurface& surface() const { return surface_; }
  double max_height() const;

  // Value at p: minimum of the facet planes (the concave extension agrees
  // with it on the polygonized domain). Throws PointOutsideDomain.
  double eval(Point2 p) const;
  // Gradient where defined; nullopt within edge_tol*scale of a projected
  // facet boundary. Throws PointOutsideDomain.
  std::optional<Vec2> gradient(Point2 p, double edge_tol = 1e-10) const;

private:
  std::shared_ptr<const Domain> dom_;
  std::vector<Apex> apexes_;
  UpperSurface surface_;
};

HullFunction tent(std::shared_ptr<const Domain> dom, Point2 apex, double height = 1.0);

// Max apex height plus the largest |g_x| and |g_y| over facets.
double c1_norm(const HullFunction& u);

// Parameters for one witness step. theta is the support angle offset of the
// chosen regular contact point, measured from the side's outward axis; NaN
// lets the construction pick (0 for smooth/edge contacts, phi/2 along the
// arc at a half-tangent corner).
struct WitnessParams {
  double phi = 0.1;
  double eps = 1e-3;
  double theta = std::numeric_limits<double>::quiet_NaN();
  double shrink = 0.8;
};

struct WitnessStep {
  WitnessParams params;  // theta replaced by the value actually used
  HullFunction function;
  Side side = Side::Right;
  ContactKind contact = ContactKind::Tangent;
  Point2 xi;             // regular reference point on the boundary
  double r = 0.0;        // dist(xi, boundary of the support-set complement); 0 = no clip
  double chord_length = 0.0;
  Segment chord;
  double ab_length = 0.0;
  Segment ab;
};

// One step of the divergence construction: an exact chord at distance eps
// inside the support line through a regular point near the contact, its
// central shrink fraction clipped to the (r/2)-ball, lifted to height 1.
// Throws ChordTooShort when the clip empties the chord.
WitnessStep make_witness(std::shared_ptr<const Domain> dom, const WitnessParams& params,
                         std::optional<Side> side = std::nullopt);

// Runs the schedule, skipping steps whose chord degenerates.
std::vector<WitnessStep> witness_sequence(std::shared_ptr<const Domain> dom,
                                          const std::vector<WitnessParams>& schedule,
                                          std::optional<Side> side = std::nullopt);

// dist(xi, boundary of the intersection of the support half-planes with
// normal angle at least phi away from the side axis).
double support_complement_distance(const Domain& dom, Point2 xi, double phi, Side side);

// Scalar field u0(x,y) * sin(N x) with u0 the squared boundary distance;
// deliberately non-concave for N >= 1. Grid-sampled only, never a
// HullFunction.
class OscillatingField {
public:
  OscillatingField(std::shared_ptr<const Domain> dom, int N);
  double eval(Point2 p) const;
  Vec2 gradient(Point2 p) const;
  int n() const { return n_; }
  const Domain& domain() const { return *dom_; }

private:
  std::shared_ptr<const Domain> dom_;
  int n_ = 0;
};

// Deterministic midpoint concavity scan; returns a violating pair if found.
std::optional<std::pair<Point2, Point2>> find_concavity_violation(
    const Domain& dom, const OscillatingField& f, int samples = 64);

}  // namespace flatnewt
