#include "flatnewt/decide.hpp"

#include <cmath>
#include <numbers>

namespace flatnewt {

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 fd_hessian(const Integrand& f, double h) {
  auto at = [&](double x, double y) {
    double v = f(Vec2{x, y});
    if (!std::isfinite(v))
      throw NonFiniteSamples("integrand sample is not finite near the origin");
    return v;
  };
  double f00 = at(0, 0);
  Mat2 H;
  H.xx = (at(h, 0) - 2 * f00 + at(-h, 0)) / (h * h);
  H.yy = (at(0, h) - 2 * f00 + at(0, -h)) / (h * h);
  double mixed = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
  H.xy = H.yx = mixed;
  return H;
}

// Deterministic sign convention so eigendirections are reportable: y
// component positive, ties broken toward positive x.
Vec2 canonical(Vec2 v) {
  if (v.y < 0 || (v.y == 0 && v.x < 0)) return {-v.x, -v.y};
  return v;
}

}  // namespace

Mat2 hessian_at_zero(const Integrand& f, double step) {
  switch (f.kind()) {
    case Integrand::Kind::Quadratic:
      return {2 * f.lambda1(), 0.0, 0.0, 2 * f.lambda2()};
    case Integrand::Kind::Newtonian:
      // 1/(1+|z|^2) = 1 - |z|^2 + O(|z|^4).
      return {-2.0, 0.0, 0.0, -2.0};
    case Integrand::Kind::Custom:
      break;
  }
  if (const auto& known = f.known_hessian())
    return {(*known)[0], (*known)[1], (*known)[1], (*known)[2]};
  if (!(step > 0)) throw ValidationError("difference step must be positive");
  Mat2 h1 = fd_hessian(f, step);
  Mat2 h2 = fd_hessian(f, step / 2);
  // Richardson extrapolation removes the leading O(step^2) error term.
  Mat2 H;
  H.xx = (4 * h2.xx - h1.xx) / 3;
  H.yy = (4 * h2.yy - h1.yy) / 3;
  H.xy = H.yx = (4 * h2.xy - h1.xy) / 3;
  return H;
}

HessianClass classify_hessian(const Mat2& H, double tol) {
  double frob = std::sqrt(H.xx * H.xx + H.xy * H.xy + H.yx * H.yx + H.yy * H.yy);
  if (std::abs(H.xy - H.yx) > tol * std::max(frob, 1e-300))
    throw AsymmetricInput("matrix is not symmetric within tolerance");
  const double A = H.xx, C = H.yy, B = 0.5 * (H.xy + H.yx);

  double half_tr = 0.5 * (A + C);
  double disc = std::hypot(0.5 * (A - C), B);
  double l1 = half_tr - disc, l2 = half_tr + disc;

  auto evec = [&](double lam) {
    Vec2 v1{B, lam - A}, v2{lam - C, B};
    Vec2 v = (norm(v1) >= norm(v2)) ? v1 : v2;
    if (norm(v) < 1e-300) v = Vec2{1, 0};  // repeated eigenvalue, any basis
    return canonical(normalized(v));
  };

  HessianClass out;
  out.eigenvalues = {l1, l2};
  out.eigenvectors[0] = evec(l1);
  out.eigenvectors[1] = canonical(perp(out.eigenvectors[0]));

  double mag = std::max(std::abs(l1), std::abs(l2));
  double zero_tol = tol * mag;
  bool z1 = std::abs(l1) <= zero_tol, z2 = std::abs(l2) <= zero_tol;
  if (mag == 0.0 || z1 || z2) {
    out.kind = HessianKind::Semidefinite;
  } else if (l1 > 0) {
    out.kind = HessianKind::PositiveDefinite;
  } else if (l2 < 0) {
    out.kind = HessianKind::NegativeDefinite;
  } else {
    out.kind = HessianKind::Indefinite;
    out.a = -l1;
    out.b = l2;
    out.negative_dir = out.eigenvectors[0];
    out.positive_dir = out.eigenvectors[1];
  }
  return out;
}

std::string to_string(HessianKind k) {
  switch (k) {
    case HessianKind::PositiveDefinite: return "PositiveDefinite";
    case HessianKind::NegativeDefinite: return "NegativeDefinite";
    case HessianKind::Indefinite: return "Indefinite";
    case HessianKind::Semidefinite: return "Semidefinite";
  }
  return "?";
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::LocalMin: return "LocalMin";
    case VerdictKind::NotLocalMin: return "NotLocalMin";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict decide_flat(const Domain& dom, const HessianClass& H,
                    const SearchBudget& budget, std::uint64_t seed) {
  Verdict v;
  v.hessian = H;
  switch (H.kind) {
    case HessianKind::PositiveDefinite:
      v.kind = VerdictKind::LocalMin;
      v.reason = "second derivative at the origin is positive definite";
      return v;
    case HessianKind::NegativeDefinite:
      v.kind = VerdictKind::NotLocalMin;
      v.reason = "second derivative at the origin is negative definite";
      return v;
    case HessianKind::Semidefinite:
      v.kind = VerdictKind::Inconclusive;
      v.reason = "second derivative at the origin is semidefinite; undecided";
      return v;
    case HessianKind::Indefinite:
      break;
  }

  // Rotate the positive eigendirection onto the y-axis; the x-axis then
  // carries the negative eigenvalue and the vertical support lines of the
  // rotated domain are the lines of support parallel to the positive
  // eigendirection.
  double dir_angle = std::atan2(H.positive_dir.y, H.positive_dir.x);
  v.rotation = kPi / 2 - dir_angle;
  Domain rot = rotated(dom, v.rotation);

  v.angular_left = classify_vertical_support(rot, Side::Left);
  v.angular_right = classify_vertical_support(rot, Side::Right);
  if (v.angular_left->kind != ContactKind::Angular ||
      v.angular_right->kind != ContactKind::Angular) {
    v.kind = VerdictKind::NotLocalMin;
    v.reason =
        "a support line parallel to the positive eigendirection is not "
        "angular, so the ratio is unbounded";
    return v;
  }

  auto rot_ptr = std::make_shared<Domain>(std::move(rot));
  v.k_estimate = estimate_K(rot_ptr, budget, seed);
  Comparison cmp;
  cmp.b_over_a = H.b / H.a;
  cmp.k_lower = v.k_estimate->lower;
  cmp.k_upper = v.k_estimate->upper;
  v.comparison = cmp;

  const double margin = 1e-9;
  if (cmp.b_over_a < cmp.k_lower * (1 - margin)) {
    v.kind = VerdictKind::NotLocalMin;
    v.reason = "b/a lies below the certified lower bound for K";
  } else if (cmp.k_upper && cmp.b_over_a > *cmp.k_upper * (1 + margin)) {
    v.kind = VerdictKind::LocalMin;
    v.reason = "b/a lies above the certified upper bound for K";
  } else {
    v.kind = VerdictKind::Inconclusive;
    v.reason = "b/a lies inside the certified interval for K";
  }
  return v;
}

Verdict decide_flat(const Domain& dom, const Integrand& f,
                    const SearchBudget& budget, std::uint64_t seed) {
  return decide_flat(dom, classify_hessian(hessian_at_zero(f)), budget, seed);
}

SingularCount corollary_singular_count(const Domain& dom) {
  const auto& pieces = dom.pieces();
  auto out_dir = [](const BoundaryPiece& p) {
    if (const auto* s = std::get_if<Segment>(&p)) return normalized(s->to - s->from);
    const Arc& a = std::get<Arc>(p);
    return a.tangent_at(a.start_angle);
  };
  auto in_dir = [](const BoundaryPiece& p) {
    if (const auto* s = std::get_if<Segment>(&p)) return normalized(s->to - s->from);
    const Arc& a = std::get<Arc>(p);
    return a.tangent_at(a.end_angle);
  };
  SingularCount sc;
  for (size_t i = 0; i < pieces.size(); ++i) {
    Vec2 incoming = in_dir(pieces[i]);
    Vec2 outgoing = out_dir(pieces[(i + 1) % pieces.size()]);
    // Distinct one-sided tangents: a genuine convex turn at the junction.
    if (cross(incoming, outgoing) > 1e-9 || dot(incoming, outgoing) < 0)
      sc.count += 1;
  }
  sc.many = sc.count >= 2;
  return sc;
}

}  // namespace flatnewt
