#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "flatnewt/decide.hpp"
#include "flatnewt/errors.hpp"
#include "flatnewt/geom2d.hpp"

using namespace flatnewt;

namespace {

constexpr double kPi = std::numbers::pi;

SearchBudget small_budget() { return SearchBudget{6, 60, {1, 2}}; }

Mat2 sym(double xx, double xy, double yy) { return Mat2{xx, xy, xy, yy}; }

}  // namespace

TEST_SUITE("decide") {

TEST_CASE("second derivative of the built-in integrands is closed form") {
  Mat2 q = hessian_at_zero(Integrand::quadratic(-1.5, 2.5));
  CHECK(q.xx == -3.0);
  CHECK(q.yy == 5.0);
  CHECK(q.xy == 0.0);
  CHECK(q.yx == 0.0);

  Mat2 n = hessian_at_zero(Integrand::newtonian());
  CHECK(n.xx == -2.0);
  CHECK(n.yy == -2.0);
  CHECK(n.xy == 0.0);
}

TEST_CASE("custom integrand with a known matrix skips differencing") {
  Integrand f = Integrand::custom([](Vec2) { return 42.0; },
                                  std::array<double, 3>{1.0, 0.25, -2.0});
  Mat2 h = hessian_at_zero(f);
  CHECK(h.xx == 1.0);
  CHECK(h.xy == 0.25);
  CHECK(h.yx == 0.25);
  CHECK(h.yy == -2.0);
}

TEST_CASE("custom integrand differencing recovers a saddle") {
  Integrand f = Integrand::custom([](Vec2 z) { return z.x * z.y; });
  Mat2 h = hessian_at_zero(f);
  CHECK(std::abs(h.xx) <= 1e-6);
  CHECK(std::abs(h.yy) <= 1e-6);
  CHECK(h.xy == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(h.yx == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("non-finite integrand samples are rejected") {
  Integrand f = Integrand::custom([](Vec2 z) {
    return z.x == 0.0 && z.y == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  });
  CHECK_THROWS_AS(hessian_at_zero(f), NonFiniteSamples);
}

TEST_CASE("classification of canonical matrices") {
  CHECK(classify_hessian(sym(2, 0, 1)).kind == HessianKind::PositiveDefinite);
  CHECK(classify_hessian(sym(-2, 0, -1)).kind == HessianKind::NegativeDefinite);
  CHECK(classify_hessian(sym(-1, 0, 1)).kind == HessianKind::Indefinite);
  CHECK(classify_hessian(sym(0, 0, 1)).kind == HessianKind::Semidefinite);
  CHECK(classify_hessian(sym(0, 0, 0)).kind == HessianKind::Semidefinite);
  CHECK(classify_hessian(sym(1e-15, 0, 1)).kind == HessianKind::Semidefinite);
}

TEST_CASE("indefinite classification exposes a and b with their directions") {
  HessianClass c = classify_hessian(sym(-1, 0, 2));
  REQUIRE(c.kind == HessianKind::Indefinite);
  CHECK(c.a == 1.0);
  CHECK(c.b == 2.0);
  CHECK(std::abs(c.positive_dir.x) <= 1e-12);
  CHECK(std::abs(std::abs(c.positive_dir.y) - 1.0) <= 1e-12);
  CHECK(std::abs(std::abs(c.negative_dir.x) - 1.0) <= 1e-12);
  CHECK(std::abs(c.negative_dir.y) <= 1e-12);

  // Rotated saddle: eigenvalues -1, 3 with directions on the diagonals.
  HessianClass r = classify_hessian(sym(1, 2, 1));
  REQUIRE(r.kind == HessianKind::Indefinite);
  CHECK(r.a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.b == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(r.positive_dir.x) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(std::abs(r.positive_dir.y) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("asymmetric input is rejected") {
  CHECK_THROWS_AS(classify_hessian(Mat2{1, 0.5, -0.5, 1}), AsymmetricInput);
}

TEST_CASE("eigen pairs satisfy the defining equations for random matrices") {
  std::mt19937_64 rng(20240505);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    double xx = u(rng), xy = u(rng), yy = u(rng);
    HessianClass c = classify_hessian(sym(xx, xy, yy));
    CHECK(c.eigenvalues[0] <= c.eigenvalues[1]);
    // Characteristic polynomial roots.
    double tr = xx + yy, det = xx * yy - xy * xy;
    double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    CHECK(c.eigenvalues[0] == doctest::Approx(tr / 2 - disc).epsilon(1e-9));
    CHECK(c.eigenvalues[1] == doctest::Approx(tr / 2 + disc).epsilon(1e-9));
    for (int i = 0; i < 2; ++i) {
      Vec2 v = c.eigenvectors[i];
      CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-12));
      Vec2 hv{xx * v.x + xy * v.y, xy * v.x + yy * v.y};
      Vec2 lv = c.eigenvalues[i] * v;
      CHECK(norm(hv - lv) <= 1e-9 * (1 + std::abs(c.eigenvalues[i])));
    }
    CHECK(std::abs(dot(c.eigenvectors[0], c.eigenvectors[1])) <= 1e-12);
  }
}

TEST_CASE("definite and semidefinite matrices decide immediately") {
  Domain dia = gen::diamond();
  Verdict pd = decide_flat(dia, Integrand::quadratic(1, 1), small_budget());
  CHECK(pd.kind == VerdictKind::LocalMin);
  CHECK(!pd.k_estimate.has_value());  // no search needed
  CHECK(!pd.reason.empty());

  Verdict nd = decide_flat(dia, Integrand::newtonian(), small_budget());
  CHECK(nd.kind == VerdictKind::NotLocalMin);
  CHECK(!nd.k_estimate.has_value());

  Verdict sd = decide_flat(dia, classify_hessian(sym(0, 0, 1)), small_budget());
  CHECK(sd.kind == VerdictKind::Inconclusive);
}

TEST_CASE("saddles on the diamond compare the ratio against the estimate") {
  Domain dia = gen::diamond();

  Verdict low = decide_flat(dia, Integrand::quadratic(-1, 0.3), small_budget(), 7);
  CHECK(low.kind == VerdictKind::NotLocalMin);
  REQUIRE(low.comparison.has_value());
  CHECK(low.comparison->b_over_a == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(low.comparison->b_over_a < low.comparison->k_lower);
  REQUIRE(low.k_estimate.has_value());

  Verdict high = decide_flat(dia, Integrand::quadratic(-1, 6), small_budget(), 7);
  CHECK(high.kind == VerdictKind::LocalMin);
  REQUIRE(high.comparison.has_value());
  REQUIRE(high.comparison->k_upper.has_value());
  CHECK(high.comparison->b_over_a > *high.comparison->k_upper);

  Verdict mid = decide_flat(dia, Integrand::quadratic(-1, 2), small_budget(), 7);
  CHECK(mid.kind == VerdictKind::Inconclusive);
  REQUIRE(mid.comparison.has_value());
  CHECK(mid.comparison->b_over_a == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("saddles on the disk lose for any coefficient ratio") {
  Domain disk = gen::disk();
  Verdict v = decide_flat(disk, Integrand::quadratic(-1, 1), small_budget());
  CHECK(v.kind == VerdictKind::NotLocalMin);
  REQUIRE(v.angular_right.has_value());
  CHECK(v.angular_right->kind == ContactKind::Tangent);
  CHECK(v.rotation == 0.0);  // positive direction already vertical
  // No search is needed: one non-angular side settles it.
  CHECK(!v.k_estimate.has_value());

  Verdict big = decide_flat(disk, Integrand::quadratic(-1, 100), small_budget());
  CHECK(big.kind == VerdictKind::NotLocalMin);
}

TEST_CASE("the positive eigendirection is rotated onto the vertical axis") {
  // Saddle with positive direction along x: the rotation must be +-pi/2,
  // turning the square's vertical edges into horizontal ones.
  Domain sq = gen::square();
  Verdict v = decide_flat(sq, Integrand::quadratic(1, -1), small_budget());
  CHECK(std::abs(std::abs(v.rotation) - kPi / 2) <= 1e-12);
  CHECK(v.kind == VerdictKind::NotLocalMin);  // edge contact after rotation
  REQUIRE(v.angular_right.has_value());
  CHECK(v.angular_right->kind == ContactKind::EdgeContact);
}

TEST_CASE("decisions are invariant under rotating domain and integrand together") {
  double g = 0.3;
  Domain dia = gen::diamond();
  Domain rot = rotated(dia, g);
  // H' = R H R^T for the quadratic saddle diag(-1, 6), R the same
  // counter-clockwise rotation applied to the domain.
  double c = std::cos(g), s = std::sin(g);
  double xx = -c * c + 6 * s * s;
  double xy = -c * s * 7.0;
  double yy = -s * s + 6 * c * c;
  Verdict v = decide_flat(rot, classify_hessian(sym(xx, xy, yy)), small_budget(), 7);
  CHECK(v.kind == VerdictKind::LocalMin);
  REQUIRE(v.comparison.has_value());
  CHECK(v.comparison->b_over_a == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("verdicts carry the angular classification of both sides") {
  Verdict v = decide_flat(gen::diamond(), Integrand::quadratic(-1, 2), small_budget(), 7);
  REQUIRE(v.angular_left.has_value());
  REQUIRE(v.angular_right.has_value());
  CHECK(v.angular_left->kind == ContactKind::Angular);
  CHECK(v.angular_right->kind == ContactKind::Angular);
}

TEST_CASE("junction counting: smooth, mixed, and cornered boundaries") {
  SingularCount disk = corollary_singular_count(gen::disk());
  CHECK(disk.count == 0);
  CHECK(!disk.many);

  SingularCount half = corollary_singular_count(gen::half_disk());
  CHECK(half.count == 2);
  CHECK(half.many);

  SingularCount dia = corollary_singular_count(gen::diamond());
  CHECK(dia.many);
  CHECK(dia.count >= 2);
}

TEST_CASE("a single corner shows up as exactly one junction") {
  // Three-quarter disk closed by two radii meeting at a right angle: the
  // piece junctions at (0,-1) and (-1,0) are tangent-continuous, leaving
  // one true corner at (-1,-1).
  Domain d = Domain::build({Arc{{0, 0}, 1.0, -kPi / 2, kPi},
                            Segment{{-1, 0}, {-1, -1}}, Segment{{-1, -1}, {0, -1}}});
  SingularCount c = corollary_singular_count(d);
  CHECK(c.count == 1);
  CHECK(!c.many);

  // Its right support line touches the arc interior, so a saddle with the
  // positive direction vertical cannot be a local minimum.
  Verdict v = decide_flat(d, Integrand::quadratic(-1, 1), small_budget());
  CHECK(v.kind == VerdictKind::NotLocalMin);
}

}  // TEST_SUITE
