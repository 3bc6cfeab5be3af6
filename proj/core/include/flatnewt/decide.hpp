#pragma once

// Decision procedure for whether the flat profile (the zero function) is a
// local minimum of the resistance functional: classify the integrand's
// second derivative at the origin, rotate the positive eigendirection onto
// the y-axis, and combine the angular classification of the vertical
// support lines with the certified two-sided K estimate.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "flatnewt/kbound.hpp"

namespace flatnewt {

struct Mat2 {
  double xx = 0.0, xy = 0.0;
  double yx = 0.0, yy = 0.0;
};

// Second derivative matrix of the integrand at the origin. Quadratic and
// Newtonian kinds have closed forms; Custom uses its known matrix when
// supplied, otherwise Richardson-extrapolated central second differences
// with the given base step. Throws NonFiniteSamples.
Mat2 hessian_at_zero(const Integrand& f, double step = 1e-4);

enum class HessianKind { PositiveDefinite, NegativeDefinite, Indefinite, Semidefinite };

std::string to_string(HessianKind k);

struct HessianClass {
  HessianKind kind = HessianKind::Semidefinite;
  std::array<double, 2> eigenvalues{0.0, 0.0};  // ascending
  std::array<Vec2, 2> eigenvectors{Vec2{1, 0}, Vec2{0, 1}};  // orthonormal
  // Indefinite only: eigenvalues are -a < 0 < b with these directions.
  double a = 0.0, b = 0.0;
  Vec2 positive_dir{0, 1}, negative_dir{1, 0};
};

// Closed-form symmetric 2x2 eigendecomposition; eigenvalues within
// tol * ||H|| of zero count as zero (Semidefinite). Throws AsymmetricInput
// when |xy - yx| exceeds tol * ||H||.
HessianClass classify_hessian(const Mat2& H, double tol = 1e-9);

enum class VerdictKind { LocalMin, NotLocalMin, Inconclusive };

std::string to_string(VerdictKind k);

struct Comparison {
  double b_over_a = 0.0;
  double k_lower = 0.0;
  std::optional<double> k_upper;  // empty: unbounded
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string reason;
  HessianClass hessian;
  // Present on the indefinite path: classification of the two vertical
  // support lines after rotating the positive eigendirection to the y-axis.
  std::optional<AngularVerdict> angular_left, angular_right;
  double rotation = 0.0;  // angle the domain was rotated by
  std::optional<KEstimate> k_estimate;
  std::optional<Comparison> comparison;
};

// Margins: the strict inequalities b/a < K_lower and b/a > K_upper must
// clear by 1e-9 relative slack before a definite verdict is issued.
Verdict decide_flat(const Domain& dom, const HessianClass& H,
                    const SearchBudget& budget = SearchBudget{},
                    std::uint64_t seed = 0);

Verdict decide_flat(const Domain& dom, const Integrand& f,
                    const SearchBudget& budget = SearchBudget{},
                    std::uint64_t seed = 0);

// Number of boundary points with multiple support lines (piece junctions
// whose one-sided tangents differ); `many` caps the count at 2.
struct SingularCount {
  int count = 0;   // exact when !many, otherwise >= 2
  bool many = false;
};

SingularCount corollary_singular_count(const Domain& dom);

}  // namespace flatnewt
