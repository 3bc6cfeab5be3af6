#pragma once

// Certified two-sided estimation of the quantity
//   K = sup over nonzero concave functions vanishing on the boundary of
//       (integral of u_x^2) / (integral of u_y^2):
// a lower bound from derivative-free search over hull functions, closed-form
// upper bounds available when both vertical support lines are angular, and a
// divergence certificate when one of them is not.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "flatnewt/functional.hpp"

namespace flatnewt {

struct SearchBudget {
  int restarts = 50;
  int iters = 200;  // pattern-search sweeps per restart
  std::vector<int> apex_counts{1, 2, 3, 4};
};

struct TracePoint {
  long long iteration = 0;  // cumulative sweeps consumed so far
  double best_ratio = 0.0;  // best exact ratio known at that point
};

struct KEstimate {
  double lower = 0.0;   // best exact ratio found; the witness achieves it
  HullFunction best;    // witnessing function on the full-resolution domain
  // Smallest applicable analytic bound; empty means no finite bound applies
  // (some vertical support line is not angular, so the ratio is unbounded).
  std::optional<double> upper;
  std::optional<double> first_bound;   // chord-constant route
  std::optional<double> second_bound;  // corner-slope route
  std::vector<TracePoint> search_trace;
};

// Upper bound from corner slopes: normalize the domain, take the larger
// squared cone-edge slope m at the two contact corners, and return
// 2 * (2 m^2 (1 + 4/pi^2)) + c^2/2 with c the normalizing shear.
// Requires both vertical support lines angular; throws NotAngular.
double second_proof_bound(const Domain& dom);

// Upper bound c1/c2 + cot^2(phi) with c1 = 4 (sin(a+phi)/sin(a-phi)) cot a,
// c2 = sin^2(b)/h^2 * area, from the containment-cone half-angle a, the
// minimal tangent-to-vertical angle b, and the diameter h. phi must lie in
// (0, a); omitted phi minimizes the bound over a grid. Throws NotAngular,
// PhiOutOfRange.
double first_proof_bound(const Domain& dom, std::optional<double> phi = std::nullopt);

// Multi-start coordinate pattern search over apex positions and heights
// (one height pinned to 1; the ratio is height-scale invariant) for each
// apex count. Deterministic for a fixed seed; restarts run concurrently and
// merge in (apex count, restart) order. The reported lower bound is the
// exact ratio of the reported witness.
KEstimate estimate_K(std::shared_ptr<const Domain> dom,
                     const SearchBudget& budget = SearchBudget{},
                     std::uint64_t seed = 0);

struct DivergenceCertificate {
  double threshold = 0.0;
  HullFunction witness;
  double achieved_ratio = 0.0;  // exact ratio of the witness, >= threshold
  double eps_used = 0.0;
  double phi_used = 0.0;
  Side side = Side::Right;
  ContactKind contact = ContactKind::Tangent;
};

// Drives the witness construction on a side whose vertical support line is
// not angular, with phi fixed so that cot^2(phi) = 2 * threshold and the
// chord offset halving from 1/2 until the exact ratio reaches the
// threshold. Throws HypothesisFailed when both sides are angular (no
// certificate can exist) and BudgetExhausted (carrying the best ratio seen)
// when the schedule runs out.
DivergenceCertificate divergence_certificate(std::shared_ptr<const Domain> dom,
                                             double threshold);

// Worker-thread cap honoring the FLATNEWT_THREADS environment variable.
int thread_cap();

}  // namespace flatnewt
