#include "flatnewt/kbound.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <variant>

namespace flatnewt {

namespace {

constexpr double kPi = std::numbers::pi;

double bound_formula_second(double m, double c) {
  double m_tilde = 2.0 * m * m * (1.0 + 4.0 / (kPi * kPi));
  return 2.0 * m_tilde + c * c / 2.0;
}

double bound_formula_first(const GeometricConstants& g, double phi) {
  double c1 = 4.0 * (std::sin(g.alpha + phi) / std::sin(g.alpha - phi)) /
              std::tan(g.alpha);
  double c2 = std::sin(g.beta) * std::sin(g.beta) / (g.h * g.h) * g.area;
  double cot = std::cos(phi) / std::sin(phi);
  return c1 / c2 + cot * cot;
}

}  // namespace

int thread_cap() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("FLATNEWT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = static_cast<int>(std::min<long>(v, 256));
  }
  return hw;
}

double second_proof_bound(const Domain& dom) {
  GeometricConstants g = geometric_constants(dom);  // throws NotAngular
  NormalizedDomain nd = normalize(dom);
  double m = std::max(g.m_left, g.m_right);
  return bound_formula_second(m, nd.shear_c);
}

double first_proof_bound(const Domain& dom, std::optional<double> phi) {
  GeometricConstants g = geometric_constants(dom);  // throws NotAngular
  if (phi) {
    if (!(*phi > 0) || !(*phi < g.alpha))
      throw PhiOutOfRange("phi must lie strictly between 0 and the cone angle");
    return bound_formula_first(g, *phi);
  }
  // Minimize over a grid in (0, alpha), then refine; the bound is smooth
  // and unimodal-in-practice with poles at both ends.
  const int N = 400;
  double best = std::numeric_limits<double>::infinity(), best_phi = g.alpha / 2;
  for (int i = 1; i <= N; ++i) {
    double p = g.alpha * i / (N + 1);
    double v = bound_formula_first(g, p);
    if (v < best) {
      best = v;
      best_phi = p;
    }
  }
  double step = g.alpha / (N + 1);
  double lo = std::max(best_phi - step, step * 1e-6);
  double hi = std::min(best_phi + step, g.alpha * (1 - 1e-9));
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (bound_formula_first(g, m1) > bound_formula_first(g, m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::min(best, bound_formula_first(g, 0.5 * (lo + hi)));
}

namespace {

// One restart's search state: apex positions followed by log-heights of all
// apexes but the first (pinned to height 1).
struct Config {
  std::vector<Apex> apexes;
};

double eval_config(const std::shared_ptr<const Domain>& dom, const Config& c,
                   double feasibility_margin) {
  for (const auto& a : c.apexes)
    if (!dom->strictly_inside(a.pos, feasibility_margin))
      return -std::numeric_limits<double>::infinity();
  try {
    HullFunction u = HullFunction::build(dom, c.apexes);
    DirichletSplit s = dirichlet_split(u);
    if (!(s.I_y > 0)) return -std::numeric_limits<double>::infinity();
    return s.I_x / s.I_y;
  } catch (const Error&) {
    return -std::numeric_limits<double>::infinity();
  }
}

// Pulls a point toward the centroid until it is strictly inside.
Point2 toward_interior(const Domain& dom, Point2 p, double margin) {
  Point2 c = dom.centroid();
  double s = 1.0;
  for (int it = 0; it < 80 && !dom.strictly_inside(c + s * (p - c), margin); ++it)
    s *= 0.9;
  return c + s * (p - c);
}

struct RestartResult {
  Config config;
  double ratio = -std::numeric_limits<double>::infinity();
  int sweeps_used = 0;
};

RestartResult run_restart(const std::shared_ptr<const Domain>& dom, int apex_count,
                          int restart, int iters, std::uint64_t seed) {
  const double scale = dom->scale();
  const double margin = 2 * dom->tol();

  Config cfg;
  cfg.apexes.resize(apex_count);
  if (restart == 0) {
    // Deterministic seed layout: first apex at the centroid, the rest on a
    // ring around it. The single-apex case starts as the centroid tent.
    cfg.apexes[0] = {dom->centroid(), 1.0};
    for (int i = 1; i < apex_count; ++i) {
      double ang = 2 * kPi * (i - 1) / std::max(1, apex_count - 1) + 0.35;
      Point2 p = dom->centroid() + (0.22 * scale) * dir_of(ang);
      cfg.apexes[i] = {toward_interior(*dom, p, margin), 1.0};
    }
  } else {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL +
                        std::uint64_t(apex_count) * 0x85EBCA77C2B2AE63ULL +
                        std::uint64_t(restart) * 0xC2B2AE3D27D4EB4FULL + 1ULL);
    std::uniform_real_distribution<double> ux(dom->bbox_min().x, dom->bbox_max().x);
    std::uniform_real_distribution<double> uy(dom->bbox_min().y, dom->bbox_max().y);
    std::uniform_real_distribution<double> uh(-0.7, 0.7);
    for (int i = 0; i < apex_count; ++i) {
      Point2 p{ux(rng), uy(rng)};
      for (int tries = 0; tries < 64 && !dom->strictly_inside(p, margin); ++tries)
        p = Point2{ux(rng), uy(rng)};
      if (!dom->strictly_inside(p, margin)) p = dom->centroid();
      cfg.apexes[i] = {p, i == 0 ? 1.0 : std::exp(uh(rng))};
    }
  }

  double best = eval_config(dom, cfg, margin);
  double pos_step = 0.2 * scale;
  double log_h_step = 0.3;
  RestartResult out;

  for (int sweep = 0; sweep < iters; ++sweep) {
    bool improved = false;
    for (int i = 0; i < apex_count; ++i) {
      for (int coord = 0; coord < 3; ++coord) {
        if (coord == 2 && i == 0) continue;  // first height pinned
        for (double sgn : {+1.0, -1.0}) {
          Config trial = cfg;
          Apex& a = trial.apexes[i];
          if (coord == 0)
            a.pos.x += sgn * pos_step;
          else if (coord == 1)
            a.pos.y += sgn * pos_step;
          else
            a.height = std::exp(std::log(a.height) + sgn * log_h_step);
          double v = eval_config(dom, trial, margin);
          if (v > best) {
            best = v;
            cfg = std::move(trial);
            improved = true;
            break;
          }
        }
      }
    }
    out.sweeps_used = sweep + 1;
    if (!improved) {
      pos_step *= 0.5;
      log_h_step *= 0.5;
      if (pos_step < 1e-10 * scale) break;
    }
  }
  out.config = std::move(cfg);
  out.ratio = best;
  return out;
}

// Exact full-resolution ratio of a configuration; apexes are pulled inside
// first (the search domain's interior need not nest inside the full one).
std::optional<std::pair<double, HullFunction>> exact_ratio_of(
    const std::shared_ptr<const Domain>& dom, Config cfg) {
  for (auto& a : cfg.apexes) a.pos = toward_interior(*dom, a.pos, 2 * dom->tol());
  try {
    HullFunction u = HullFunction::build(dom, cfg.apexes);
    DirichletSplit s = dirichlet_split(u);
    if (!(s.I_y > 0)) return std::nullopt;
    return std::make_pair(s.I_x / s.I_y, std::move(u));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

KEstimate estimate_K(std::shared_ptr<const Domain> dom, const SearchBudget& budget,
                     std::uint64_t seed) {
  if (!dom) throw ValidationError("null domain");
  if (budget.restarts < 1 || budget.iters < 1 || budget.apex_counts.empty())
    throw ValidationError("search budget must be positive");
  for (int k : budget.apex_counts)
    if (k < 1) throw ValidationError("apex counts must be positive");

  KEstimate est;

  // Analytic upper bounds when both vertical support lines are angular.
  try {
    est.second_bound = second_proof_bound(*dom);
    est.first_bound = first_proof_bound(*dom);
  } catch (const NotAngular&) {
    est.second_bound.reset();
    est.first_bound.reset();
  }
  if (est.second_bound || est.first_bound) {
    double u = std::numeric_limits<double>::infinity();
    if (est.first_bound) u = std::min(u, *est.first_bound);
    if (est.second_bound) u = std::min(u, *est.second_bound);
    est.upper = u;
  }

  // Search at reduced boundary resolution (exact re-evaluation happens at
  // full resolution below); pure polygons are already minimal.
  std::shared_ptr<const Domain> search_dom = dom;
  bool has_arc = false;
  for (const auto& p : dom->pieces())
    if (std::holds_alternative<Arc>(p)) has_arc = true;
  if (has_arc && dom->n_poly() > 96)
    search_dom = std::make_shared<Domain>(Domain::build(dom->pieces(), 96));

  struct Job {
    int count;
    int restart;
  };
  std::vector<Job> jobs;
  for (int k : budget.apex_counts)
    for (int r = 0; r < budget.restarts; ++r) jobs.push_back({k, r});

  std::vector<RestartResult> results(jobs.size());
  std::atomic<size_t> next{0};
  int workers = std::min<int>(thread_cap(), static_cast<int>(jobs.size()));
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      results[i] =
          run_restart(search_dom, jobs[i].count, jobs[i].restart, budget.iters, seed);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Deterministic merge: the centroid tent anchors the estimate, then each
  // restart's best configuration is re-evaluated exactly in job order.
  HullFunction tent0 = tent(dom, dom->centroid(), 1.0);
  {
    DirichletSplit s = dirichlet_split(tent0);
    est.lower = s.I_y > 0 ? s.I_x / s.I_y : 0.0;
    est.best = tent0;
  }
  est.search_trace.push_back({0, est.lower});

  long long cum = 0;
  for (size_t i = 0; i < jobs.size(); ++i) {
    cum += results[i].sweeps_used;
    if (std::isfinite(results[i].ratio)) {
      if (auto ex = exact_ratio_of(dom, results[i].config)) {
        if (ex->first > est.lower) {
          est.lower = ex->first;
          est.best = std::move(ex->second);
        }
      }
    }
    est.search_trace.push_back({cum, est.lower});
  }
  return est;
}

namespace {

std::optional<DivergenceCertificate> certificate_attempt(
    const std::shared_ptr<const Domain>& dom, double threshold, double phi,
    Side side, double& best) {
  for (int j = 1; j <= 40; ++j) {
    WitnessParams params;
    params.phi = phi;
    params.eps = std::ldexp(1.0, -j);  // 2^-j
    params.shrink = 0.8;
    WitnessStep step;
    try {
      step = make_witness(dom, params, side);
    } catch (const ChordTooShort&) {
      continue;
    } catch (const ApexOutsideDomain&) {
      continue;
    }
    double ratio = rayleigh_ratio(step.function);
    if (!std::isfinite(ratio)) continue;
    best = std::max(best, ratio);
    if (ratio >= threshold) {
      DivergenceCertificate cert;
      cert.threshold = threshold;
      cert.witness = step.function;
      cert.achieved_ratio = ratio;
      cert.eps_used = params.eps;
      cert.phi_used = phi;
      cert.side = side;
      cert.contact = step.contact;
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace

DivergenceCertificate divergence_certificate(std::shared_ptr<const Domain> dom,
                                             double threshold) {
  if (!dom) throw ValidationError("null domain");
  if (!(threshold > 0)) throw ValidationError("threshold must be positive");

  AngularVerdict vr = classify_vertical_support(*dom, Side::Right);
  AngularVerdict vl = classify_vertical_support(*dom, Side::Left);
  if (vr.kind == ContactKind::Angular && vl.kind == ContactKind::Angular)
    throw HypothesisFailed(
        "both vertical support lines are angular; the ratio is bounded and no "
        "divergence certificate exists");
  Side side = (vr.kind != ContactKind::Angular) ? Side::Right : Side::Left;

  // cot^2(phi) = 2 * threshold leaves a factor-2 headroom over the target.
  double phi = std::atan(1.0 / std::sqrt(2.0 * threshold));

  double best = 0.0;
  if (auto cert = certificate_attempt(dom, threshold, phi, side, best)) return *cert;

  // Curved boundaries cap the usable chord offset at the polygonization
  // sagitta; refine the inscribed polygon and push the schedule deeper.
  bool has_arc = false;
  for (const auto& p : dom->pieces())
    if (std::holds_alternative<Arc>(p)) has_arc = true;
  if (has_arc) {
    for (int n = std::max(2 * dom->n_poly(), 1024); n <= 8192; n *= 2) {
      auto refined = std::make_shared<Domain>(Domain::build(dom->pieces(), n));
      if (auto cert = certificate_attempt(refined, threshold, phi, side, best))
        return *cert;
    }
  }
  throw BudgetExhausted("offset schedule exhausted below the threshold", best);
}

}  // namespace flatnewt
