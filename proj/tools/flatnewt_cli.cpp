// Command-line front end: domain ingestion, analysis commands, canonical
// JSON reports, optional SVG figures.
//
// Exit codes: 0 success / flat profile is a local minimum; 1 expected
// negative result (not a local minimum, or no divergence certificate can
// exist); 2 undecided (inconclusive verdict, or certificate budget
// exhausted); 3 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatnewt/concave.hpp"
#include "flatnewt/decide.hpp"
#include "flatnewt/functional.hpp"
#include "flatnewt/geom2d.hpp"
#include "flatnewt/json_io.hpp"
#include "flatnewt/kbound.hpp"
#include "flatnewt/svg.hpp"

namespace fn = flatnewt;

namespace {

struct Options {
  std::string gen;
  std::string domain_path;
  int n_poly = 512;
  std::uint64_t seed = 0;
  int restarts = 50;
  int iters = 200;
  std::vector<int> apex_counts{1, 2, 3, 4};
  double threshold = 100.0;
  std::string integrand = "newtonian";
  std::vector<int> n_list{1, 2, 4, 8};
  int grid = 256;
  std::string svg_path;
  std::string out_path;
};

std::vector<int> config_int_list(const nlohmann::json& v) {
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(e.get<int>());
    return out;
  }
  std::stringstream ss(v.get<std::string>());
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

// The config file is a flat JSON object whose keys are the long option
// names; values supply defaults that explicit command-line flags override.
void apply_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw fn::ParseError("cannot read config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw fn::ParseError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw fn::ParseError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "gen") o.gen = value.get<std::string>();
      else if (key == "domain") o.domain_path = value.get<std::string>();
      else if (key == "n-poly") o.n_poly = value.get<int>();
      else if (key == "seed") o.seed = value.get<std::uint64_t>();
      else if (key == "restarts") o.restarts = value.get<int>();
      else if (key == "iters") o.iters = value.get<int>();
      else if (key == "apex-counts") o.apex_counts = config_int_list(value);
      else if (key == "threshold") o.threshold = value.get<double>();
      else if (key == "integrand") o.integrand = value.get<std::string>();
      else if (key == "N") o.n_list = config_int_list(value);
      else if (key == "grid") o.grid = value.get<int>();
      else if (key == "svg") o.svg_path = value.get<std::string>();
      else if (key == "out") o.out_path = value.get<std::string>();
      else throw fn::ParseError("unknown config key: " + key);
    } catch (const nlohmann::json::exception& e) {
      throw fn::ParseError("config key '" + key + "': " + e.what());
    } catch (const std::invalid_argument&) {
      throw fn::ParseError("config key '" + key + "': not an integer list");
    }
  }
}

std::shared_ptr<const fn::Domain> load_domain(const Options& o) {
  const bool has_gen = !o.gen.empty();
  const bool has_file = !o.domain_path.empty();
  if (has_gen == has_file)
    throw fn::ParseError("provide exactly one of --gen or --domain");
  if (has_gen)
    return std::make_shared<fn::Domain>(fn::make_generated_domain(o.gen, o.n_poly));
  std::ifstream in(o.domain_path);
  if (!in) throw fn::ParseError("cannot read domain file: " + o.domain_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return std::make_shared<fn::Domain>(fn::parse_domain_json(ss.str(), o.n_poly));
}

fn::SearchBudget budget_of(const Options& o) {
  fn::SearchBudget b;
  b.restarts = o.restarts;
  b.iters = o.iters;
  b.apex_counts = o.apex_counts;
  if (b.apex_counts.empty())
    throw fn::ValidationError("apex-counts must not be empty");
  for (int c : b.apex_counts)
    if (c < 1) throw fn::ValidationError("apex counts must be positive");
  return b;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw fn::ParseError("bad number '" + tok + "' in " + what);
    }
  }
  return out;
}

fn::Integrand parse_integrand(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "newtonian") {
    if (!args.empty()) throw fn::ParseError("newtonian takes no parameters");
    return fn::Integrand::newtonian();
  }
  if (name == "quadratic") {
    auto v = parse_number_list(args, "quadratic integrand");
    if (v.size() != 2)
      throw fn::ParseError("quadratic integrand needs exactly two coefficients");
    return fn::Integrand::quadratic(v[0], v[1]);
  }
  if (name == "custom") {
    auto v = parse_number_list(args, "custom integrand");
    if (v.size() != 3)
      throw fn::ParseError("custom integrand needs h11,h12,h22");
    const double h11 = v[0], h12 = v[1], h22 = v[2];
    auto f = [h11, h12, h22](fn::Vec2 z) {
      return 0.5 * (h11 * z.x * z.x + 2.0 * h12 * z.x * z.y + h22 * z.y * z.y);
    };
    return fn::Integrand::custom(f, std::array<double, 3>{h11, h12, h22});
  }
  throw fn::ParseError("unknown integrand '" + spec +
                       "' (expected newtonian, quadratic:l1,l2, or custom:h11,h12,h22)");
}

std::string integrand_json(const fn::Integrand& f) {
  switch (f.kind()) {
    case fn::Integrand::Kind::Quadratic:
      return fn::json_object({{"kind", fn::json_string("quadratic")},
                              {"lambda1", fn::json_number(f.lambda1())},
                              {"lambda2", fn::json_number(f.lambda2())}});
    case fn::Integrand::Kind::Newtonian:
      return fn::json_object({{"kind", fn::json_string("newtonian")}});
    case fn::Integrand::Kind::Custom: {
      std::string h = "null";
      if (f.known_hessian()) {
        const auto& m = *f.known_hessian();
        h = fn::json_array({fn::json_number(m[0]), fn::json_number(m[1]),
                            fn::json_number(m[2])});
      }
      return fn::json_object({{"hessian", h}, {"kind", fn::json_string("custom")}});
    }
  }
  return "null";
}

std::string assemble_report(const std::string& command, const fn::Domain& dom,
                            std::uint64_t seed, const fn::SearchBudget& budget,
                            std::vector<std::pair<std::string, std::string>> extra) {
  std::vector<std::pair<std::string, std::string>> fields{
      {"command", fn::json_string(command)},
      {"domain_summary", fn::domain_summary_json(dom)},
      {"provenance", fn::provenance_json(seed, budget)},
  };
  for (auto& f : extra) fields.push_back(std::move(f));
  return fn::json_object(std::move(fields));
}

void write_outputs(const Options& o, const std::string& report, const std::string& svg) {
  if (o.out_path.empty()) {
    std::cout << report << "\n";
  } else {
    std::ofstream out(o.out_path);
    if (!out) throw fn::ParseError("cannot write report to " + o.out_path);
    out << report << "\n";
  }
  if (!o.svg_path.empty()) {
    std::ofstream s(o.svg_path);
    if (!s) throw fn::ParseError("cannot write SVG to " + o.svg_path);
    s << svg;
  }
}

std::string domain_svg(const fn::Domain& dom, const fn::HullFunction* witness) {
  return fn::render_svg(dom, fn::classify_vertical_support(dom, fn::Side::Left),
                        fn::classify_vertical_support(dom, fn::Side::Right), witness);
}

int run_domain_info(const Options& o) {
  auto dom = load_domain(o);
  std::string report = assemble_report("domain-info", *dom, 0, fn::SearchBudget{},
                                       {{"certificates", "[]"}, {"verdicts", "[]"}});
  write_outputs(o, report, o.svg_path.empty() ? "" : domain_svg(*dom, nullptr));
  return 0;
}

int run_k_estimate(const Options& o) {
  auto dom = load_domain(o);
  fn::SearchBudget budget = budget_of(o);
  fn::KEstimate est = fn::estimate_K(dom, budget, o.seed);
  std::string report = assemble_report("k-estimate", *dom, o.seed, budget,
                                       {{"certificates", "[]"},
                                        {"k_estimate", fn::k_estimate_json(est)},
                                        {"verdicts", "[]"}});
  std::string svg;
  if (!o.svg_path.empty())
    svg = domain_svg(est.best.domain(), est.best.is_zero() ? nullptr : &est.best);
  write_outputs(o, report, svg);
  return 0;
}

int run_witness(const Options& o) {
  auto dom = load_domain(o);
  std::vector<std::pair<std::string, std::string>> extra{
      {"threshold", fn::json_number(o.threshold)}, {"verdicts", "[]"}};
  std::string svg;
  int code = 0;
  try {
    fn::DivergenceCertificate cert = fn::divergence_certificate(dom, o.threshold);
    extra.push_back({"certificates", fn::json_array({fn::certificate_json(cert)})});
    if (!o.svg_path.empty()) svg = domain_svg(cert.witness.domain(), &cert.witness);
  } catch (const fn::HypothesisFailed& e) {
    // Both vertical support lines are angular: report the finite analytic
    // ceiling that every schedule ratio must respect.
    std::optional<double> bound;
    try {
      bound = fn::second_proof_bound(*dom);
      double first = fn::first_proof_bound(*dom);
      if (first < *bound) bound = first;
    } catch (const fn::Error&) {
    }
    extra.push_back({"certificates", "[]"});
    extra.push_back(
        {"hypothesis_failed",
         fn::json_object({{"message", fn::json_string(e.what())},
                          {"upper_bound", bound ? fn::json_number(*bound) : "null"}})});
    if (!o.svg_path.empty()) svg = domain_svg(*dom, nullptr);
    code = 1;
  } catch (const fn::BudgetExhausted& e) {
    extra.push_back({"certificates", "[]"});
    extra.push_back(
        {"budget_exhausted",
         fn::json_object({{"best_ratio", fn::json_number(e.best_ratio)},
                          {"message", fn::json_string(e.what())}})});
    if (!o.svg_path.empty()) svg = domain_svg(*dom, nullptr);
    code = 2;
  }
  std::string report =
      assemble_report("witness", *dom, 0, fn::SearchBudget{}, std::move(extra));
  write_outputs(o, report, svg);
  return code;
}

int run_decide(const Options& o) {
  auto dom = load_domain(o);
  fn::Integrand f = parse_integrand(o.integrand);
  fn::SearchBudget budget = budget_of(o);
  fn::Verdict v = fn::decide_flat(*dom, f, budget, o.seed);
  std::string report = assemble_report(
      "decide", *dom, o.seed, budget,
      {{"certificates", "[]"},
       {"integrand", integrand_json(f)},
       {"verdicts", fn::json_array({fn::verdict_json(v)})}});
  std::string svg;
  if (!o.svg_path.empty()) {
    if (v.k_estimate && !v.k_estimate->best.is_zero())
      svg = domain_svg(v.k_estimate->best.domain(), &v.k_estimate->best);
    else
      svg = domain_svg(*dom, nullptr);
  }
  write_outputs(o, report, svg);
  switch (v.kind) {
    case fn::VerdictKind::LocalMin: return 0;
    case fn::VerdictKind::NotLocalMin: return 1;
    case fn::VerdictKind::Inconclusive: return 2;
  }
  return 2;
}

int run_oscillation(const Options& o) {
  auto dom = load_domain(o);
  std::vector<std::string> rows;
  for (int N : o.n_list) {
    fn::OscillatingField f(dom, N);
    auto gx2 = [&f](double x, double y) {
      fn::Vec2 g = f.gradient({x, y});
      return g.x * g.x;
    };
    auto gy2 = [&f](double x, double y) {
      fn::Vec2 g = f.gradient({x, y});
      return g.y * g.y;
    };
    double ix = fn::grid_quadrature(gx2, *dom, o.grid);
    double iy = fn::grid_quadrature(gy2, *dom, o.grid);
    const bool degenerate = !(iy > 0.0);
    auto violation = fn::find_concavity_violation(*dom, f);
    std::vector<std::pair<std::string, std::string>> row{
        {"I_x", fn::json_number(ix)},
        {"I_y", fn::json_number(iy)},
        {"N", fn::json_int(N)},
        {"concave", fn::json_bool(!violation.has_value())},
        {"degenerate", fn::json_bool(degenerate)},
        {"ratio", degenerate ? std::string("null") : fn::json_number(ix / iy)},
    };
    if (violation)
      row.push_back({"concavity_violation",
                     fn::json_array({fn::json_point(violation->first),
                                     fn::json_point(violation->second)})});
    rows.push_back(fn::json_object(std::move(row)));
  }
  std::string report = assemble_report("oscillation", *dom, 0, fn::SearchBudget{},
                                       {{"certificates", "[]"},
                                        {"oscillation", fn::json_array(rows)},
                                        {"verdicts", "[]"}});
  write_outputs(o, report, o.svg_path.empty() ? "" : domain_svg(*dom, nullptr));
  return 0;
}

void add_common(CLI::App* sub, Options& o, std::string& config_path) {
  sub->add_option("--gen", o.gen,
                  "generator spec: disk, half_disk, diamond, square, rectangle(w,h), "
                  "regular_ngon(n[,rot]), triangle(x1,y1,x2,y2,x3,y3), ellipse(a,b[,arcs])");
  sub->add_option("--domain", o.domain_path, "JSON domain description file");
  sub->add_option("--n-poly", o.n_poly, "polygonization vertex budget for curved boundaries")
      ->check(CLI::Range(3, 1 << 20));
  sub->add_option("--svg", o.svg_path, "write an SVG figure to this path");
  sub->add_option("--out", o.out_path, "write the JSON report here instead of stdout");
  sub->add_option("--config", config_path,
                  "JSON object of option defaults keyed by long option name");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;

  // The config file supplies defaults, so it must load before CLI parsing;
  // find it with a prescan.
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
  }
  if (!config_path.empty()) {
    try {
      apply_config(config_path, o);
    } catch (const fn::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    }
  }

  CLI::App app{
      "flatnewt " + std::string(fn::kToolVersion) +
      " — decides whether the flat profile minimizes a resistance-type functional "
      "on a bounded convex planar domain, via support-line classification, "
      "concave witness construction, and a certified interval for the extremal "
      "Dirichlet ratio"};
  app.require_subcommand(1);

  CLI::App* info = app.add_subcommand(
      "domain-info", "summarize a domain: pieces, area, diameter, singular points, "
                     "vertical support-line classification");
  add_common(info, o, config_path);

  CLI::App* kest = app.add_subcommand(
      "k-estimate", "certified interval for the supremum of the Dirichlet ratio over "
                    "concave functions vanishing on the boundary");
  add_common(kest, o, config_path);
  kest->add_option("--seed", o.seed, "search seed");
  kest->add_option("--restarts", o.restarts, "pattern-search restarts per apex count")
      ->check(CLI::Range(1, 100000));
  kest->add_option("--iters", o.iters, "pattern-search sweeps per restart")
      ->check(CLI::Range(1, 1000000));
  kest->add_option("--apex-counts", o.apex_counts, "apex counts to try (comma separated)")
      ->delimiter(',');

  CLI::App* wit = app.add_subcommand(
      "witness", "divergence certificate: chord witnesses near a non-angular vertical "
                 "support line driven past a ratio threshold");
  add_common(wit, o, config_path);
  wit->add_option("--threshold", o.threshold, "target Dirichlet ratio")
      ->check(CLI::PositiveNumber);

  CLI::App* dec = app.add_subcommand(
      "decide", "decide whether the flat profile locally minimizes the resistance "
                "functional for the given integrand");
  add_common(dec, o, config_path);
  dec->add_option("--integrand", o.integrand,
                  "newtonian | quadratic:l1,l2 | custom:h11,h12,h22");
  dec->add_option("--seed", o.seed, "search seed");
  dec->add_option("--restarts", o.restarts, "pattern-search restarts per apex count")
      ->check(CLI::Range(1, 100000));
  dec->add_option("--iters", o.iters, "pattern-search sweeps per restart")
      ->check(CLI::Range(1, 1000000));
  dec->add_option("--apex-counts", o.apex_counts, "apex counts to try (comma separated)")
      ->delimiter(',');

  CLI::App* osc = app.add_subcommand(
      "oscillation", "grid-quadrature Dirichlet ratios of the non-concave oscillating "
                     "family (squared boundary distance times sin(Nx))");
  add_common(osc, o, config_path);
  osc->add_option("--N", o.n_list, "frequencies to evaluate (comma separated)")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  osc->add_option("--grid", o.grid, "quadrature grid resolution")
      ->check(CLI::Range(16, 8192));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (app.got_subcommand(info)) return run_domain_info(o);
    if (app.got_subcommand(kest)) return run_k_estimate(o);
    if (app.got_subcommand(wit)) return run_witness(o);
    if (app.got_subcommand(dec)) return run_decide(o);
    if (app.got_subcommand(osc)) return run_oscillation(o);
  } catch (const fn::BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
