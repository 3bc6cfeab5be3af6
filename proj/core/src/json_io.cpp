#include "flatnewt/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace flatnewt {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  char buf[64];
  for (int prec = 1; prec <= 12; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

std::string json_number(double v) { return format_double(v); }

std::string json_int(long long v) { return std::to_string(v); }

std::string json_bool(bool b) { return b ? "true" : "false"; }

std::string json_array(const std::vector<std::string>& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += values[i];
  }
  out += ']';
  return out;
}

std::string json_object(std::vector<std::pair<std::string, std::string>> fields) {
  std::sort(fields.begin(), fields.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out = "{";
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += json_string(fields[i].first);
    out += ':';
    out += fields[i].second;
  }
  out += '}';
  return out;
}

std::string json_point(Point2 p) {
  return json_array({json_number(p.x), json_number(p.y)});
}

namespace {

std::string side_name(Side s) { return s == Side::Right ? "right" : "left"; }

std::string segment_json(const Segment& s) {
  return json_object({{"from", json_point(s.from)},
                      {"to", json_point(s.to)},
                      {"type", json_string("segment")}});
}

std::string arc_json(const Arc& a) {
  return json_object({{"center", json_point(a.center)},
                      {"end_angle", json_number(a.end_angle)},
                      {"radius", json_number(a.radius)},
                      {"start_angle", json_number(a.start_angle)},
                      {"type", json_string("arc")}});
}

}  // namespace

std::string angular_verdict_json(const AngularVerdict& v) {
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("kind", json_string(to_string(v.kind)));
  f.emplace_back("contact_point", json_point(v.contact_point));
  f.emplace_back("margin", json_number(v.margin));
  if (v.cone)
    f.emplace_back("cone",
                   json_array({json_point((*v.cone)[0]), json_point((*v.cone)[1])}));
  if (v.contact_edge)
    f.emplace_back("contact_edge", json_array({json_point(v.contact_edge->from),
                                               json_point(v.contact_edge->to)}));
  return json_object(std::move(f));
}

std::string domain_pieces_json(const Domain& dom) {
  std::vector<std::string> out;
  for (const auto& p : dom.pieces()) {
    if (const auto* s = std::get_if<Segment>(&p))
      out.push_back(segment_json(*s));
    else
      out.push_back(arc_json(std::get<Arc>(p)));
  }
  return json_array(out);
}

std::string domain_summary_json(const Domain& dom) {
  SingularCount sc = corollary_singular_count(dom);
  AngularVerdict left = classify_vertical_support(dom, Side::Left);
  AngularVerdict right = classify_vertical_support(dom, Side::Right);
  return json_object({
      {"area", json_number(dom.area())},
      {"bbox", json_array({json_point(dom.bbox_min()), json_point(dom.bbox_max())})},
      {"centroid", json_point(dom.centroid())},
      {"diameter", json_number(diameter(dom))},
      {"n_poly", json_int(dom.n_poly())},
      {"piece_count", json_int(static_cast<long long>(dom.pieces().size()))},
      {"pieces", domain_pieces_json(dom)},
      {"polygon_vertices", json_int(static_cast<long long>(dom.polygon().size()))},
      {"singular_points",
       json_object({{"count", json_int(sc.count)}, {"many", json_bool(sc.many)}})},
      {"support_left", angular_verdict_json(left)},
      {"support_right", angular_verdict_json(right)},
  });
}

std::string hull_function_json(const HullFunction& u) {
  std::vector<std::string> apexes;
  for (const auto& a : u.apexes())
    apexes.push_back(
        json_object({{"height", json_number(a.height)}, {"pos", json_point(a.pos)}}));
  DirichletSplit s = dirichlet_split(u);
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("apexes", json_array(apexes));
  f.emplace_back("I_x", json_number(s.I_x));
  f.emplace_back("I_y", json_number(s.I_y));
  f.emplace_back("facets", json_int(static_cast<long long>(u.surface().facets.size())));
  if (!u.is_zero() && s.I_y > 0) f.emplace_back("ratio", json_number(s.I_x / s.I_y));
  return json_object(std::move(f));
}

std::string k_estimate_json(const KEstimate& est) {
  std::vector<std::string> trace;
  trace.reserve(est.search_trace.size());
  for (const auto& t : est.search_trace)
    trace.push_back(json_array({json_int(t.iteration), json_number(t.best_ratio)}));
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("lower", json_number(est.lower));
  f.emplace_back("upper", est.upper ? json_number(*est.upper) : json_string("unbounded"));
  f.emplace_back("first_bound",
                 est.first_bound ? json_number(*est.first_bound) : std::string("null"));
  f.emplace_back("second_bound",
                 est.second_bound ? json_number(*est.second_bound) : std::string("null"));
  f.emplace_back("search_trace", json_array(trace));
  f.emplace_back("witness", hull_function_json(est.best));
  return json_object(std::move(f));
}

std::string certificate_json(const DivergenceCertificate& cert) {
  return json_object({
      {"achieved_ratio", json_number(cert.achieved_ratio)},
      {"contact", json_string(to_string(cert.contact))},
      {"eps_used", json_number(cert.eps_used)},
      {"phi_used", json_number(cert.phi_used)},
      {"side", json_string(side_name(cert.side))},
      {"threshold", json_number(cert.threshold)},
      {"witness", hull_function_json(cert.witness)},
  });
}

std::string witness_step_json(const WitnessStep& step) {
  double ratio = rayleigh_ratio(step.function);
  return json_object({
      {"ab", json_array({json_point(step.ab.from), json_point(step.ab.to)})},
      {"ab_length", json_number(step.ab_length)},
      {"chord", json_array({json_point(step.chord.from), json_point(step.chord.to)})},
      {"chord_length", json_number(step.chord_length)},
      {"contact", json_string(to_string(step.contact))},
      {"eps", json_number(step.params.eps)},
      {"phi", json_number(step.params.phi)},
      {"r", json_number(step.r)},
      {"ratio", json_number(ratio)},
      {"shrink", json_number(step.params.shrink)},
      {"side", json_string(side_name(step.side))},
      {"theta", json_number(step.params.theta)},
      {"xi", json_point(step.xi)},
  });
}

std::string verdict_json(const Verdict& v) {
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("kind", json_string(to_string(v.kind)));
  f.emplace_back("reason", json_string(v.reason));
  f.emplace_back(
      "hessian",
      json_object({
          {"kind", json_string(to_string(v.hessian.kind))},
          {"eigenvalues", json_array({json_number(v.hessian.eigenvalues[0]),
                                      json_number(v.hessian.eigenvalues[1])})},
          {"eigenvectors", json_array({json_point(v.hessian.eigenvectors[0]),
                                       json_point(v.hessian.eigenvectors[1])})},
          {"a", json_number(v.hessian.a)},
          {"b", json_number(v.hessian.b)},
          {"positive_dir", json_point(v.hessian.positive_dir)},
          {"negative_dir", json_point(v.hessian.negative_dir)},
      }));
  f.emplace_back("rotation", json_number(v.rotation));
  if (v.angular_left) f.emplace_back("support_left", angular_verdict_json(*v.angular_left));
  if (v.angular_right)
    f.emplace_back("support_right", angular_verdict_json(*v.angular_right));
  if (v.k_estimate) f.emplace_back("k_estimate", k_estimate_json(*v.k_estimate));
  if (v.comparison) {
    f.emplace_back(
        "comparison",
        json_object({{"b_over_a", json_number(v.comparison->b_over_a)},
                     {"k_lower", json_number(v.comparison->k_lower)},
                     {"k_upper", v.comparison->k_upper
                                     ? json_number(*v.comparison->k_upper)
                                     : json_string("unbounded")}}));
  }
  return json_object(std::move(f));
}

std::string provenance_json(std::uint64_t seed, const SearchBudget& budget) {
  std::vector<std::string> counts;
  for (int k : budget.apex_counts) counts.push_back(json_int(k));
  return json_object({
      {"budget", json_object({{"apex_counts", json_array(counts)},
                              {"iters", json_int(budget.iters)},
                              {"restarts", json_int(budget.restarts)}})},
      {"seed", json_int(static_cast<long long>(seed))},
      {"tool_version", json_string(kToolVersion)},
  });
}

Domain parse_domain_json(const std::string& text, int default_n_poly) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array())
    throw ParseError("expected an object with a \"pieces\" array");

  auto as_point = [](const nlohmann::json& p) -> Point2 {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ParseError("points must be [x, y] number pairs");
    return {p[0].get<double>(), p[1].get<double>()};
  };

  std::vector<BoundaryPiece> pieces;
  for (const auto& pj : j["pieces"]) {
    if (!pj.is_object() || !pj.contains("type") || !pj["type"].is_string())
      throw ParseError("each piece needs a string \"type\"");
    std::string type = pj["type"].get<std::string>();
    if (type == "segment") {
      if (!pj.contains("from") || !pj.contains("to"))
        throw ParseError("segment pieces need \"from\" and \"to\"");
      pieces.push_back(Segment{as_point(pj["from"]), as_point(pj["to"])});
    } else if (type == "arc") {
      for (const char* key : {"center", "radius", "start_angle", "end_angle"})
        if (!pj.contains(key))
          throw ParseError(std::string("arc pieces need \"") + key + "\"");
      if (!pj["radius"].is_number() || !pj["start_angle"].is_number() ||
          !pj["end_angle"].is_number())
        throw ParseError("arc radius and angles must be numbers");
      pieces.push_back(Arc{as_point(pj["center"]), pj["radius"].get<double>(),
                           pj["start_angle"].get<double>(),
                           pj["end_angle"].get<double>()});
    } else {
      throw ParseError("unknown piece type \"" + type + "\"");
    }
  }

  int n_poly = default_n_poly;
  if (j.contains("n_poly")) {
    if (!j["n_poly"].is_number_integer() || j["n_poly"].get<long long>() < 3)
      throw ParseError("\"n_poly\" must be an integer >= 3");
    n_poly = static_cast<int>(j["n_poly"].get<long long>());
  }
  return Domain::build(std::move(pieces), n_poly);
}

}  // namespace flatnewt
