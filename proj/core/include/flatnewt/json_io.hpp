#pragma once

// Canonical JSON emission (sorted keys, shortest round-trip floats capped at
// 12 significant digits, normalized -0) and domain-description parsing.
// Reports built from these pieces are byte-identical across runs.

#include <string>
#include <utility>
#include <vector>

#include "flatnewt/decide.hpp"

namespace flatnewt {

inline constexpr const char* kToolVersion = "0.1.0";

// Shortest decimal string in 1..12 significant digits that parses back to
// the same double; 12 digits otherwise. Nonfinite values become "null",
// negative zero becomes "0".
std::string format_double(double v);

// Canonical JSON combinators. Values passed in must already be canonical
// JSON; json_object sorts fields by key.
std::string json_string(const std::string& s);
std::string json_number(double v);
std::string json_int(long long v);
std::string json_bool(bool b);
std::string json_array(const std::vector<std::string>& values);
std::string json_object(std::vector<std::pair<std::string, std::string>> fields);
std::string json_point(Point2 p);

// Report fragments.
std::string angular_verdict_json(const AngularVerdict& v);
std::string domain_summary_json(const Domain& dom);
std::string hull_function_json(const HullFunction& u);
std::string k_estimate_json(const KEstimate& est);
std::string certificate_json(const DivergenceCertificate& cert);
std::string witness_step_json(const WitnessStep& step);
std::string verdict_json(const Verdict& v);
std::string provenance_json(std::uint64_t seed, const SearchBudget& budget);

// Parses {"pieces":[{"type":"segment","from":[x,y],"to":[x,y]} |
// {"type":"arc","center":[x,y],"radius":r,"start_angle":s,"end_angle":e},
// ...], "n_poly": optional int} and builds the domain. Throws ParseError on
// malformed input; boundary validation errors propagate from the builder.
Domain parse_domain_json(const std::string& text, int default_n_poly = 512);

std::string domain_pieces_json(const Domain& dom);

}  // namespace flatnewt
