#pragma once

// Deterministic SVG rendering of a domain: boundary, vertical support lines
// with contact markers and cone rays, and optional level sets of a
// piecewise-linear concave function.

#include <optional>
#include <string>

#include "flatnewt/concave.hpp"

namespace flatnewt {

std::string render_svg(const Domain& dom,
                       const std::optional<AngularVerdict>& left,
                       const std::optional<AngularVerdict>& right,
                       const HullFunction* witness = nullptr, int n_levels = 8);

}  // namespace flatnewt
