#pragma once

#include <span>
#include <string>

#include "fewn/conjunction.hpp"

namespace fewn::cli {

/// Static SVG of required participants against the typicality bound: the
/// real-valued curve (blue) and the integer staircase (red).
std::string render_figure1_svg(std::span<const Figure1Row> rows, double alpha, double beta,
                               double p_crit);

}  // namespace fewn::cli
