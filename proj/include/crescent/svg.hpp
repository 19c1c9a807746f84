#pragma once

#include <string>

#include "crescent/solver.hpp"

namespace crescent {

/// Standalone SVG drawing of a realization: labelled points, one stroke
/// style per distance label, and a legend with the distance values. A
/// non-empty `metadata` is embedded, XML-escaped, in a <metadata> element.
std::string render_svg(const Realization& r, const std::string& metadata = {});

/// "class_<id>.svg"
std::string svg_file_name(int class_id);

}  // namespace crescent
