#pragma once

#include "stresskit/catastrophe.hpp"

#include <string>
#include <vector>

namespace stresskit {

/// Fixed-canvas plot geometry; identical input and style yield identical
/// bytes.
struct SvgStyle {
    int width = 860;
    int height = 640;
    int margin = 70;
    std::string title;
};

/// Arousal-performance chart: one polyline per path, circle markers filled
/// light to dark in date order.  Throws on empty input.
std::string emit_svg(const std::vector<CatastrophePath>& paths, const SvgStyle& style);

/// Crisis-segment chart: one polyline per segment, a distinct base hue per
/// segment, markers shaded by gradient_index.  Throws on empty input.
std::string emit_svg(const std::vector<CrisisSegment>& segments, const SvgStyle& style);

} // namespace stresskit
