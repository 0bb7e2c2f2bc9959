#pragma once

#include <string>
#include <vector>

#include "flatstrat/explorer.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

struct SvgOverlay {
    SCPath path;  // segments in triangle charts of the surface's atlas
    std::string label;
    std::string color = "#c0392b";
};

// Polygons side by side, glued edges sharing a color and tick count. Vertices carry their exact
// coordinates in data-x and data-y attributes.
std::string render_svg(const TranslationSurface& S, const std::vector<SvgOverlay>& overlays = {},
                       const std::string& title = "");

}  // namespace flatstrat
