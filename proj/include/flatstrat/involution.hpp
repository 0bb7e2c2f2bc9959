#pragma once

#include <optional>
#include <vector>

#include "flatstrat/surface.hpp"

namespace flatstrat {

// Flat automorphism with derivative -Id on a surface whose polygon vertices form one class.
// It sends the position (dir, sheet) to dir rotated by (2 rotation + 1) pi.
struct InvolutionMap {
    int rotation = 0;
    std::vector<AngPos> corner_images;  // image of each triangle corner's first edge direction, 3 per triangle
    int fixed_points = 0;               // the singularity included

    AngPos apply(const Atlas& A, const AngPos& p) const { return A.rotate_half_turns(p, 2 * rotation + 1); }
};

// Involution with derivative -Id fixing the unique vertex class, or nullopt. Throws WrongStratum when
// the polygon vertices do not form a single singular class.
std::optional<InvolutionMap> find_involution(const TranslationSurface& S, int budget);

// Requires one class with cone angle 10 pi and genus 3.
std::optional<InvolutionMap> is_hyperelliptic_H4(const TranslationSurface& S, int budget);

}  // namespace flatstrat
