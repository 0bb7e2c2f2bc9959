#pragma once

#include <optional>
#include <string>
#include <variant>

#include "flatstrat/cylinders.hpp"
#include "flatstrat/splitting.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

// Text formats. Scalars are rationals `p/q` or power-basis vectors `[a0, ..., a_{d-1}]` in the field
// declared by `field poly(c0, ..., cd) root in [lo, hi]`. Blank lines and `#` comments are ignored.
// Syntax errors raise ParseError with the 1-based line number.

// polygon P1 = (x0, y0) (x1, y1) ...
// glue P1.e0 P2.e2
TranslationSurface parse_surface(const std::string& text);

// splitting
//   torus T1 basis (u) (w) marked (o)
//   torus T2 basis (u) (w) marked (o1) (o2)
//   torus T3 basis (u) (w) marked (o1) (o2)
//   v1 (x, y)
//   v2 (x, y)
// end
SplittingDatum parse_splitting(const std::string& text);

// diagram caseI|caseII widths l1 l2 l3 heights h1 h2 h3 twists t1 t2 t3
CylinderDiagram parse_diagram(const std::string& text);

std::string write_surface(const TranslationSurface& S);
std::string write_splitting(const SplittingDatum& X);
std::string write_diagram(const CylinderDiagram& D);

std::string write_scalar(const FieldElement& x);

// A single scalar, or a point `x, y` with optional parentheses; coordinate vectors refer to K.
FieldElement parse_scalar(const std::string& text, const std::optional<RealNumberField>& K = {});
Vec2 parse_point(const std::string& text, const std::optional<RealNumberField>& K = {});

using LoadedInput = std::variant<TranslationSurface, SplittingDatum, CylinderDiagram>;

// Dispatches on the extension `.surf`, `.split` or `.diag`.
LoadedInput parse_input(const std::string& text, const std::string& path);
std::string read_file(const std::string& path);

}  // namespace flatstrat
