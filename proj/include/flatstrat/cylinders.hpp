#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatstrat/field.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

enum class DiagramModel { CaseI, CaseII };

std::string to_string(DiagramModel m);

// Three horizontal cylinders glued by one of the two models.
// CaseI: C1 simple, C3 carries the self-glued segment of length l1 + l3 - l2.
// CaseII: C1, C2 simple, C3 carries the self-glued segment of length l3 - l1 - l2.
struct CylinderDiagram {
    DiagramModel model = DiagramModel::CaseI;
    FieldElement widths[3];
    FieldElement heights[3];
    FieldElement twists[3];

    FieldElement area() const;
};

void check_diagram(const CylinderDiagram& D);
TranslationSurface build_diagram(const CylinderDiagram& D);

struct SaddleConnection {
    Vec2 holonomy;
    FieldElement length;  // in units of |dir|
    AngPos start;         // horizontal positions in the normalized surface
    AngPos end;
    std::vector<TraceSegment> segments;  // normalized coordinates
};

struct Cylinder {
    Vec2 circumference;
    FieldElement width;   // in units of |dir|; the actual width for horizontal
    FieldElement height;  // in units of |dir|
    FieldElement area;
    FieldElement modulus;
    FieldElement twist;
    std::vector<int> bottom;  // saddle connection ids, left to right
    std::vector<int> top;

    bool simple() const { return bottom.size() == 1 && top.size() == 1; }
};

struct Decomposition {
    Vec2 direction;
    std::vector<SaddleConnection> saddle_connections;
    std::vector<Cylinder> cylinders;
    FieldElement area;
    // Rotation index j of the involution on horizontal positions, when one was identified.
    std::optional<int> involution_index;
};

Decomposition decompose(const TranslationSurface& S, const Vec2& dir, int budget);

// Cylinder indices in model order (C1, C2, C3) for a three-cylinder decomposition.
struct DiagramOrder {
    DiagramModel model = DiagramModel::CaseI;
    int order[3] = {0, 1, 2};
};
std::optional<DiagramOrder> diagram_order(const Decomposition& D);

// Reads the three-cylinder model back from a horizontal decomposition.
std::optional<CylinderDiagram> recognize_diagram(const Decomposition& D);

struct Certificate {
    bool ok = false;
    std::vector<FieldElement> moduli;
    std::vector<Integer> witness;
    std::string diagnostic;
};

Certificate corollary_B_check(const TranslationSurface& S, const Vec2& dir, int budget);

}  // namespace flatstrat
