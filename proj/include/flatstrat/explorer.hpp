#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "flatstrat/cylinders.hpp"
#include "flatstrat/splitting.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

// Saddle connection in the coordinates of the surface's own atlas.
struct SCPath {
    Vec2 holonomy;
    AngPos start;
    AngPos end;
    std::vector<TraceSegment> segments;
};

// Saddle connection id of a decomposition, mapped back from normalized coordinates.
SCPath surface_path(const TranslationSurface& S, const Decomposition& D, int id);

// Interiors meet (shared endpoints at vertices are allowed).
bool paths_meet(const Atlas& A, const SCPath& a, const SCPath& b);

// The surface cut open along interior-disjoint saddle connections.
// A side is (cut, +1) for the region on the left of the path and (cut, -1) on the right.
class CutComplex {
public:
    struct Side {
        int cut = 0;
        int side = 1;
        friend bool operator==(const Side& a, const Side& b) { return a.cut == b.cut && a.side == b.side; }
        friend bool operator<(const Side& a, const Side& b) {
            return a.cut != b.cut ? a.cut < b.cut : a.side < b.side;
        }
    };
    struct Component {
        std::vector<int> pieces;
        FieldElement area;
        std::vector<Side> sides;    // sorted
        std::vector<Vec2> periods;  // holonomies of closed loops inside the component, nonzero only
    };
    struct Reglued {
        TranslationSurface surface;
        std::vector<std::vector<bool>> original;  // polygon vertex is a vertex of the cut surface
        std::vector<Vec2> developed;              // polygon offsets of the development
    };

    CutComplex(const Atlas& A, std::vector<SCPath> cuts);

    int component_count() const { return static_cast<int>(comps_.size()); }
    const Component& component(int i) const { return comps_[static_cast<size_t>(i)]; }
    int component_of(const Side& s) const;
    // Component holding a point of a triangle that lies on no cut.
    int component_at(int tri, const Vec2& p) const;

    // Closed surface from one component by gluing side (a, s) to side (b, -s) for every listed pair.
    Reglued reglue(int comp, const std::vector<std::pair<int, int>>& pairs) const;

private:
    struct Edge {
        int kind = 0;  // 0: triangle edge, 1: cut
        int index = 0;  // triangle edge, or cut id
        int seg = 0;
        int side = 1;
        int nb_piece = -1, nb_edge = -1;
        Vec2 off;  // from the piece's triangle chart to the chart of the cut segment
    };
    struct Piece {
        int tri = 0;
        std::vector<Vec2> verts;
        std::vector<Edge> edges;  // edge i runs from verts[i] to verts[i + 1]
        int comp = -1;
    };

    const Atlas* A_;
    std::vector<SCPath> cuts_;
    std::vector<std::vector<Vec2>> prefix_;  // holonomy before each segment
    std::vector<Piece> pieces_;
    std::vector<Component> comps_;
    std::vector<Vec2> dev_;

    FieldElement param(const Edge& e, const Vec2& p) const;
    Vec2 dev_start(int piece, int edge) const;
};

// Marked torus from a reglued component of genus 1; offsets relative to marked point 0.
MarkedTorus reglued_torus(const CutComplex::Reglued& R);

struct SaddleConnectionSet {
    FieldElement bound;
    std::vector<SCPath> entries;  // sorted by (squared length, holonomy x, holonomy y, start)
    bool complete = true;
};

SaddleConnectionSet saddle_connections(const TranslationSurface& S, const FieldElement& L2, int budget);

struct SimpleCylinderHit {
    int a = 0, b = 0;  // entries of the set, equal holonomy, a on the cylinder's bottom
    Vec2 circumference;
    FieldElement area, modulus;
};

// Only circumferences accepted by the optional predicate are examined.
std::vector<SimpleCylinderHit> find_simple_cylinders(const TranslationSurface& S, const SaddleConnectionSet& set,
                                                     const std::function<bool(const Vec2&)>& want = {});
std::vector<SimpleCylinderHit> find_simple_cylinders(const TranslationSurface& S, const FieldElement& L2, int budget);

struct TheoremADecomposition {
    std::array<std::pair<int, int>, 4> pairs;  // entries of the set, ordered along the chain
    std::array<FieldElement, 5> areas;         // C(δ1), P(δ1,δ2), P(δ2,δ3), P(δ3,δ4), C(δ4)
    SplittingDatum splitting;                  // cut along δ1 and δ3
    SaddleConnectionSet set;
};

using DecompositionFilter = std::function<bool(const TheoremADecomposition&)>;

// First chain in search order accepted by the filter; NotFoundWithinBound otherwise.
TheoremADecomposition find_theorem_A(const TranslationSurface& S, const FieldElement& L2, int budget,
                                     const DecompositionFilter& accept = {});

// Splitting cut along a pair bounding a cylinder and a second homologous pair.
SplittingDatum splitting_from_pairs(const TranslationSurface& S, const std::pair<SCPath, SCPath>& d1,
                                    const std::pair<SCPath, SCPath>& d3);

// Splitting along the horizontal pairs of a three-cylinder horizontal decomposition of model CaseI.
SplittingDatum horizontal_splitting(const TranslationSurface& S, int budget);

enum class Separation { H2_H00, Other };
Separation separating_pair_check(const TranslationSurface& S, const SCPath& a, const SCPath& b);

}  // namespace flatstrat
