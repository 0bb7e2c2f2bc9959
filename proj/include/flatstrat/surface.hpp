#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "flatstrat/planar.hpp"

namespace flatstrat {

struct Polygon {
    std::vector<Vec2> vertices;  // counterclockwise

    int size() const { return static_cast<int>(vertices.size()); }
    const Vec2& vertex(int i) const { return vertices[static_cast<size_t>(((i % size()) + size()) % size())]; }
    Vec2 edge(int i) const { return vertex(i + 1) - vertex(i); }
    FieldElement area() const;
};

struct EdgeRef {
    int poly = 0;
    int edge = 0;
    friend bool operator==(const EdgeRef& a, const EdgeRef& b) { return a.poly == b.poly && a.edge == b.edge; }
    friend bool operator<(const EdgeRef& a, const EdgeRef& b) {
        return a.poly != b.poly ? a.poly < b.poly : a.edge < b.edge;
    }
};

struct Corner {
    int poly = 0;
    int vertex = 0;
    friend bool operator==(const Corner& a, const Corner& b) { return a.poly == b.poly && a.vertex == b.vertex; }
};

class Atlas;

class TranslationSurface {
public:
    TranslationSurface() = default;
    TranslationSurface(std::vector<Polygon> polygons, std::vector<std::pair<EdgeRef, EdgeRef>> gluings);
    TranslationSurface(const TranslationSurface& o) : polys_(o.polys_), glue_(o.glue_), pairs_(o.pairs_) {}
    TranslationSurface& operator=(const TranslationSurface& o);

    const std::vector<Polygon>& polygons() const { return polys_; }
    const Polygon& polygon(int i) const { return polys_[static_cast<size_t>(i)]; }
    const std::vector<std::pair<EdgeRef, EdgeRef>>& gluings() const { return pairs_; }
    // Edge glued to e; nullopt when unmatched.
    std::optional<EdgeRef> partner(const EdgeRef& e) const;
    RealNumberField field() const;
    int edge_count() const;

    // Image under a linear map (orientation preserving); gluings carried over.
    TranslationSurface transformed(const Mat2& M) const;

    // Triangulated flat structure; throws on invalid surfaces. Built once and shared.
    const Atlas& atlas() const;

private:
    std::vector<Polygon> polys_;
    std::vector<std::vector<std::optional<EdgeRef>>> glue_;
    std::vector<std::pair<EdgeRef, EdgeRef>> pairs_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const Atlas> atlas_;
};

struct VertexClassReport {
    std::vector<Corner> corners;  // counterclockwise around the point
    int angle_multiplier = 1;     // cone angle 2 pi k
};

struct ConeReport {
    std::vector<VertexClassReport> classes;
    int genus = 0;
    FieldElement area;

    int singular_count() const;
    // Multipliers of the classes with k > 1, descending.
    std::vector<int> stratum() const;
};

ConeReport validate(const TranslationSurface& S);

// ---------------------------------------------------------------- triangulated structure

// Angular position at a vertex class: direction dir on sheet m (0 <= m < k), measured
// counterclockwise from the class reference sector.
struct AngPos {
    int cls = 0;
    int sheet = 0;
    Vec2 dir;
};

bool same_position(const AngPos& a, const AngPos& b);

struct Triangle {
    int poly = 0;
    int pv[3] = {0, 0, 0};  // polygon vertex indices
    Vec2 p[3];
    int nb_tri[3] = {-1, -1, -1};
    int nb_edge[3] = {-1, -1, -1};
    bool glued[3] = {false, false, false};  // true for polygon edges, false for diagonals
    EdgeRef orig[3];                        // polygon edge when glued
    Vec2 shift[3];                          // translation into the neighbour's coordinates
    int cls[3] = {0, 0, 0};                 // vertex class at each corner

    Vec2 edge(int j) const { return p[(j + 1) % 3] - p[j]; }
};

struct TriCorner {
    int tri = 0;
    int v = 0;
};

struct VertexClass {
    std::vector<TriCorner> corners;  // counterclockwise
    std::vector<int> sheet_at_start;  // sheet of each corner's starting direction
    int k = 1;
    std::vector<Corner> poly_corners;
};

class Atlas {
public:
    explicit Atlas(const TranslationSurface& S);

    const std::vector<Triangle>& triangles() const { return tris_; }
    const Triangle& tri(int i) const { return tris_[static_cast<size_t>(i)]; }
    const std::vector<VertexClass>& classes() const { return classes_; }
    const VertexClass& vclass(int c) const { return classes_[static_cast<size_t>(c)]; }
    int class_of(const Corner& c) const;
    const ConeReport& report() const { return report_; }
    const TranslationSurface& surface() const { return *surface_; }
    RealNumberField field() const { return field_; }

    // Position of dir, which lies in the closed angular sector of the triangle corner.
    AngPos position(const TriCorner& c, const Vec2& dir) const;
    // Corner whose half-open sector [start, end) contains the position.
    int corner_index(const AngPos& pos) const;
    TriCorner corner_of(const AngPos& pos) const;
    // Rotate by (2 turns + 1) pi.
    AngPos rotate_half_turns(const AngPos& pos, int odd_half_turns) const;
    // The k positions of direction dir at class cls, sheet ascending.
    std::vector<AngPos> positions_of(int cls, const Vec2& dir) const;
    // Total order on positions of one class.
    bool position_less(const AngPos& a, const AngPos& b) const;

    // Triangle containing a polygon point, preferring one the ray in direction dir enters.
    std::optional<int> locate(int poly, const Vec2& point, const Vec2& dir) const;

private:
    std::shared_ptr<const TranslationSurface> surface_;
    RealNumberField field_;
    std::vector<Triangle> tris_;
    std::vector<VertexClass> classes_;
    std::vector<std::vector<int>> poly_vertex_class_;
    ConeReport report_;
    friend class TranslationSurface;
};

// Ear-clipping triangulation of a simple counterclockwise polygon; triples of vertex indices.
std::vector<std::array<int, 3>> triangulate(const Polygon& P);
bool polygon_is_simple(const Polygon& P);

// ---------------------------------------------------------------- ray tracing

// First exit of the ray P + t d (t > 0) from a triangle containing P. vertex >= 0 when
// the ray leaves through a corner, otherwise edge is the exit edge.
struct TriangleExit {
    FieldElement t;
    Vec2 point;
    int edge = -1;
    int vertex = -1;
};
TriangleExit triangle_exit(const Triangle& T, const Vec2& P, const Vec2& d);

enum class TraceKind { HitSingularity, Returned, BudgetExceeded };

struct TraceSegment {
    int tri = 0;
    Vec2 from;
    Vec2 to;
};

struct TraceResult {
    TraceKind kind = TraceKind::BudgetExceeded;
    FieldElement t;         // displacement = t * dir
    Vec2 holonomy;
    FieldElement length2;
    std::vector<EdgeRef> crossings;
    int end_class = -1;
    AngPos arrival;         // at the end point, direction pointing back along the ray
    std::vector<TraceSegment> segments;
};

struct TraceOptions {
    int budget = 10000;
    bool stop_at_marked = false;  // stop at k = 1 classes too
    bool record_segments = false;
};

int default_budget();

// Ray leaving a vertex class at an angular position.
TraceResult trace_from(const Atlas& A, const AngPos& start, const TraceOptions& opt);
// Ray from a point of a polygon (interior, edge or vertex). At a vertex the ray leaves
// through the sector of that polygon corner.
TraceResult trace_ray(const TranslationSurface& S, int poly, const Vec2& point, const Vec2& dir, int budget);
TraceResult trace_ray(const TranslationSurface& S, int poly, const Vec2& point, const Vec2& dir,
                      const TraceOptions& opt);

}  // namespace flatstrat
