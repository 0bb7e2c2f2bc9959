#include "flatstrat/surface.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>

#include "flatstrat/error.hpp"

namespace flatstrat {

namespace {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return wedge(b - a, c - a).sign(); }

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    if (orient(a, b, p) != 0) return false;
    return dot(p - a, p - b).sign() <= 0;
}

bool segments_meet(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

// Closed triangle containment for a counterclockwise triangle.
bool in_closed_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

// dir in the half-open sector [a, b) of angle below pi.
bool in_sector(const Vec2& a, const Vec2& b, const Vec2& dir) {
    return wedge(a, dir).sign() >= 0 && wedge(dir, b).sign() > 0;
}

bool in_closed_sector(const Vec2& a, const Vec2& b, const Vec2& dir) {
    return wedge(a, dir).sign() >= 0 && wedge(dir, b).sign() >= 0 && !(parallel(a, dir) && dot(a, dir).sign() < 0);
}

int mod(int a, int k) { return ((a % k) + k) % k; }

}  // namespace

FieldElement Polygon::area() const {
    FieldElement s;
    for (int i = 0; i < size(); ++i) s += wedge(vertex(i), vertex(i + 1));
    return s / 2;
}

bool polygon_is_simple(const Polygon& P) {
    int n = P.size();
    if (n < 3) return false;
    for (int i = 0; i < n; ++i) {
        if (P.vertex(i) == P.vertex(i + 1)) return false;
        // Consecutive edges must not fold back on each other.
        Vec2 e = P.edge(i), f = P.edge(i + 1);
        if (parallel(e, f) && dot(e, f).sign() < 0) return false;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_meet(P.vertex(i), P.vertex(i + 1), P.vertex(j), P.vertex(j + 1))) return false;
        }
    return true;
}

std::vector<std::array<int, 3>> triangulate(const Polygon& P) {
    std::vector<int> idx(static_cast<size_t>(P.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::array<int, 3>> out;
    while (idx.size() > 3) {
        size_t m = idx.size();
        bool clipped = false;
        for (size_t i = 0; i < m && !clipped; ++i) {
            int a = idx[(i + m - 1) % m], b = idx[i], c = idx[(i + 1) % m];
            const Vec2 &A = P.vertex(a), &B = P.vertex(b), &C = P.vertex(c);
            if (orient(A, B, C) <= 0) continue;
            bool empty = true;
            for (int o : idx) {
                if (o == a || o == b || o == c) continue;
                if (in_closed_triangle(A, B, C, P.vertex(o))) {
                    empty = false;
                    break;
                }
            }
            if (!empty) continue;
            out.push_back({a, b, c});
            idx.erase(idx.begin() + static_cast<long>(i));
            clipped = true;
        }
        require(clipped, ErrorKind::Internal, "ear clipping found no ear");
    }
    require(orient(P.vertex(idx[0]), P.vertex(idx[1]), P.vertex(idx[2])) > 0, ErrorKind::Internal,
            "degenerate final triangle");
    out.push_back({idx[0], idx[1], idx[2]});
    return out;
}

// ---------------------------------------------------------------- TranslationSurface

TranslationSurface::TranslationSurface(std::vector<Polygon> polygons, std::vector<std::pair<EdgeRef, EdgeRef>> gluings)
    : polys_(std::move(polygons)), pairs_(std::move(gluings)) {
    glue_.resize(polys_.size());
    for (size_t i = 0; i < polys_.size(); ++i) glue_[i].assign(static_cast<size_t>(polys_[i].size()), std::nullopt);
    auto valid = [&](const EdgeRef& e) {
        return e.poly >= 0 && e.poly < static_cast<int>(polys_.size()) && e.edge >= 0 &&
               e.edge < polys_[static_cast<size_t>(e.poly)].size();
    };
    for (const auto& [a, b] : pairs_) {
        require(valid(a) && valid(b), ErrorKind::BadGluing, "gluing refers to a missing edge");
        require(!(a == b), ErrorKind::BadGluing, "edge glued to itself");
        auto& ga = glue_[static_cast<size_t>(a.poly)][static_cast<size_t>(a.edge)];
        auto& gb = glue_[static_cast<size_t>(b.poly)][static_cast<size_t>(b.edge)];
        require(!ga && !gb, ErrorKind::BadGluing,
                "edge P" + std::to_string(a.poly + 1) + ".e" + std::to_string(a.edge) + " or P" +
                    std::to_string(b.poly + 1) + ".e" + std::to_string(b.edge) + " glued twice");
        ga = b;
        gb = a;
    }
}

TranslationSurface& TranslationSurface::operator=(const TranslationSurface& o) {
    if (this == &o) return *this;
    polys_ = o.polys_;
    glue_ = o.glue_;
    pairs_ = o.pairs_;
    std::lock_guard<std::mutex> lk(mu_);
    atlas_.reset();
    return *this;
}

std::optional<EdgeRef> TranslationSurface::partner(const EdgeRef& e) const {
    return glue_[static_cast<size_t>(e.poly)][static_cast<size_t>(e.edge)];
}

RealNumberField TranslationSurface::field() const {
    std::vector<FieldElement> xs;
    for (const auto& P : polys_)
        for (const auto& v : P.vertices) {
            xs.push_back(v.x);
            xs.push_back(v.y);
        }
    return common_field(xs);
}

int TranslationSurface::edge_count() const {
    int n = 0;
    for (const auto& P : polys_) n += P.size();
    return n;
}

TranslationSurface TranslationSurface::transformed(const Mat2& M) const {
    require(M.det().sign() > 0, ErrorKind::InvalidInput, "orientation-reversing map");
    std::vector<Polygon> ps = polys_;
    for (auto& P : ps)
        for (auto& v : P.vertices) v = M.apply(v);
    return TranslationSurface(std::move(ps), pairs_);
}

const Atlas& TranslationSurface::atlas() const {
    std::lock_guard<std::mutex> lk(mu_);
    if (!atlas_) atlas_ = std::make_shared<const Atlas>(*this);
    return *atlas_;
}

int ConeReport::singular_count() const {
    return static_cast<int>(std::count_if(classes.begin(), classes.end(),
                                          [](const VertexClassReport& c) { return c.angle_multiplier > 1; }));
}

std::vector<int> ConeReport::stratum() const {
    std::vector<int> ks;
    for (const auto& c : classes)
        if (c.angle_multiplier > 1) ks.push_back(c.angle_multiplier);
    std::sort(ks.rbegin(), ks.rend());
    return ks;
}

ConeReport validate(const TranslationSurface& S) { return S.atlas().report(); }

// ---------------------------------------------------------------- Atlas

Atlas::Atlas(const TranslationSurface& S) : surface_(std::make_shared<const TranslationSurface>(S)) {
    const auto& polys = surface_->polygons();
    require(!polys.empty(), ErrorKind::InvalidInput, "surface without polygons");
    for (size_t i = 0; i < polys.size(); ++i) {
        const auto& P = polys[i];
        std::string name = "P" + std::to_string(i + 1);
        require(P.size() >= 3, ErrorKind::InvalidInput, name + " has fewer than 3 vertices");
        require(P.area().sign() > 0, ErrorKind::InvalidInput, name + " is not counterclockwise");
        require(polygon_is_simple(P), ErrorKind::InvalidInput, name + " is not simple");
    }
    field_ = surface_->field();

    // Gluing checks.
    for (size_t i = 0; i < polys.size(); ++i)
        for (int e = 0; e < polys[i].size(); ++e) {
            EdgeRef r{static_cast<int>(i), e};
            auto q = surface_->partner(r);
            std::string name = "P" + std::to_string(i + 1) + ".e" + std::to_string(e);
            require(q.has_value(), ErrorKind::BadGluing, "edge " + name + " is not glued");
            Vec2 h = polys[i].edge(e) + polys[static_cast<size_t>(q->poly)].edge(q->edge);
            require(h.is_zero(), ErrorKind::BadGluing,
                    "edges " + name + " and P" + std::to_string(q->poly + 1) + ".e" + std::to_string(q->edge) +
                        " have different holonomy");
        }
    {
        std::vector<int> seen(polys.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            for (int e = 0; e < polys[static_cast<size_t>(p)].size(); ++e) {
                int q = surface_->partner({p, e})->poly;
                if (!seen[static_cast<size_t>(q)]) {
                    seen[static_cast<size_t>(q)] = 1;
                    stack.push_back(q);
                }
            }
        }
        require(std::all_of(seen.begin(), seen.end(), [](int s) { return s; }), ErrorKind::Disconnected,
                "the gluing graph is disconnected");
    }

    // Triangles and adjacency.
    std::map<std::array<int, 3>, std::pair<int, int>> diag;  // (poly, lo, hi) -> (tri, edge)
    std::vector<std::vector<std::pair<int, int>>> poly_edge(polys.size());
    for (size_t i = 0; i < polys.size(); ++i) {
        const auto& P = polys[i];
        poly_edge[i].assign(static_cast<size_t>(P.size()), {-1, -1});
        for (const auto& t : triangulate(P)) {
            Triangle T;
            T.poly = static_cast<int>(i);
            for (int j = 0; j < 3; ++j) {
                T.pv[j] = t[static_cast<size_t>(j)];
                T.p[j] = P.vertex(T.pv[j]);
            }
            int id = static_cast<int>(tris_.size());
            tris_.push_back(T);
            for (int j = 0; j < 3; ++j) {
                int a = T.pv[j], b = T.pv[(j + 1) % 3];
                if ((a + 1) % P.size() == b) {
                    poly_edge[i][static_cast<size_t>(a)] = {id, j};
                    continue;
                }
                std::array<int, 3> key{static_cast<int>(i), std::min(a, b), std::max(a, b)};
                auto it = diag.find(key);
                if (it == diag.end()) {
                    diag[key] = {id, j};
                } else {
                    auto [ot, oe] = it->second;
                    tris_[static_cast<size_t>(id)].nb_tri[j] = ot;
                    tris_[static_cast<size_t>(id)].nb_edge[j] = oe;
                    tris_[static_cast<size_t>(ot)].nb_tri[oe] = id;
                    tris_[static_cast<size_t>(ot)].nb_edge[oe] = j;
                }
            }
        }
    }
    for (size_t i = 0; i < polys.size(); ++i)
        for (int e = 0; e < polys[i].size(); ++e) {
            auto [t, j] = poly_edge[i][static_cast<size_t>(e)];
            EdgeRef q = *surface_->partner({static_cast<int>(i), e});
            auto [t2, j2] = poly_edge[static_cast<size_t>(q.poly)][static_cast<size_t>(q.edge)];
            require(t >= 0 && t2 >= 0, ErrorKind::Internal, "edge missing from triangulation");
            auto& T = tris_[static_cast<size_t>(t)];
            T.nb_tri[j] = t2;
            T.nb_edge[j] = j2;
            T.glued[j] = true;
            T.orig[j] = {static_cast<int>(i), e};
            // Vertex e of polygon i sits at vertex q.edge + 1 of the partner polygon.
            T.shift[j] = polys[static_cast<size_t>(q.poly)].vertex(q.edge + 1) - polys[i].vertex(e);
        }
    for (const auto& T : tris_)
        for (int j = 0; j < 3; ++j) require(T.nb_tri[j] >= 0, ErrorKind::Internal, "unmatched triangle edge");

    // Vertex classes by walking corners counterclockwise.
    std::vector<std::array<int, 3>> cls_of(tris_.size(), {-1, -1, -1});
    for (size_t t0 = 0; t0 < tris_.size(); ++t0)
        for (int v0 = 0; v0 < 3; ++v0) {
            if (cls_of[t0][static_cast<size_t>(v0)] >= 0) continue;
            VertexClass C;
            int cid = static_cast<int>(classes_.size());
            int t = static_cast<int>(t0), v = v0, wraps = 0;
            do {
                const auto& T = tris_[static_cast<size_t>(t)];
                cls_of[static_cast<size_t>(t)][static_cast<size_t>(v)] = cid;
                C.corners.push_back({t, v});
                C.sheet_at_start.push_back(wraps);
                Vec2 a = T.p[(v + 1) % 3] - T.p[v], b = T.p[(v + 2) % 3] - T.p[v];
                if (angle_less(b, a)) ++wraps;
                int pe = (v + 2) % 3;
                int nt = T.nb_tri[pe], ne = T.nb_edge[pe];
                t = nt;
                v = ne;
            } while (!(t == static_cast<int>(t0) && v == v0));
            C.k = wraps;
            require(C.k >= 1, ErrorKind::Internal, "vertex class with no full turn");
            for (auto& s : C.sheet_at_start) s = mod(s, C.k);
            for (const auto& c : C.corners) {
                const auto& T = tris_[static_cast<size_t>(c.tri)];
                Corner pc{T.poly, T.pv[c.v]};
                if (C.poly_corners.empty() || !(C.poly_corners.back() == pc)) C.poly_corners.push_back(pc);
            }
            while (C.poly_corners.size() > 1 && C.poly_corners.front() == C.poly_corners.back())
                C.poly_corners.pop_back();
            classes_.push_back(std::move(C));
        }
    for (size_t t = 0; t < tris_.size(); ++t)
        for (int v = 0; v < 3; ++v) tris_[t].cls[v] = cls_of[t][static_cast<size_t>(v)];
    poly_vertex_class_.resize(polys.size());
    for (size_t i = 0; i < polys.size(); ++i) poly_vertex_class_[i].assign(static_cast<size_t>(polys[i].size()), -1);
    for (const auto& T : tris_)
        for (int v = 0; v < 3; ++v) poly_vertex_class_[static_cast<size_t>(T.poly)][static_cast<size_t>(T.pv[v])] = T.cls[v];

    // Report.
    int V = static_cast<int>(classes_.size()), E = surface_->edge_count() / 2, F = static_cast<int>(polys.size());
    int chi = V - E + F;
    require(chi % 2 == 0 && chi <= 2, ErrorKind::Internal, "odd Euler characteristic");
    report_.genus = (2 - chi) / 2;
    int excess = 0;
    for (const auto& C : classes_) {
        report_.classes.push_back({C.poly_corners, C.k});
        excess += C.k - 1;
    }
    require(excess == 2 * report_.genus - 2, ErrorKind::Internal, "Gauss-Bonnet mismatch");
    for (const auto& P : polys) report_.area += P.area();
}

int Atlas::class_of(const Corner& c) const {
    return poly_vertex_class_[static_cast<size_t>(c.poly)][static_cast<size_t>(c.vertex)];
}

AngPos Atlas::position(const TriCorner& c, const Vec2& dir) const {
    const auto& T = tri(c.tri);
    int cid = T.cls[c.v];
    const auto& C = vclass(cid);
    Vec2 a = T.p[(c.v + 1) % 3] - T.p[c.v], b = T.p[(c.v + 2) % 3] - T.p[c.v];
    require(in_closed_sector(a, b, dir), ErrorKind::Internal, "direction outside the corner");
    int idx = -1;
    for (size_t i = 0; i < C.corners.size(); ++i)
        if (C.corners[i].tri == c.tri && C.corners[i].v == c.v) idx = static_cast<int>(i);
    int sheet = C.sheet_at_start[static_cast<size_t>(idx)];
    if (angle_less(dir, a)) ++sheet;
    return {cid, mod(sheet, C.k), dir};
}

int Atlas::corner_index(const AngPos& pos) const {
    const auto& C = vclass(pos.cls);
    for (size_t i = 0; i < C.corners.size(); ++i) {
        const auto& T = tri(C.corners[i].tri);
        int v = C.corners[i].v;
        Vec2 a = T.p[(v + 1) % 3] - T.p[v], b = T.p[(v + 2) % 3] - T.p[v];
        if (!in_sector(a, b, pos.dir)) continue;
        int sheet = C.sheet_at_start[i] + (angle_less(pos.dir, a) ? 1 : 0);
        if (mod(sheet, C.k) == pos.sheet) return static_cast<int>(i);
    }
    fail(ErrorKind::Internal, "angular position not found");
}

TriCorner Atlas::corner_of(const AngPos& pos) const {
    return vclass(pos.cls).corners[static_cast<size_t>(corner_index(pos))];
}

AngPos Atlas::rotate_half_turns(const AngPos& pos, int odd_half_turns) const {
    AngPos r = pos;
    int k = vclass(pos.cls).k;
    int n = odd_half_turns;
    while (n > 0) {
        if (half_plane(r.dir) == 1) r.sheet = mod(r.sheet + 1, k);
        r.dir = -r.dir;
        --n;
    }
    while (n < 0) {
        if (half_plane(r.dir) == 0) r.sheet = mod(r.sheet - 1, k);
        r.dir = -r.dir;
        ++n;
    }
    return r;
}

std::vector<AngPos> Atlas::positions_of(int cls, const Vec2& dir) const {
    std::vector<AngPos> out;
    for (int m = 0; m < vclass(cls).k; ++m) out.push_back({cls, m, dir});
    return out;
}

bool Atlas::position_less(const AngPos& a, const AngPos& b) const {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.sheet != b.sheet) return a.sheet < b.sheet;
    return angle_less(a.dir, b.dir);
}

bool same_position(const AngPos& a, const AngPos& b) {
    return a.cls == b.cls && a.sheet == b.sheet && same_direction(a.dir, b.dir);
}

std::optional<int> Atlas::locate(int poly, const Vec2& point, const Vec2& dir) const {
    for (size_t t = 0; t < tris_.size(); ++t) {
        const auto& T = tris_[t];
        if (T.poly != poly) continue;
        if (!in_closed_triangle(T.p[0], T.p[1], T.p[2], point)) continue;
        bool enters = true;
        for (int j = 0; j < 3 && enters; ++j)
            if (orient(T.p[j], T.p[(j + 1) % 3], point) == 0 && wedge(T.edge(j), dir).sign() < 0) enters = false;
        if (enters) return static_cast<int>(t);
    }
    return std::nullopt;
}

int default_budget() {
    if (const char* s = std::getenv("FLATSTRAT_BUDGET")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 1000000000L) return static_cast<int>(v);
    }
    return 10000;
}

}  // namespace flatstrat
