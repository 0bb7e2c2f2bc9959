#include "flatstrat/explorer.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <tuple>

#include "flatstrat/error.hpp"

namespace flatstrat {

namespace {

int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return wedge(b - a, c - a).sign(); }

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    return orient(a, b, p) == 0 && dot(p - a, p - b).sign() <= 0;
}

bool strictly_inside(const Vec2& a, const Vec2& b, const Vec2& p) {
    return orient(a, b, p) == 0 && dot(p - a, p - b).sign() < 0;
}

bool is_corner(const Triangle& T, const Vec2& p) { return p == T.p[0] || p == T.p[1] || p == T.p[2]; }

bool segments_meet(const Triangle& T, const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s) {
    int o1 = orient(p, q, r), o2 = orient(p, q, s), o3 = orient(r, s, p), o4 = orient(r, s, q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && o2 == 0) {
        // Collinear: overlap of positive length, or a shared point away from the corners.
        Vec2 d = q - p;
        FieldElement a0 = 0, a1 = dot(d, d), b0 = dot(r - p, d), b1 = dot(s - p, d);
        if (b1 < b0) std::swap(b0, b1);
        FieldElement lo = b0 > a0 ? b0 : a0, hi = b1 < a1 ? b1 : a1;
        if (lo < hi) return true;
        if (lo == hi) {
            Vec2 x = p + (lo / a1) * d;
            return !is_corner(T, x);
        }
        return false;
    }
    for (const Vec2* x : {&r, &s})
        if (on_segment(p, q, *x) && !is_corner(T, *x)) return true;
    for (const Vec2* x : {&p, &q})
        if (on_segment(r, s, *x) && !is_corner(T, *x)) return true;
    return false;
}

// Field-independent text of a scalar: rational elements print the same in every field.
std::string key(const FieldElement& x) { return x.is_rational() ? to_string(x.to_rational()) : x.to_string(); }
std::string key(const Vec2& v) { return key(v.x) + "," + key(v.y); }

int corner_at(const Triangle& T, const Vec2& p) {
    for (int v = 0; v < 3; ++v)
        if (T.p[v] == p) return v;
    return -1;
}

struct Development {
    std::vector<Vec2> offset;
    std::vector<Vec2> periods;
};

Development develop(const TranslationSurface& S) {
    size_t n = S.polygons().size();
    Development D;
    D.offset.assign(n, Vec2{0, 0});
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, partner polygon) by gluing index
    const auto& g = S.gluings();
    std::vector<bool> tree(g.size(), false);
    std::queue<int> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
        int P = q.front();
        q.pop();
        for (size_t i = 0; i < g.size(); ++i) {
            for (int dirn = 0; dirn < 2; ++dirn) {
                EdgeRef a = dirn ? g[i].second : g[i].first, b = dirn ? g[i].first : g[i].second;
                if (a.poly != P || seen[static_cast<size_t>(b.poly)]) continue;
                seen[static_cast<size_t>(b.poly)] = true;
                tree[i] = true;
                D.offset[static_cast<size_t>(b.poly)] = D.offset[static_cast<size_t>(P)] +
                                                        S.polygon(P).vertex(a.edge) -
                                                        S.polygon(b.poly).vertex(b.edge + 1);
                q.push(b.poly);
            }
        }
    }
    for (size_t i = 0; i < g.size(); ++i) {
        if (tree[i]) continue;
        const EdgeRef &a = g[i].first, &b = g[i].second;
        Vec2 per = D.offset[static_cast<size_t>(a.poly)] + S.polygon(a.poly).vertex(a.edge) -
                   S.polygon(b.poly).vertex(b.edge + 1) - D.offset[static_cast<size_t>(b.poly)];
        if (!per.is_zero()) D.periods.push_back(per);
    }
    return D;
}

}  // namespace

SCPath surface_path(const TranslationSurface& S, const Decomposition& D, int id) {
    const SaddleConnection& sc = D.saddle_connections.at(static_cast<size_t>(id));
    const Vec2& d = D.direction;
    FieldElement n2 = d.norm2();
    Mat2 Minv = Mat2{d.x / n2, d.y / n2, -d.y / n2, d.x / n2}.inverse();
    const Atlas& A = S.atlas();
    SCPath p;
    p.holonomy = sc.holonomy;
    for (const auto& s : sc.segments) p.segments.push_back({s.tri, Minv.apply(s.from), Minv.apply(s.to)});
    const auto& first = p.segments.front();
    const auto& last = p.segments.back();
    int v0 = corner_at(A.tri(first.tri), first.from), v1 = corner_at(A.tri(last.tri), last.to);
    require(v0 >= 0 && v1 >= 0, ErrorKind::Internal, "saddle connection does not end at vertices");
    p.start = A.position({first.tri, v0}, p.holonomy);
    p.end = A.position({last.tri, v1}, -p.holonomy);
    return p;
}

bool paths_meet(const Atlas& A, const SCPath& a, const SCPath& b) {
    for (const auto& s : a.segments)
        for (const auto& t : b.segments)
            if (s.tri == t.tri && segments_meet(A.tri(s.tri), s.from, s.to, t.from, t.to)) return true;
    return false;
}

// ---------------------------------------------------------------- cut complex

CutComplex::CutComplex(const Atlas& A, std::vector<SCPath> cuts) : A_(&A), cuts_(std::move(cuts)) {
    size_t nt = A.triangles().size();
    std::vector<std::vector<int>> in_tri(nt);
    for (size_t t = 0; t < nt; ++t) {
        Piece P;
        P.tri = static_cast<int>(t);
        for (int j = 0; j < 3; ++j) {
            P.verts.push_back(A.tri(static_cast<int>(t)).p[j]);
            Edge e;
            e.index = j;
            P.edges.push_back(e);
        }
        in_tri[t].push_back(static_cast<int>(pieces_.size()));
        pieces_.push_back(std::move(P));
    }

    auto insert_point = [&](Piece& P, const Vec2& x) {
        for (size_t i = 0; i < P.verts.size(); ++i)
            if (P.verts[i] == x) return;
        for (size_t i = 0; i < P.verts.size(); ++i) {
            const Vec2& a = P.verts[i];
            const Vec2& b = P.verts[(i + 1) % P.verts.size()];
            if (strictly_inside(a, b, x)) {
                require(P.edges[i].kind == 0, ErrorKind::InvalidInput, "cuts meet away from the vertices");
                P.verts.insert(P.verts.begin() + static_cast<long>(i) + 1, x);
                P.edges.insert(P.edges.begin() + static_cast<long>(i) + 1, P.edges[i]);
                return;
            }
        }
        fail(ErrorKind::Internal, "chord endpoint not on the piece boundary");
    };
    auto index_of = [](const Piece& P, const Vec2& x) {
        for (size_t i = 0; i < P.verts.size(); ++i)
            if (P.verts[i] == x) return i;
        fail(ErrorKind::Internal, "vertex missing");
    };
    auto relabel = [&](int t, int j, int cut, int seg, int side, const Vec2& off) {
        const Triangle& T = A.tri(t);
        for (int pi : in_tri[static_cast<size_t>(t)]) {
            Piece& P = pieces_[static_cast<size_t>(pi)];
            for (size_t i = 0; i < P.verts.size(); ++i)
                if (P.edges[i].kind == 0 && P.edges[i].index == j && P.verts[i] == T.p[j]) {
                    require(P.verts[(i + 1) % P.verts.size()] == T.p[(j + 1) % 3], ErrorKind::InvalidInput,
                            "cuts meet away from the vertices");
                    P.edges[i] = Edge{1, cut, seg, side, -1, -1, off};
                    return;
                }
        }
        fail(ErrorKind::InvalidInput, "cut runs twice along a triangle edge");
    };

    prefix_.resize(cuts_.size());
    for (size_t c = 0; c < cuts_.size(); ++c) {
        Vec2 h{0, 0};
        for (size_t k = 0; k < cuts_[c].segments.size(); ++k) {
            const TraceSegment& s = cuts_[c].segments[k];
            prefix_[c].push_back(h);
            h = h + (s.to - s.from);
            const Triangle& T = A.tri(s.tri);
            int vf = corner_at(T, s.from), vt = corner_at(T, s.to);
            int ci = static_cast<int>(c), ki = static_cast<int>(k);
            if (vf >= 0 && vt >= 0) {
                int j = (vt == (vf + 1) % 3) ? vf : vt;
                int side = (j == vf) ? 1 : -1;
                relabel(s.tri, j, ci, ki, side, Vec2{0, 0});
                relabel(T.nb_tri[j], T.nb_edge[j], ci, ki, -side, -T.shift[j]);
                continue;
            }
            Vec2 mid = FieldElement(Rational(1, 2)) * (s.from + s.to);
            int host = -1;
            for (int pi : in_tri[static_cast<size_t>(s.tri)]) {
                const Piece& P = pieces_[static_cast<size_t>(pi)];
                bool in = true;
                for (size_t i = 0; i < P.verts.size() && in; ++i)
                    in = orient(P.verts[i], P.verts[(i + 1) % P.verts.size()], mid) > 0;
                if (in) host = pi;
            }
            require(host >= 0, ErrorKind::InvalidInput, "cuts meet away from the vertices");
            Piece& P = pieces_[static_cast<size_t>(host)];
            insert_point(P, s.from);
            insert_point(P, s.to);
            size_t iF = index_of(P, s.from), iT = index_of(P, s.to), n = P.verts.size();
            Piece L, Rp;
            L.tri = Rp.tri = P.tri;
            for (size_t i = iT; i != iF; i = (i + 1) % n) {
                L.verts.push_back(P.verts[i]);
                L.edges.push_back(P.edges[i]);
            }
            L.verts.push_back(P.verts[iF]);
            L.edges.push_back(Edge{1, ci, ki, 1});
            for (size_t i = iF; i != iT; i = (i + 1) % n) {
                Rp.verts.push_back(P.verts[i]);
                Rp.edges.push_back(P.edges[i]);
            }
            Rp.verts.push_back(P.verts[iT]);
            Rp.edges.push_back(Edge{1, ci, ki, -1});
            P = std::move(L);
            in_tri[static_cast<size_t>(s.tri)].push_back(static_cast<int>(pieces_.size()));
            pieces_.push_back(std::move(Rp));
        }
    }

    // Adjacency across triangle edges.
    std::map<std::tuple<int, int, std::string, std::string>, std::pair<int, int>> by_key;
    for (size_t pi = 0; pi < pieces_.size(); ++pi) {
        const Piece& P = pieces_[pi];
        for (size_t i = 0; i < P.verts.size(); ++i)
            if (P.edges[i].kind == 0)
                by_key[{P.tri, P.edges[i].index, key(P.verts[i]), key(P.verts[(i + 1) % P.verts.size()])}] = {
                    static_cast<int>(pi), static_cast<int>(i)};
    }
    for (size_t pi = 0; pi < pieces_.size(); ++pi) {
        Piece& P = pieces_[pi];
        const Triangle& T = A.tri(P.tri);
        for (size_t i = 0; i < P.verts.size(); ++i) {
            Edge& e = P.edges[i];
            if (e.kind != 0) continue;
            int j = e.index;
            const Vec2& sh = T.shift[j];
            auto it = by_key.find({T.nb_tri[j], T.nb_edge[j], key(P.verts[(i + 1) % P.verts.size()] + sh),
                                   key(P.verts[i] + sh)});
            require(it != by_key.end(), ErrorKind::Internal,
                    "unmatched piece edge " + P.verts[i].to_string() + " -> " +
                        P.verts[(i + 1) % P.verts.size()].to_string() + " of triangle " + std::to_string(P.tri));
            e.nb_piece = it->second.first;
            e.nb_edge = it->second.second;
        }
    }

    // Components and their development.
    dev_.assign(pieces_.size(), Vec2{0, 0});
    for (size_t root = 0; root < pieces_.size(); ++root) {
        if (pieces_[root].comp >= 0) continue;
        Component C;
        int id = static_cast<int>(comps_.size());
        std::queue<int> q;
        pieces_[root].comp = id;
        q.push(static_cast<int>(root));
        while (!q.empty()) {
            int pi = q.front();
            q.pop();
            C.pieces.push_back(pi);
            const Piece& P = pieces_[static_cast<size_t>(pi)];
            for (const Edge& e : P.edges) {
                if (e.kind != 0) continue;
                Vec2 d = dev_[static_cast<size_t>(pi)] - A.tri(P.tri).shift[e.index];
                Piece& Q = pieces_[static_cast<size_t>(e.nb_piece)];
                if (Q.comp < 0) {
                    Q.comp = id;
                    dev_[static_cast<size_t>(e.nb_piece)] = d;
                    q.push(e.nb_piece);
                } else if (d != dev_[static_cast<size_t>(e.nb_piece)]) {
                    C.periods.push_back(d - dev_[static_cast<size_t>(e.nb_piece)]);
                }
            }
        }
        std::set<Side> sides;
        std::map<Side, Vec2> first_start;
        for (int pi : C.pieces) {
            const Piece& P = pieces_[static_cast<size_t>(pi)];
            Polygon poly{P.verts};
            C.area += poly.area();
            for (size_t i = 0; i < P.edges.size(); ++i) {
                const Edge& e = P.edges[i];
                if (e.kind != 1) continue;
                Side s{e.index, e.side};
                sides.insert(s);
                Vec2 st = dev_start(pi, static_cast<int>(i));
                auto [it, fresh] = first_start.emplace(s, st);
                if (!fresh && st != it->second) C.periods.push_back(st - it->second);
            }
        }
        C.sides.assign(sides.begin(), sides.end());
        comps_.push_back(std::move(C));
    }
}

int CutComplex::component_of(const Side& s) const {
    for (size_t c = 0; c < comps_.size(); ++c)
        if (std::binary_search(comps_[c].sides.begin(), comps_[c].sides.end(), s)) return static_cast<int>(c);
    return -1;
}

int CutComplex::component_at(int tri, const Vec2& p) const {
    for (const Piece& P : pieces_) {
        if (P.tri != tri) continue;
        bool in = true;
        for (size_t i = 0; i < P.verts.size() && in; ++i)
            in = orient(P.verts[i], P.verts[(i + 1) % P.verts.size()], p) >= 0;
        if (in) return P.comp;
    }
    fail(ErrorKind::InvalidInput, "point outside its triangle");
}

FieldElement CutComplex::param(const Edge& e, const Vec2& p) const {
    const SCPath& c = cuts_[static_cast<size_t>(e.index)];
    const TraceSegment& s = c.segments[static_cast<size_t>(e.seg)];
    return dot(p + e.off - s.from + prefix_[static_cast<size_t>(e.index)][static_cast<size_t>(e.seg)], c.holonomy) /
           c.holonomy.norm2();
}

Vec2 CutComplex::dev_start(int piece, int edge) const {
    const Edge& e = pieces_[static_cast<size_t>(piece)].edges[static_cast<size_t>(edge)];
    const TraceSegment& s = cuts_[static_cast<size_t>(e.index)].segments[static_cast<size_t>(e.seg)];
    return dev_[static_cast<size_t>(piece)] - e.off + s.from -
           prefix_[static_cast<size_t>(e.index)][static_cast<size_t>(e.seg)];
}

CutComplex::Reglued CutComplex::reglue(int comp, const std::vector<std::pair<int, int>>& pairs) const {
    const Component& C = component(comp);
    auto has = [&](const Side& s) { return std::binary_search(C.sides.begin(), C.sides.end(), s); };
    // group id of each side; members of a group are glued to each other
    std::map<Side, int> group;
    int ng = 0;
    for (const auto& [a, b] : pairs)
        for (int s : {1, -1}) {
            Side x{a, s}, y{b, -s};
            if (!has(x) && !has(y)) continue;
            require(has(x) && has(y), ErrorKind::InvalidInput, "reglued sides lie in different components");
            group[x] = ng;
            group[y] = ng;
            ++ng;
        }
    for (const Side& s : C.sides)
        require(group.count(s) > 0, ErrorKind::InvalidInput, "component boundary left open");

    struct LEdge {
        Edge e;
        FieldElement s0, s1;  // cut parameters at both ends
    };
    struct LPiece {
        int tri;
        std::vector<Vec2> verts;
        std::vector<LEdge> edges;
    };
    std::vector<std::vector<FieldElement>> breaks(static_cast<size_t>(ng));
    std::vector<LPiece> loc;
    std::map<int, int> local_of;
    for (int pi : C.pieces) {
        const Piece& P = pieces_[static_cast<size_t>(pi)];
        LPiece L{P.tri, P.verts, {}};
        for (size_t i = 0; i < P.edges.size(); ++i) {
            LEdge le{P.edges[i], 0, 0};
            if (le.e.kind == 1) {
                le.s0 = param(le.e, P.verts[i]);
                le.s1 = param(le.e, P.verts[(i + 1) % P.verts.size()]);
                auto& B = breaks[static_cast<size_t>(group.at({le.e.index, le.e.side}))];
                B.push_back(le.s0);
                B.push_back(le.s1);
            }
            L.edges.push_back(le);
        }
        local_of[pi] = static_cast<int>(loc.size());
        loc.push_back(std::move(L));
    }
    for (auto& B : breaks) {
        std::sort(B.begin(), B.end());
        B.erase(std::unique(B.begin(), B.end()), B.end());
    }
    // Subdivide cut edges at every break point of their group.
    for (auto& L : loc) {
        std::vector<Vec2> nv;
        std::vector<LEdge> ne;
        for (size_t i = 0; i < L.verts.size(); ++i) {
            const LEdge& le = L.edges[i];
            nv.push_back(L.verts[i]);
            if (le.e.kind != 1) {
                ne.push_back(le);
                continue;
            }
            const auto& B = breaks[static_cast<size_t>(group.at({le.e.index, le.e.side}))];
            std::vector<FieldElement> inner;
            bool up = le.s0 < le.s1;
            for (const auto& b : B)
                if (up ? (le.s0 < b && b < le.s1) : (le.s1 < b && b < le.s0)) inner.push_back(b);
            if (!up) std::reverse(inner.begin(), inner.end());
            const Vec2& hol = cuts_[static_cast<size_t>(le.e.index)].holonomy;
            FieldElement prev = le.s0;
            for (const auto& b : inner) {
                ne.push_back({le.e, prev, b});
                nv.push_back(L.verts[i] + (b - le.s0) * hol);
                prev = b;
            }
            ne.push_back({le.e, prev, le.s1});
        }
        L.verts = std::move(nv);
        L.edges = std::move(ne);
    }

    Reglued R;
    std::vector<Polygon> polys;
    for (const auto& L : loc) {
        polys.push_back(Polygon{L.verts});
        std::vector<bool> orig;
        for (const auto& v : L.verts) orig.push_back(is_corner(A_->tri(L.tri), v));
        R.original.push_back(orig);
    }
    std::vector<std::pair<EdgeRef, EdgeRef>> glue;
    std::map<std::tuple<int, std::string, std::string>, EdgeRef> open_cut;
    for (size_t li = 0; li < loc.size(); ++li) {
        const LPiece& L = loc[li];
        for (size_t i = 0; i < L.edges.size(); ++i) {
            const LEdge& le = L.edges[i];
            EdgeRef me{static_cast<int>(li), static_cast<int>(i)};
            if (le.e.kind == 0) {
                // Each internal adjacency is emitted once, from the smaller piece index.
                int other = local_of.at(le.e.nb_piece);
                if (other < static_cast<int>(li)) continue;
                // Locate the matching edge in the local copy by endpoints.
                const Triangle& T = A_->tri(L.tri);
                const Vec2& sh = T.shift[le.e.index];
                Vec2 a = L.verts[(i + 1) % L.verts.size()] + sh, b = L.verts[i] + sh;
                const LPiece& O = loc[static_cast<size_t>(other)];
                int found = -1;
                for (size_t k = 0; k < O.edges.size(); ++k)
                    if (O.edges[k].e.kind == 0 && O.verts[k] == a && O.verts[(k + 1) % O.verts.size()] == b)
                        found = static_cast<int>(k);
                require(found >= 0, ErrorKind::Internal, "internal adjacency lost");
                if (other == static_cast<int>(li) && found < static_cast<int>(i)) continue;
                glue.push_back({me, {other, found}});
                continue;
            }
            int g = group.at({le.e.index, le.e.side});
            FieldElement lo = le.s0 < le.s1 ? le.s0 : le.s1, hi = le.s0 < le.s1 ? le.s1 : le.s0;
            auto k = std::make_tuple(g, key(lo), key(hi));
            auto it = open_cut.find(k);
            if (it == open_cut.end()) open_cut.emplace(k, me);
            else {
                glue.push_back({it->second, me});
                open_cut.erase(it);
            }
        }
    }
    require(open_cut.empty(), ErrorKind::Internal, "reglued sides do not match");
    R.surface = TranslationSurface(std::move(polys), std::move(glue));
    Development D = develop(R.surface);
    R.developed = D.offset;
    return R;
}

MarkedTorus reglued_torus(const CutComplex::Reglued& R) {
    ConeReport rep = validate(R.surface);
    require(rep.genus == 1, ErrorKind::WrongStratum, "reglued component is not a torus");
    Development D = develop(R.surface);
    auto L = lattice_span(D.periods);
    require(L.has_value(), ErrorKind::Internal, "torus periods of rank below 2");
    std::vector<Vec2> marked;
    for (const auto& cls : rep.classes) {
        for (const auto& c : cls.corners)
            if (R.original[static_cast<size_t>(c.poly)][static_cast<size_t>(c.vertex)]) {
                marked.push_back(D.offset[static_cast<size_t>(c.poly)] + R.surface.polygon(c.poly).vertex(c.vertex));
                break;
            }
    }
    require(!marked.empty() && marked.size() <= 2, ErrorKind::WrongStratum, "unexpected number of marked points");
    std::vector<Vec2> off;
    for (const auto& m : marked) off.push_back(m - marked.front());
    return MarkedTorus(*L, off);
}

// ---------------------------------------------------------------- enumeration

namespace {

FieldElement dist2_to_segment(const Vec2& p, const Vec2& q) {
    Vec2 d = q - p;
    if (dot(p, d).sign() >= 0) return p.norm2();
    if (dot(q, d).sign() <= 0) return q.norm2();
    FieldElement w = wedge(p, q);
    return w * w / d.norm2();
}

}  // namespace

SaddleConnectionSet saddle_connections(const TranslationSurface& S, const FieldElement& L2, int budget) {
    require(L2.sign() > 0, ErrorKind::InvalidInput, "squared-length bound must be positive");
    const Atlas& A = S.atlas();
    SaddleConnectionSet out;
    out.bound = L2;
    TraceOptions opt;
    opt.budget = budget;
    opt.stop_at_marked = true;
    opt.record_segments = true;

    auto add = [&](int t, int v, const Vec2& X) {
        AngPos st = A.position({t, v}, X);
        TraceResult R = trace_from(A, st, opt);
        if (R.kind == TraceKind::BudgetExceeded) {
            out.complete = false;
            return;
        }
        require(R.kind == TraceKind::HitSingularity && R.holonomy == X, ErrorKind::Internal,
                "unfolded vertex not reached by its ray");
        out.entries.push_back({X, st, R.arrival, std::move(R.segments)});
    };

    struct State {
        int tri, edge;
        Vec2 L, R, off;
    };
    for (size_t t = 0; t < A.triangles().size(); ++t) {
        const Triangle& T0 = A.tri(static_cast<int>(t));
        for (int v = 0; v < 3; ++v) {
            Vec2 a = T0.p[(v + 1) % 3] - T0.p[v], b = T0.p[(v + 2) % 3] - T0.p[v];
            if (a.norm2() <= L2) add(static_cast<int>(t), v, a);
            std::vector<State> stack{{static_cast<int>(t), (v + 1) % 3, a, b, -T0.p[v]}};
            while (!stack.empty()) {
                State s = std::move(stack.back());
                stack.pop_back();
                const Triangle& T = A.tri(s.tri);
                if (dist2_to_segment(T.p[s.edge] + s.off, T.p[(s.edge + 1) % 3] + s.off) > L2) continue;
                int t2 = T.nb_tri[s.edge], e2 = T.nb_edge[s.edge];
                const Triangle& U = A.tri(t2);
                Vec2 off = s.off - T.shift[s.edge];
                Vec2 X = U.p[(e2 + 2) % 3] + off;
                int e_left = (e2 + 1) % 3, e_right = (e2 + 2) % 3;
                if (wedge(s.L, X).sign() > 0 && wedge(X, s.R).sign() > 0) {
                    if (X.norm2() <= L2) add(static_cast<int>(t), v, X);
                    stack.push_back({t2, e_left, s.L, X, off});
                    stack.push_back({t2, e_right, X, s.R, off});
                } else if (wedge(s.L, X).sign() <= 0) {
                    stack.push_back({t2, e_right, s.L, s.R, off});
                } else {
                    stack.push_back({t2, e_left, s.L, s.R, off});
                }
            }
        }
    }
    std::sort(out.entries.begin(), out.entries.end(), [&](const SCPath& p, const SCPath& q) {
        FieldElement a = p.holonomy.norm2(), b = q.holonomy.norm2();
        if (a != b) return a < b;
        if (p.holonomy.x != q.holonomy.x) return p.holonomy.x < q.holonomy.x;
        if (p.holonomy.y != q.holonomy.y) return p.holonomy.y < q.holonomy.y;
        return A.position_less(p.start, q.start);
    });
    return out;
}

// ---------------------------------------------------------------- cylinders and chains

namespace {

bool periods_generate_line(const std::vector<Vec2>& periods, const Vec2& V) {
    if (periods.empty()) return false;
    Rational g = 0;
    for (const auto& p : periods) {
        if (!parallel(p, V)) return false;
        FieldElement r = V.x.is_zero() ? p.y / V.y : p.x / V.x;
        if (!r.is_rational()) return false;
        Rational q = r.to_rational();
        // gcd of rationals
        Integer n, d;
        mpz_gcd(n.get_mpz_t(), Integer(g.get_num()).get_mpz_t(), Integer(q.get_num()).get_mpz_t());
        mpz_lcm(d.get_mpz_t(), Integer(g.get_den()).get_mpz_t(), Integer(q.get_den()).get_mpz_t());
        g = Rational(n, d);
        g.canonicalize();
    }
    return g == 1;
}

bool canonical(const Vec2& h) { return half_plane(h) == 0; }

bool disjoint_from(const Atlas& A, const SaddleConnectionSet& set, int i, const std::vector<int>& others) {
    for (int j : others)
        if (j == i || paths_meet(A, set.entries[static_cast<size_t>(i)], set.entries[static_cast<size_t>(j)]))
            return false;
    return true;
}

using Side = CutComplex::Side;

bool side_set_is(const CutComplex::Component& C, std::vector<Side> want) {
    std::sort(want.begin(), want.end());
    return C.sides == want;
}

Side flip(const Side& s) { return {s.cut, -s.side}; }

}  // namespace

std::vector<SimpleCylinderHit> find_simple_cylinders(const TranslationSurface& S, const SaddleConnectionSet& set,
                                                     const std::function<bool(const Vec2&)>& want) {
    const Atlas& A = S.atlas();
    bool torus = A.report().genus == 1;
    std::vector<SimpleCylinderHit> out;
    size_t n = set.entries.size();
    for (size_t i = 0; i < n; ++i) {
        const SCPath& a = set.entries[i];
        if (!canonical(a.holonomy) || (want && !want(a.holonomy))) continue;
        for (size_t j = i; j < n && set.entries[j].holonomy == a.holonomy; ++j) {
            if (i == j && !torus) continue;
            const SCPath& b = set.entries[j];
            // A cylinder left of its bottom sweeps a half turn from the start of the bottom to its end.
            bool up = same_position(A.rotate_half_turns(a.start, 1), a.end) &&
                      same_position(A.rotate_half_turns(b.end, 1), b.start);
            bool down = same_position(A.rotate_half_turns(b.start, 1), b.end) &&
                        same_position(A.rotate_half_turns(a.end, 1), a.start);
            if (i != j && !up && !down) continue;
            if (i != j && paths_meet(A, a, b)) continue;
            std::vector<SCPath> paths{a};
            if (i != j) paths.push_back(b);
            CutComplex K(A, paths);
            int bj = i == j ? 0 : 1;
            for (int c = 0; c < K.component_count(); ++c) {
                const auto& C = K.component(c);
                for (int s : {1, -1}) {
                    if (i == j && s == -1) continue;
                    if (i != j && !(s == 1 ? up : down)) continue;
                    if (!side_set_is(C, {{0, s}, {bj, -s}})) continue;
                    if (i != j && K.component_count() != 2) continue;
                    if (!periods_generate_line(C.periods, a.holonomy)) continue;
                    SimpleCylinderHit h;
                    h.a = static_cast<int>(s == 1 ? i : j);
                    h.b = static_cast<int>(s == 1 ? j : i);
                    h.circumference = a.holonomy;
                    h.area = C.area;
                    h.modulus = C.area / a.holonomy.norm2();
                    out.push_back(h);
                }
            }
        }
    }
    return out;
}

std::vector<SimpleCylinderHit> find_simple_cylinders(const TranslationSurface& S, const FieldElement& L2, int budget) {
    return find_simple_cylinders(S, saddle_connections(S, L2, budget));
}

SplittingDatum splitting_from_pairs(const TranslationSurface& S, const std::pair<SCPath, SCPath>& d1,
                                    const std::pair<SCPath, SCPath>& d3) {
    CutComplex K(S.atlas(), {d1.first, d1.second, d3.first, d3.second});
    require(K.component_count() == 3, ErrorKind::DegenerateConfiguration, "pairs do not cut the surface in three");
    int c1 = -1, c2 = -1, c3 = -1;
    for (int c = 0; c < 3; ++c) {
        bool lo = false, hi = false;
        for (const auto& s : K.component(c).sides) (s.cut < 2 ? lo : hi) = true;
        if (lo && hi) c2 = c;
        else if (lo) c1 = c;
        else c3 = c;
    }
    require(c1 >= 0 && c2 >= 0 && c3 >= 0, ErrorKind::DegenerateConfiguration, "unexpected cut components");
    MarkedTorus T1 = reglued_torus(K.reglue(c1, {{0, 1}}));
    MarkedTorus T2 = reglued_torus(K.reglue(c2, {{0, 1}, {2, 3}}));
    MarkedTorus T3 = reglued_torus(K.reglue(c3, {{2, 3}}));
    std::string why;
    for (int s1 : {1, -1})
        for (int s3 : {1, -1}) {
            SplittingDatum X{T1, T2, T3, FieldElement(s1) * d1.first.holonomy, FieldElement(s3) * d3.first.holonomy};
            try {
                validate_splitting(X);
                return X;
            } catch (const Error& e) {
                if (why.empty()) why = e.what();
            }
        }
    fail(ErrorKind::DegenerateConfiguration, "cut pieces do not form a splitting: " + why);
}

SplittingDatum horizontal_splitting(const TranslationSurface& S, int budget) {
    Decomposition D = decompose(S, Vec2{1, 0}, budget);
    auto ord = diagram_order(D);
    require(ord.has_value() && ord->model == DiagramModel::CaseI, ErrorKind::BadDiagram,
            "horizontal direction is not a three-cylinder diagram with one simple cylinder");
    const Cylinder& C1 = D.cylinders[static_cast<size_t>(ord->order[0])];
    const Cylinder& C2 = D.cylinders[static_cast<size_t>(ord->order[1])];
    int b1 = C1.bottom[0], t1 = C1.top[0];
    int x = -1, y = -1;
    for (int s : C2.bottom)
        if (s != t1) x = s;
    for (int s : C2.top)
        if (s != b1) y = s;
    require(x >= 0 && y >= 0 && C2.bottom.size() == 2 && C2.top.size() == 2, ErrorKind::BadDiagram,
            "composite cylinder boundary");
    return splitting_from_pairs(S, {surface_path(S, D, b1), surface_path(S, D, t1)},
                                {surface_path(S, D, x), surface_path(S, D, y)});
}

TheoremADecomposition find_theorem_A(const TranslationSurface& S, const FieldElement& L2, int budget,
                                     const DecompositionFilter& accept) {
    const Atlas& A = S.atlas();
    ConeReport rep = A.report();
    require(rep.genus == 3 && rep.stratum() == std::vector<int>{5}, ErrorKind::WrongStratum,
            "surface is not in the stratum with one cone point of angle 10 pi");
    SaddleConnectionSet set = saddle_connections(S, L2, budget);
    const auto& E = set.entries;
    FieldElement total = rep.area;

    // Homologous pairs among canonical entries.
    std::vector<std::pair<int, int>> hom;
    for (size_t i = 0; i < E.size(); ++i) {
        if (!canonical(E[i].holonomy)) continue;
        for (size_t j = i + 1; j < E.size() && E[j].holonomy == E[i].holonomy; ++j) {
            if (paths_meet(A, E[i], E[j])) continue;
            CutComplex K(A, {E[i], E[j]});
            if (K.component_count() == 2) hom.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    std::vector<SimpleCylinderHit> cyl = find_simple_cylinders(S, set);

    auto ids_of = [](const std::vector<std::pair<int, int>>& ps) {
        std::vector<int> v;
        for (const auto& p : ps) {
            v.push_back(p.first);
            v.push_back(p.second);
        }
        return v;
    };
    auto cut_of = [&](const std::vector<std::pair<int, int>>& ps) {
        std::vector<SCPath> paths;
        for (int i : ids_of(ps)) paths.push_back(E[static_cast<size_t>(i)]);
        return CutComplex(A, std::move(paths));
    };
    // The component holding both free sides of the previous pair (cut indices 2m, 2m+1) must be a
    // parallelogram spanned by that pair and the new one.
    auto parallelogram = [&](const CutComplex& K, const std::vector<Side>& prev, int m, const Vec2& Vp,
                             const Vec2& Vn, std::vector<Side>& next_free) -> bool {
        int c = K.component_of(prev[0]);
        if (c < 0 || K.component_of(prev[1]) != c) return false;
        const auto& C = K.component(c);
        if (C.sides.size() != 4 || !C.periods.empty() || C.area != abs(wedge(Vp, Vn))) return false;
        next_free.clear();
        for (int s : {1, -1}) {
            Side x{2 * m, s}, y{2 * m + 1, -s};
            bool hx = std::binary_search(C.sides.begin(), C.sides.end(), x);
            bool hy = std::binary_search(C.sides.begin(), C.sides.end(), y);
            if (hx && hy) {
                next_free = {flip(x), flip(y)};
                return std::find(C.sides.begin(), C.sides.end(), prev[0]) != C.sides.end() &&
                       std::find(C.sides.begin(), C.sides.end(), prev[1]) != C.sides.end();
            }
        }
        return false;
    };

    for (const auto& cy : cyl) {
        if (cy.a == cy.b) continue;
        std::pair<int, int> p1{cy.a, cy.b};
        // Free sides of δ1: the ones away from the cylinder.
        std::vector<Side> free1{{0, -1}, {1, 1}};
        const Vec2& V1 = E[static_cast<size_t>(cy.a)].holonomy;
        for (const auto& p2 : hom) {
            std::vector<int> used = ids_of({p1});
            if (!disjoint_from(A, set, p2.first, used) || !disjoint_from(A, set, p2.second, used)) continue;
            const Vec2& V2 = E[static_cast<size_t>(p2.first)].holonomy;
            if (parallel(V1, V2) || abs(wedge(V1, V2)) >= total) continue;
            CutComplex K2 = cut_of({p1, p2});
            std::vector<Side> free2;
            if (K2.component_count() != 3 || !parallelogram(K2, free1, 1, V1, V2, free2)) continue;
            for (const auto& p3 : hom) {
                std::vector<int> used2 = ids_of({p1, p2});
                if (!disjoint_from(A, set, p3.first, used2) || !disjoint_from(A, set, p3.second, used2)) continue;
                const Vec2& V3 = E[static_cast<size_t>(p3.first)].holonomy;
                if (parallel(V2, V3)) continue;
                CutComplex K3 = cut_of({p1, p2, p3});
                std::vector<Side> free3;
                if (K3.component_count() != 4 || !parallelogram(K3, free2, 2, V2, V3, free3)) continue;
                for (const auto& p4 : hom) {
                    std::vector<int> used3 = ids_of({p1, p2, p3});
                    if (!disjoint_from(A, set, p4.first, used3) || !disjoint_from(A, set, p4.second, used3))
                        continue;
                    const Vec2& V4 = E[static_cast<size_t>(p4.first)].holonomy;
                    if (parallel(V3, V4)) continue;
                    CutComplex K4 = cut_of({p1, p2, p3, p4});
                    std::vector<Side> free4;
                    if (K4.component_count() != 5 || !parallelogram(K4, free3, 3, V3, V4, free4)) continue;
                    int c5 = K4.component_of(free4[0]);
                    if (c5 < 0 || K4.component_of(free4[1]) != c5) continue;
                    const auto& C5 = K4.component(c5);
                    if (!side_set_is(C5, free4) || !periods_generate_line(C5.periods, V4)) continue;

                    TheoremADecomposition T;
                    T.pairs = {p1, p2, p3, p4};
                    T.areas[0] = K4.component(K4.component_of({0, 1})).area;
                    T.areas[1] = abs(wedge(V1, V2));
                    T.areas[2] = abs(wedge(V2, V3));
                    T.areas[3] = abs(wedge(V3, V4));
                    T.areas[4] = C5.area;
                    FieldElement sum = 0;
                    for (const auto& a : T.areas) sum += a;
                    if (sum != total) continue;
                    try {
                        T.splitting = splitting_from_pairs(S, {E[static_cast<size_t>(p1.first)], E[static_cast<size_t>(p1.second)]},
                                                           {E[static_cast<size_t>(p3.first)], E[static_cast<size_t>(p3.second)]});
                    } catch (const Error&) {
                        continue;
                    }
                    if (accept && !accept(T)) continue;
                    T.set = set;
                    return T;
                }
            }
        }
    }
    fail(ErrorKind::NotFoundWithinBound, "no chain of four homologous pairs within squared length " +
                                             L2.to_string() + (set.complete ? "" : " (enumeration incomplete)"));
}

Separation separating_pair_check(const TranslationSurface& S, const SCPath& a, const SCPath& b) {
    const Atlas& A = S.atlas();
    require(!paths_meet(A, a, b), ErrorKind::NotSeparating, "saddle connections cross");
    CutComplex K(A, {a, b});
    require(K.component_count() == 2, ErrorKind::NotSeparating, "cutting along the pair does not disconnect");
    int h2 = 0, h00 = 0;
    for (int c = 0; c < 2; ++c) {
        CutComplex::Reglued R = K.reglue(c, {{0, 1}});
        ConeReport rep = validate(R.surface);
        if (rep.genus == 2 && rep.stratum() == std::vector<int>{3}) ++h2;
        if (rep.genus == 1) {
            int marked = 0;
            for (const auto& cls : rep.classes)
                for (const auto& cn : cls.corners)
                    if (R.original[static_cast<size_t>(cn.poly)][static_cast<size_t>(cn.vertex)]) {
                        ++marked;
                        break;
                    }
            if (marked == 2) ++h00;
        }
    }
    return h2 == 1 && h00 == 1 ? Separation::H2_H00 : Separation::Other;
}

}  // namespace flatstrat
