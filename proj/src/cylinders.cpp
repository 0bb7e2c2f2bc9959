#include "flatstrat/cylinders.hpp"

#include <algorithm>
#include <map>

#include "flatstrat/error.hpp"

namespace flatstrat {

std::string to_string(DiagramModel m) { return m == DiagramModel::CaseI ? "caseI" : "caseII"; }

FieldElement CylinderDiagram::area() const {
    return widths[0] * heights[0] + widths[1] * heights[1] + widths[2] * heights[2];
}

void check_diagram(const CylinderDiagram& D) {
    for (int i = 0; i < 3; ++i) {
        require(D.widths[i].sign() > 0, ErrorKind::BadDiagram, "width l" + std::to_string(i + 1) + " must be positive");
        require(D.heights[i].sign() > 0, ErrorKind::BadDiagram,
                "height h" + std::to_string(i + 1) + " must be positive");
        require(D.twists[i].sign() >= 0 && D.twists[i] < FieldElement(1), ErrorKind::BadDiagram,
                "twist t" + std::to_string(i + 1) + " must lie in [0, 1)");
    }
    const auto& l = D.widths;
    if (D.model == DiagramModel::CaseI) {
        require(l[0] < l[1], ErrorKind::BadDiagram, "case I needs l1 < l2");
        require(l[0] + l[2] > l[1], ErrorKind::BadDiagram, "case I needs l1 + l3 > l2");
    } else {
        require(l[2] > l[0] + l[1], ErrorKind::BadDiagram, "case II needs l3 > l1 + l2");
    }
}

TranslationSurface build_diagram(const CylinderDiagram& D) {
    check_diagram(D);
    struct Seg {
        int label;
        FieldElement len;
    };
    const auto& l = D.widths;
    std::vector<Seg> bottom[3], top[3];
    if (D.model == DiagramModel::CaseI) {
        // labels: 0 d1+, 1 d1-, 2 d2+, 3 d2-, 4 d3
        FieldElement g2 = l[1] - l[0], g3 = l[0] + l[2] - l[1];
        bottom[0] = {{0, l[0]}};
        top[0] = {{1, l[0]}};
        bottom[1] = {{3, g2}, {1, l[0]}};
        top[1] = {{2, g2}, {0, l[0]}};
        bottom[2] = {{2, g2}, {4, g3}};
        top[2] = {{3, g2}, {4, g3}};
    } else {
        // labels: 0 g1+, 1 g1-, 2 g2+, 3 g2-, 4 g3
        FieldElement g3 = l[2] - l[0] - l[1];
        bottom[0] = {{0, l[0]}};
        top[0] = {{1, l[0]}};
        bottom[1] = {{2, l[1]}};
        top[1] = {{3, l[1]}};
        bottom[2] = {{1, l[0]}, {4, g3}, {3, l[1]}};
        top[2] = {{0, l[0]}, {2, l[1]}, {4, g3}};
    }
    std::vector<Polygon> polys;
    std::map<int, EdgeRef> bottom_edge, top_edge;
    std::vector<std::pair<EdgeRef, EdgeRef>> glue;
    for (int c = 0; c < 3; ++c) {
        FieldElement w = l[c], h = D.heights[c], s = D.twists[c] * w;
        Polygon P;
        FieldElement x;
        for (const auto& seg : bottom[c]) {
            bottom_edge[seg.label] = {c, P.size()};
            P.vertices.push_back({x, FieldElement(0)});
            x += seg.len;
        }
        int right = P.size();
        P.vertices.push_back({w, FieldElement(0)});
        x = s + w;
        for (auto it = top[c].rbegin(); it != top[c].rend(); ++it) {
            top_edge[it->label] = {c, P.size()};
            P.vertices.push_back({x, h});
            x -= it->len;
        }
        int left = P.size();
        P.vertices.push_back({s, h});
        glue.push_back({{c, right}, {c, left}});
        polys.push_back(std::move(P));
    }
    for (int label = 0; label < 5; ++label) glue.push_back({bottom_edge.at(label), top_edge.at(label)});
    TranslationSurface S(std::move(polys), std::move(glue));
    validate(S);
    return S;
}

namespace {

FieldElement piece_len(const TraceSegment& s) { return s.to.x - s.from.x; }

struct PieceRef {
    int sc;
    int piece;
    FieldElement before;  // length of the saddle connection before this piece
};

struct UpHit {
    int sc;
    FieldElement offset;  // along the hit saddle connection
    FieldElement height;
};

// Vertical flow upward from P in triangle tri until the first horizontal saddle connection.
// nullopt when the flow lands on an endpoint of a piece or a vertex.
std::optional<UpHit> flow_up(const Atlas& A, int tri, Vec2 P, const std::vector<std::vector<PieceRef>>& pieces_in,
                             const std::vector<SaddleConnection>& scs) {
    const Vec2 up{FieldElement(0), FieldElement(1)};
    FieldElement total;
    bool first = true;
    for (long step = 0; step < 1000000; ++step) {
        const Triangle& T = A.tri(tri);
        TriangleExit ex = triangle_exit(T, P, up);
        const PieceRef* best = nullptr;
        FieldElement best_y;
        for (const auto& pr : pieces_in[static_cast<size_t>(tri)]) {
            const TraceSegment& seg = scs[static_cast<size_t>(pr.sc)].segments[static_cast<size_t>(pr.piece)];
            const FieldElement& y0 = seg.from.y;
            if (seg.from.x > P.x || seg.to.x < P.x) continue;
            int c = (y0 - P.y).sign();
            if (c < 0 || (c == 0 && first)) continue;
            if (y0 > ex.point.y) continue;
            if (!best || y0 < best_y) {
                best = &pr;
                best_y = y0;
            }
        }
        if (best) {
            const TraceSegment& seg = scs[static_cast<size_t>(best->sc)].segments[static_cast<size_t>(best->piece)];
            if (seg.from.x == P.x || seg.to.x == P.x) return std::nullopt;
            return UpHit{best->sc, best->before + (P.x - seg.from.x), total + (best_y - P.y)};
        }
        if (ex.vertex >= 0) return std::nullopt;
        total += ex.t;
        P = ex.point + T.shift[ex.edge];
        tri = T.nb_tri[ex.edge];
        first = false;
    }
    fail(ErrorKind::Internal, "vertical flow did not reach a boundary");
}

std::vector<std::vector<int>> cycles(const std::vector<int>& next) {
    std::vector<std::vector<int>> out;
    std::vector<int> seen(next.size(), 0);
    for (size_t s = 0; s < next.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> c;
        int x = static_cast<int>(s);
        while (!seen[static_cast<size_t>(x)]) {
            seen[static_cast<size_t>(x)] = 1;
            c.push_back(x);
            x = next[static_cast<size_t>(x)];
        }
        require(x == static_cast<int>(s), ErrorKind::Internal, "boundary successor map is not a permutation");
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

Decomposition decompose(const TranslationSurface& S, const Vec2& dir, int budget) {
    require(!dir.is_zero(), ErrorKind::InvalidInput, "zero direction");
    require(budget >= 1, ErrorKind::InvalidInput, "budget must be at least 1");
    FieldElement n2 = dir.norm2();
    Mat2 M{dir.x / n2, dir.y / n2, -dir.y / n2, dir.x / n2};
    TranslationSurface N = S.transformed(M);
    const Atlas& A = N.atlas();
    const Vec2 h{FieldElement(1), FieldElement(0)};

    Decomposition D;
    D.direction = dir;
    D.area = S.atlas().report().area;

    std::map<std::pair<int, int>, int> out_id;
    TraceOptions opt;
    opt.budget = budget;
    opt.stop_at_marked = true;
    opt.record_segments = true;
    for (int c = 0; c < static_cast<int>(A.classes().size()); ++c)
        for (int m = 0; m < A.vclass(c).k; ++m) {
            AngPos start{c, m, h};
            TraceResult R = trace_from(A, start, opt);
            require(R.kind == TraceKind::HitSingularity, ErrorKind::NotPeriodicWithinBudget,
                    "separatrix " + std::to_string(m) + " at vertex class " + std::to_string(c) +
                        " does not end within " + std::to_string(budget) + " crossings");
            SaddleConnection sc;
            sc.length = R.t;
            sc.holonomy = R.t * dir;
            sc.start = start;
            sc.end = R.arrival;
            sc.segments = std::move(R.segments);
            out_id[{c, m}] = static_cast<int>(D.saddle_connections.size());
            D.saddle_connections.push_back(std::move(sc));
        }
    auto& scs = D.saddle_connections;
    size_t n = scs.size();
    auto out_of = [&](const AngPos& p) { return out_id.at({p.cls, p.sheet}); };
    std::vector<int> bnext(n), tnext(n);
    for (size_t i = 0; i < n; ++i) {
        bnext[i] = out_of(A.rotate_half_turns(scs[i].end, -1));
        tnext[i] = out_of(A.rotate_half_turns(scs[i].end, 1));
    }
    auto bottoms = cycles(bnext), tops = cycles(tnext);
    require(bottoms.size() == tops.size(), ErrorKind::Internal, "boundary cycle counts differ");
    std::vector<int> top_cycle_of(n), bottom_cycle_of(n);
    for (size_t c = 0; c < tops.size(); ++c)
        for (int s : tops[c]) top_cycle_of[static_cast<size_t>(s)] = static_cast<int>(c);
    for (size_t c = 0; c < bottoms.size(); ++c)
        for (int s : bottoms[c]) bottom_cycle_of[static_cast<size_t>(s)] = static_cast<int>(c);

    std::vector<std::vector<PieceRef>> pieces_in(A.triangles().size());
    for (size_t i = 0; i < n; ++i) {
        FieldElement before;
        for (size_t j = 0; j < scs[i].segments.size(); ++j) {
            const auto& seg = scs[i].segments[j];
            pieces_in[static_cast<size_t>(seg.tri)].push_back({static_cast<int>(i), static_cast<int>(j), before});
            before += piece_len(seg);
        }
    }
    auto offsets_in = [&](const std::vector<int>& cyc) {
        std::map<int, FieldElement> off;
        FieldElement x;
        for (int s : cyc) {
            off[s] = x;
            x += scs[static_cast<size_t>(s)].length;
        }
        return std::make_pair(off, x);
    };

    // Match each bottom boundary with the top boundary reached by flowing upward.
    struct Match {
        FieldElement u0;  // start of the flow, along the first bottom saddle connection
        UpHit hit;
        int top;
    };
    std::vector<Match> matches;
    std::vector<int> top_used(tops.size(), 0);
    static const Rational fractions[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 5),
                                         Rational(3, 7), Rational(5, 8), Rational(7, 11), Rational(2, 13)};
    for (const auto& bc : bottoms) {
        const auto& sc = scs[static_cast<size_t>(bc.front())];
        std::optional<UpHit> hit;
        FieldElement u0;
        for (const auto& f : fractions) {
            u0 = sc.length * FieldElement(f);
            FieldElement before;
            for (const auto& seg : sc.segments) {
                FieldElement len = piece_len(seg);
                if (before < u0 && u0 < before + len) {
                    Vec2 P = seg.from + Vec2{u0 - before, FieldElement(0)};
                    hit = flow_up(A, seg.tri, P, pieces_in, scs);
                    break;
                }
                before += len;
            }
            if (hit) break;
        }
        require(hit.has_value(), ErrorKind::Internal, "could not match cylinder boundaries");
        int tc = top_cycle_of[static_cast<size_t>(hit->sc)];
        require(!top_used[static_cast<size_t>(tc)], ErrorKind::Internal, "top boundary matched twice");
        top_used[static_cast<size_t>(tc)] = 1;
        matches.push_back({u0, *hit, tc});
    }

    // Involution on horizontal saddle connections: sigma goes to the separatrix leaving at the
    // end position of sigma rotated by (2j + 1) pi; it must preserve lengths and cylinders.
    std::vector<int> phi;
    if (A.classes().size() == 1 && A.vclass(0).k >= 2) {
        for (int j = 0; j < A.vclass(0).k && !D.involution_index; ++j) {
            std::vector<int> cand(n);
            for (size_t i = 0; i < n; ++i) cand[i] = out_of(A.rotate_half_turns(scs[i].end, 2 * j + 1));
            bool ok = true;
            for (size_t i = 0; i < n && ok; ++i) {
                int p = cand[i];
                int cyl = bottom_cycle_of[i];
                ok = cand[static_cast<size_t>(p)] == static_cast<int>(i) &&
                     scs[static_cast<size_t>(p)].length == scs[i].length &&
                     top_cycle_of[static_cast<size_t>(p)] == matches[static_cast<size_t>(cyl)].top;
            }
            if (ok) {
                D.involution_index = j;
                phi = cand;
            }
        }
    }

    for (size_t ci = 0; ci < bottoms.size(); ++ci) {
        const auto& bc = bottoms[ci];
        const Match& mt = matches[ci];
        const auto& topc = tops[static_cast<size_t>(mt.top)];
        auto [boff, bl] = offsets_in(bc);
        auto [toff, tl] = offsets_in(topc);
        require(bl == tl, ErrorKind::Internal, "cylinder boundaries have different lengths");

        Cylinder C;
        C.bottom = bc;
        C.top = topc;
        C.width = bl;
        C.height = mt.hit.height;
        C.circumference = bl * dir;
        C.area = bl * mt.hit.height * n2;
        C.modulus = mt.hit.height / bl;
        // Start of the first top saddle connection, measured from the start of the first bottom one.
        FieldElement x0 = mt.u0 - (toff.at(mt.hit.sc) + mt.hit.offset);
        FieldElement shift = x0;
        if (!C.simple() && !phi.empty()) {
            // Composite boundary: offset between an involution-paired pair of left endpoints.
            // With three bottom segments the pair is the one preceding the self-glued segment.
            int sigma = bc.front();
            if (bc.size() == 3) {
                for (size_t i = 0; i < bc.size(); ++i) {
                    int nxt = bc[(i + 1) % bc.size()];
                    if (std::find(topc.begin(), topc.end(), nxt) != topc.end()) sigma = bc[i];
                }
            }
            int image = phi[static_cast<size_t>(sigma)];
            shift = x0 + toff.at(image) - boff.at(sigma);
        }
        C.twist = (shift / bl).frac();
        D.cylinders.push_back(std::move(C));
    }
    FieldElement total;
    for (const auto& C : D.cylinders) total += C.area;
    require(total == D.area, ErrorKind::Internal, "cylinder areas do not add up to the surface area");
    return D;
}

std::optional<DiagramOrder> diagram_order(const Decomposition& D) {
    if (D.cylinders.size() != 3 || D.saddle_connections.size() != 5) return std::nullopt;
    auto self_glued = [](const Cylinder& C) {
        for (int s : C.bottom)
            if (std::find(C.top.begin(), C.top.end(), s) != C.top.end()) return s;
        return -1;
    };
    std::vector<int> simple, composite;
    for (int i = 0; i < 3; ++i) (D.cylinders[static_cast<size_t>(i)].simple() ? simple : composite).push_back(i);
    DiagramOrder out;
    if (simple.size() == 1) {
        out.model = DiagramModel::CaseI;
        out.order[0] = simple[0];
        int a = composite[0], b = composite[1];
        if (self_glued(D.cylinders[static_cast<size_t>(a)]) >= 0) std::swap(a, b);
        if (self_glued(D.cylinders[static_cast<size_t>(b)]) < 0) return std::nullopt;
        out.order[1] = a;
        out.order[2] = b;
    } else if (simple.size() == 2) {
        out.model = DiagramModel::CaseII;
        const Cylinder& C3 = D.cylinders[static_cast<size_t>(composite[0])];
        int g3 = self_glued(C3);
        if (g3 < 0 || C3.bottom.size() != 3) return std::nullopt;
        int sigma = -1;
        for (size_t i = 0; i < 3; ++i)
            if (C3.bottom[(i + 1) % 3] == g3) sigma = C3.bottom[i];
        int a = simple[0], b = simple[1];
        if (D.cylinders[static_cast<size_t>(a)].top.front() != sigma) std::swap(a, b);
        out.order[0] = a;
        out.order[1] = b;
        out.order[2] = composite[0];
    } else {
        return std::nullopt;
    }
    return out;
}

std::optional<CylinderDiagram> recognize_diagram(const Decomposition& D) {
    auto ord = diagram_order(D);
    if (!ord) return std::nullopt;
    CylinderDiagram out;
    out.model = ord->model;
    for (int i = 0; i < 3; ++i) {
        const Cylinder& C = D.cylinders[static_cast<size_t>(ord->order[i])];
        out.widths[i] = C.width;
        out.heights[i] = C.height;
        out.twists[i] = C.twist;
    }
    try {
        check_diagram(out);
    } catch (const Error&) {
        return std::nullopt;
    }
    return out;
}

Certificate corollary_B_check(const TranslationSurface& S, const Vec2& dir, int budget) {
    Certificate cert;
    Decomposition D = decompose(S, dir, budget);
    for (const auto& C : D.cylinders) cert.moduli.push_back(C.modulus);
    if (D.cylinders.size() != 3) {
        cert.diagnostic = "expected 3 cylinders, found " + std::to_string(D.cylinders.size());
        return cert;
    }
    auto dep = q_linear_independent(cert.moduli);
    cert.ok = dep.independent;
    cert.witness = dep.witness;
    cert.diagnostic = dep.independent ? "moduli independent over Q" : "moduli dependent over Q";
    return cert;
}

}  // namespace flatstrat
