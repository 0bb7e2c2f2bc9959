#include <optional>

#include "flatstrat/error.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

namespace {

struct ReturnTarget {
    int tri;
    Vec2 point;
};

TraceResult run(const Atlas& A, int tri, Vec2 P, const Vec2& d, int start_class,
                const std::optional<ReturnTarget>& target, const TraceOptions& opt) {
    TraceResult R;
    FieldElement total;
    FieldElement d2 = d.norm2();
    bool first = true;
    long steps = 0;
    const long step_cap = (static_cast<long>(opt.budget) + 2) * (static_cast<long>(A.triangles().size()) + 2) * 4;

    auto finish = [&](TraceKind kind) {
        R.kind = kind;
        R.t = total;
        R.holonomy = total * d;
        R.length2 = total * total * d2;
        return R;
    };

    while (true) {
        require(++steps <= step_cap, ErrorKind::Internal, "trace made no progress");
        const Triangle& T = A.tri(tri);
        TriangleExit ex = triangle_exit(T, P, d);
        const Vec2& X = ex.point;

        if (target && target->tri == tri) {
            Vec2 off = target->point - P;
            if (wedge(off, d).is_zero()) {
                FieldElement s = dot(off, d);
                if ((s.sign() > 0 || (s.is_zero() && !first)) && dot(X - target->point, d).sign() >= 0) {
                    if (opt.record_segments) R.segments.push_back({tri, P, target->point});
                    total += s / d2;
                    return finish(TraceKind::Returned);
                }
            }
        }
        if (opt.record_segments) R.segments.push_back({tri, P, X});
        total += ex.t;
        int vertex = ex.vertex;

        if (vertex >= 0) {
            int cls = T.cls[vertex];
            AngPos arrival = A.position({tri, vertex}, -d);
            const auto& C = A.vclass(cls);
            if (opt.stop_at_marked || C.k > 1 || cls == start_class) {
                R.end_class = cls;
                R.arrival = arrival;
                return finish(TraceKind::HitSingularity);
            }
            TriCorner next = A.corner_of(A.rotate_half_turns(arrival, 1));
            tri = next.tri;
            P = A.tri(tri).p[next.v];
        } else {
            int j = ex.edge;
            if (T.glued[j]) {
                R.crossings.push_back(T.orig[j]);
                if (static_cast<int>(R.crossings.size()) > opt.budget) return finish(TraceKind::BudgetExceeded);
            }
            P = X + T.shift[j];
            tri = T.nb_tri[j];
        }
        first = false;
    }
}

void check_direction(const Atlas& A, const Vec2& d) {
    require(!d.is_zero(), ErrorKind::InvalidInput, "zero direction");
    RealNumberField K = common_field({d.x, d.y});
    require(K.is_rationals() || A.field().is_rationals() || K.same_as(A.field()), ErrorKind::FieldMismatch,
            "direction components lie outside the surface field");
}

}  // namespace

TriangleExit triangle_exit(const Triangle& T, const Vec2& P, const Vec2& d) {
    int exit_edges[3];
    int n_exit = 0;
    FieldElement tmin;
    for (int j = 0; j < 3; ++j) {
        Vec2 e = T.edge(j);
        FieldElement w = wedge(e, d);
        if (w.sign() >= 0) continue;
        FieldElement tj = wedge(e, P - T.p[j]) / (-w);
        if (n_exit == 0 || tj < tmin) {
            tmin = tj;
            n_exit = 0;
            exit_edges[n_exit++] = j;
        } else if (tj == tmin) {
            exit_edges[n_exit++] = j;
        }
    }
    require(n_exit > 0 && tmin.sign() > 0, ErrorKind::Internal, "ray does not advance");
    TriangleExit ex;
    ex.t = tmin;
    ex.point = P + tmin * d;
    if (n_exit == 2) {
        int a = exit_edges[0], b = exit_edges[1];
        ex.vertex = ((a + 1) % 3 == b) ? b : a;
    } else {
        int j = exit_edges[0];
        if (ex.point == T.p[j]) ex.vertex = j;
        else if (ex.point == T.p[(j + 1) % 3]) ex.vertex = (j + 1) % 3;
        else ex.edge = j;
    }
    return ex;
}

TraceResult trace_from(const Atlas& A, const AngPos& start, const TraceOptions& opt) {
    check_direction(A, start.dir);
    require(opt.budget >= 1, ErrorKind::InvalidInput, "budget must be at least 1");
    TriCorner c = A.corner_of(start);
    return run(A, c.tri, A.tri(c.tri).p[c.v], start.dir, start.cls, std::nullopt, opt);
}

TraceResult trace_ray(const TranslationSurface& S, int poly, const Vec2& point, const Vec2& dir, int budget) {
    TraceOptions opt;
    opt.budget = budget;
    return trace_ray(S, poly, point, dir, opt);
}

TraceResult trace_ray(const TranslationSurface& S, int poly, const Vec2& point, const Vec2& dir,
                      const TraceOptions& opt) {
    const Atlas& A = S.atlas();
    check_direction(A, dir);
    require(opt.budget >= 1, ErrorKind::InvalidInput, "budget must be at least 1");
    require(poly >= 0 && poly < static_cast<int>(S.polygons().size()), ErrorKind::InvalidInput, "no such polygon");
    const Polygon& P = S.polygon(poly);
    for (int i = 0; i < P.size(); ++i) {
        if (!(P.vertex(i) == point)) continue;
        for (size_t t = 0; t < A.triangles().size(); ++t) {
            const auto& T = A.tri(static_cast<int>(t));
            if (T.poly != poly) continue;
            for (int v = 0; v < 3; ++v) {
                if (T.pv[v] != i) continue;
                Vec2 a = T.p[(v + 1) % 3] - T.p[v], b = T.p[(v + 2) % 3] - T.p[v];
                if (wedge(a, dir).sign() >= 0 && wedge(dir, b).sign() > 0)
                    return trace_from(A, A.position({static_cast<int>(t), v}, dir), opt);
            }
        }
        int cls = A.class_of({poly, i});
        require(A.vclass(cls).k == 1, ErrorKind::InvalidInput,
                "direction does not enter the polygon at this cone point");
        return trace_from(A, A.positions_of(cls, dir).front(), opt);
    }
    int p = poly;
    Vec2 x = point;
    auto t = A.locate(p, x, dir);
    if (!t) {
        // On a polygon edge pointing outward: continue from the glued copy.
        for (int e = 0; e < P.size() && !t; ++e) {
            Vec2 a = P.vertex(e), b = P.vertex(e + 1);
            if (!wedge(b - a, x - a).is_zero() || dot(x - a, x - b).sign() > 0) continue;
            EdgeRef q = *S.partner({poly, e});
            Vec2 y = x + (S.polygon(q.poly).vertex(q.edge + 1) - a);
            t = A.locate(q.poly, y, dir);
            if (t) x = y;
        }
    }
    require(t.has_value(), ErrorKind::InvalidInput, "start point " + point.to_string() + " is outside the polygon");
    return run(A, *t, x, dir, -1, ReturnTarget{*t, x}, opt);
}

}  // namespace flatstrat
