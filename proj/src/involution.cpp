#include "flatstrat/involution.hpp"

#include <set>
#include <string>

#include "flatstrat/error.hpp"

namespace flatstrat {

namespace {

std::string key(const FieldElement& x) { return x.is_rational() ? to_string(x.to_rational()) : x.to_string(); }

// Point of the surface as (triangle, coordinates), unique for points on shared edges.
std::pair<int, std::string> location(const Atlas& A, int t, const Vec2& X) {
    std::pair<int, std::string> best{t, key(X.x) + "," + key(X.y)};
    const Triangle& T = A.tri(t);
    for (int j = 0; j < 3; ++j) {
        if (!wedge(T.edge(j), X - T.p[j]).is_zero()) continue;
        Vec2 Y = X + T.shift[j];
        std::pair<int, std::string> alt{T.nb_tri[j], key(Y.x) + "," + key(Y.y)};
        if (alt < best) best = alt;
    }
    return best;
}

}  // namespace

std::optional<InvolutionMap> find_involution(const TranslationSurface& S, int budget) {
    const Atlas& A = S.atlas();
    require(A.classes().size() == 1 && A.vclass(0).k >= 2, ErrorKind::WrongStratum,
            "polygon vertices must form a single singular class");
    TraceOptions opt;
    opt.budget = budget;
    size_t nt = A.triangles().size();
    for (int j = 0; j < A.vclass(0).k; ++j) {
        InvolutionMap I;
        I.rotation = j;
        bool ok = true;
        for (size_t t = 0; t < nt && ok; ++t) {
            const Triangle& T = A.tri(static_cast<int>(t));
            for (int v = 0; v < 3 && ok; ++v) {
                Vec2 e = T.edge(v);
                AngPos from = A.position({static_cast<int>(t), v}, e);
                AngPos to = A.position({static_cast<int>(t), (v + 1) % 3}, -e);
                AngPos img = I.apply(A, from);
                TraceResult R = trace_from(A, img, opt);
                ok = R.kind == TraceKind::HitSingularity && R.holonomy == -e && same_position(R.arrival, I.apply(A, to));
                I.corner_images.push_back(img);
            }
        }
        if (!ok) continue;

        // A regular fixed point X of triangle t is the midpoint of an invariant saddle connection leaving a
        // corner p of t with holonomy 2 (X - p), so only the doubled triangle is unfolded from each corner.
        std::set<std::pair<int, std::string>> fixed;
        TraceOptions vopt;
        vopt.budget = budget;
        for (size_t t = 0; t < nt; ++t) {
            const Triangle& T0 = A.tri(static_cast<int>(t));
            for (int v = 0; v < 3; ++v) {
                Vec2 a = T0.p[(v + 1) % 3] - T0.p[v], b = T0.p[(v + 2) % 3] - T0.p[v];
                Vec2 a2 = FieldElement(2) * a, b2 = FieldElement(2) * b;
                // Nonnegative on the side of the far edge 2a 2b that holds the corner.
                auto near = [&](const Vec2& X) { return wedge(b2 - a2, X - a2).sign() >= 0; };
                auto consider = [&](const Vec2& X) {
                    if (!near(X)) return;
                    AngPos st = A.position({static_cast<int>(t), v}, X);
                    TraceResult R = trace_from(A, st, vopt);
                    require(R.kind != TraceKind::BudgetExceeded, ErrorKind::NotPeriodicWithinBudget,
                            "fixed-point search exceeded the budget");
                    if (R.kind == TraceKind::HitSingularity && R.holonomy == X && same_position(R.arrival, I.apply(A, st)))
                        fixed.insert(location(A, static_cast<int>(t), T0.p[v] + FieldElement(Rational(1, 2)) * X));
                };
                consider(a);
                struct State {
                    int tri, edge;
                    Vec2 L, R, off;
                };
                std::vector<State> stack{{static_cast<int>(t), (v + 1) % 3, a, b, -T0.p[v]}};
                long steps = 0;
                while (!stack.empty()) {
                    require(++steps <= 100L * budget, ErrorKind::NotPeriodicWithinBudget,
                            "fixed-point search exceeded the budget");
                    State st = std::move(stack.back());
                    stack.pop_back();
                    const Triangle& T = A.tri(st.tri);
                    if (!near(T.p[st.edge] + st.off) && !near(T.p[(st.edge + 1) % 3] + st.off)) continue;
                    int t2 = T.nb_tri[st.edge], e2 = T.nb_edge[st.edge];
                    const Triangle& U = A.tri(t2);
                    Vec2 off = st.off - T.shift[st.edge];
                    Vec2 X = U.p[(e2 + 2) % 3] + off;
                    int e_left = (e2 + 1) % 3, e_right = (e2 + 2) % 3;
                    if (wedge(st.L, X).sign() > 0 && wedge(X, st.R).sign() > 0) {
                        consider(X);
                        stack.push_back({t2, e_left, st.L, X, off});
                        stack.push_back({t2, e_right, X, st.R, off});
                    } else if (wedge(st.L, X).sign() <= 0) {
                        stack.push_back({t2, e_right, st.L, st.R, off});
                    } else {
                        stack.push_back({t2, e_left, st.L, st.R, off});
                    }
                }
            }
        }
        I.fixed_points = static_cast<int>(fixed.size()) + 1;
        return I;
    }
    return std::nullopt;
}

std::optional<InvolutionMap> is_hyperelliptic_H4(const TranslationSurface& S, int budget) {
    const ConeReport& R = S.atlas().report();
    require(R.genus == 3 && R.stratum() == std::vector<int>{5} && R.classes.size() == 1, ErrorKind::WrongStratum,
            "surface is not in the stratum with one cone point of angle 10 pi");
    return find_involution(S, budget);
}

}  // namespace flatstrat
