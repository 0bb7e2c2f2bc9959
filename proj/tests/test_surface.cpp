#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "flatstrat/cylinders.hpp"
#include "flatstrat/error.hpp"
#include "flatstrat/involution.hpp"
#include "flatstrat/surface.hpp"

using namespace flatstrat;
using namespace fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST(Validate, UnitTorus) {
    auto R = validate(unit_torus());
    ASSERT_EQ(R.classes.size(), 1u);
    EXPECT_EQ(R.classes[0].angle_multiplier, 1);
    EXPECT_EQ(R.classes[0].corners.size(), 4u);
    EXPECT_EQ(R.genus, 1);
    EXPECT_EQ(R.area, FieldElement(1));
}

TEST(Validate, Sqrt2Dodecagon) {
    auto S = dodecagon();
    auto R = validate(S);
    ASSERT_EQ(R.classes.size(), 1u);
    EXPECT_EQ(R.classes[0].angle_multiplier, 5);
    EXPECT_EQ(R.genus, 3);
    EXPECT_EQ(R.area, FieldElement(1));
    EXPECT_FALSE(R.area.field().is_rationals() && false);
}

TEST(Validate, GaussBonnetOnTwoSquares) {
    // Two unit squares glued into a genus-2 surface with one cone point of angle 6 pi.
    Polygon A{{v(0, 0), v(1, 0), v(1, 1), v(0, 1)}}, B{{v(1, 0), v(2, 0), v(2, 1), v(1, 1)}};
    TranslationSurface S({A, B}, {{{0, 1}, {1, 3}}, {{1, 1}, {0, 3}}, {{0, 0}, {1, 2}}, {{1, 0}, {0, 2}}});
    auto R = validate(S);
    int excess = 0;
    for (const auto& c : R.classes) excess += c.angle_multiplier - 1;
    EXPECT_EQ(excess, 2 * R.genus - 2);
    EXPECT_EQ(R.area, FieldElement(2));
}

TEST(Validate, Errors) {
    Polygon sq{{v(0, 0), v(1, 0), v(1, 1), v(0, 1)}};
    Polygon wide{{v(0, 0), v(2, 0), v(2, 1), v(0, 1)}};
    EXPECT_EQ(kind_of([&] { validate(TranslationSurface({wide}, {{{0, 0}, {0, 1}}, {{0, 2}, {0, 3}}})); }),
              ErrorKind::BadGluing);
    EXPECT_EQ(kind_of([&] { validate(TranslationSurface({sq}, {{{0, 0}, {0, 2}}})); }), ErrorKind::BadGluing);
    EXPECT_EQ(kind_of([&] {
                  TranslationSurface({sq}, {{{0, 0}, {0, 2}}, {{0, 0}, {0, 1}}});
              }),
              ErrorKind::BadGluing);
    EXPECT_EQ(kind_of([&] {
                  validate(TranslationSurface({sq, sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}, {{1, 0}, {1, 2}},
                                                         {{1, 1}, {1, 3}}}));
              }),
              ErrorKind::Disconnected);
    Polygon cw{{v(0, 0), v(0, 1), v(1, 1), v(1, 0)}};
    EXPECT_EQ(kind_of([&] { validate(TranslationSurface({cw}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}})); }),
              ErrorKind::InvalidInput);
}

TEST(Triangulate, HandlesCollinearVertices) {
    Polygon P{{v(0, 0), v(1, 0), v(2, 0), v(3, 0), v(3, 1), v(2, 1), v(0, 1)}};
    auto tris = triangulate(P);
    EXPECT_EQ(tris.size(), 5u);
    FieldElement area;
    for (const auto& t : tris) {
        Polygon T{{P.vertex(t[0]), P.vertex(t[1]), P.vertex(t[2])}};
        EXPECT_GT(T.area().sign(), 0);
        area += T.area();
    }
    EXPECT_EQ(area, P.area());
}

TEST(TraceRay, UnitTorusDiagonal) {
    auto S = unit_torus();
    auto R = trace_ray(S, 0, v(0, 0), v(1, 1), 100);
    EXPECT_EQ(R.kind, TraceKind::HitSingularity);
    EXPECT_EQ(R.length2, FieldElement(2));
    EXPECT_EQ(R.holonomy, v(1, 1));
}

TEST(TraceRay, IrrationalSlopeExhaustsBudget) {
    auto S = unit_torus();
    auto K = sqrt2();
    Vec2 d{FieldElement(K, 1), FieldElement::generator(K)};
    for (int budget : {1, 10, 500}) {
        auto R = trace_ray(S, 0, v(0, 0), d, budget);
        EXPECT_EQ(R.kind, TraceKind::BudgetExceeded);
        EXPECT_EQ(static_cast<int>(R.crossings.size()), budget + 1);
    }
}

TEST(TraceRay, InteriorStartReturns) {
    auto S = unit_torus();
    auto R = trace_ray(S, 0, vq(Rational(1, 3), Rational(1, 5)), v(2, 1), 100);
    EXPECT_EQ(R.kind, TraceKind::Returned);
    EXPECT_EQ(R.holonomy, v(2, 1));
    EXPECT_EQ(R.crossings.size(), 3u);
}

TEST(TraceRay, DodecagonReversibleFromEveryDirectionSample) {
    auto S = dodecagon();
    const auto& A = S.atlas();
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> c(-6, 6);
    int hits = 0;
    for (int i = 0; i < 60; ++i) {
        Vec2 d = v(c(rng), c(rng));
        if (d.is_zero()) continue;
        for (const auto& pos : A.positions_of(0, d)) {
            TraceOptions o;
            o.budget = 200;
            auto R = trace_from(A, pos, o);
            if (R.kind != TraceKind::HitSingularity) continue;
            ++hits;
            auto B = trace_from(A, R.arrival, o);
            ASSERT_EQ(B.kind, TraceKind::HitSingularity);
            EXPECT_TRUE(same_position(B.arrival, pos));
            EXPECT_EQ(B.holonomy, -R.holonomy);
            // The crossing sequence is reversed; glued edges are traversed in the opposite direction.
            ASSERT_EQ(B.crossings.size(), R.crossings.size());
            for (size_t j = 0; j < R.crossings.size(); ++j)
                EXPECT_EQ(*S.partner(R.crossings[R.crossings.size() - 1 - j]), B.crossings[j]);
        }
    }
    EXPECT_GT(hits, 100);
}

TEST(AngularPositions, HalfTurnsCompose) {
    auto S = dodecagon();
    const auto& A = S.atlas();
    AngPos p{0, 2, v(3, -1)};
    auto q = A.rotate_half_turns(p, 10);
    EXPECT_TRUE(same_position(p, q));
    auto r = A.rotate_half_turns(A.rotate_half_turns(p, 3), -3);
    EXPECT_TRUE(same_position(p, r));
    // Every position sits in exactly one corner sector.
    for (int m = 0; m < 5; ++m)
        for (auto d : {v(1, 0), v(0, 1), v(-1, 0), v(0, -1), v(1, 1)}) {
            AngPos x{0, m, d};
            TriCorner c = A.corner_of(x);
            EXPECT_TRUE(same_position(A.position(c, d), x));
        }
}

namespace {

CylinderDiagram diagram(DiagramModel m, std::array<Rational, 3> l, std::array<Rational, 3> h, std::array<Rational, 3> t) {
    CylinderDiagram D;
    D.model = m;
    for (int i = 0; i < 3; ++i) {
        l[i].canonicalize();
        h[i].canonicalize();
        t[i].canonicalize();
        D.widths[i] = l[i];
        D.heights[i] = h[i];
        D.twists[i] = t[i];
    }
    return D;
}

std::vector<CylinderDiagram> diagrams() {
    using M = DiagramModel;
    return {diagram(M::CaseI, {1, 2, 3}, {1, 1, 1}, {0, 0, 0}),
            diagram(M::CaseI, {1, 2, 3}, {1, 2, 1}, {Rational(1, 2), Rational(1, 3), 0}),
            diagram(M::CaseI, {Rational(3, 2), 2, 1}, {Rational(1, 2), 1, 3}, {Rational(2, 3), Rational(3, 4), Rational(1, 4)}),
            diagram(M::CaseII, {7, 6, 16}, {3, 2, 3}, {0, 0, 0}),
            diagram(M::CaseII, {1, 1, 3}, {1, 2, 1}, {Rational(1, 2), 0, Rational(5, 6)})};
}

// Five unit squares: the right neighbour of square i is r[i], the top neighbour u[i].
TranslationSurface odd_origami() {
    const int r[5] = {0, 2, 1, 4, 3}, u[5] = {1, 2, 3, 0, 4};
    std::vector<Polygon> sq(5, Polygon{{v(0, 0), v(1, 0), v(1, 1), v(0, 1)}});
    std::vector<std::pair<EdgeRef, EdgeRef>> glue;
    for (int i = 0; i < 5; ++i) {
        glue.push_back({{i, 1}, {r[i], 3}});
        glue.push_back({{i, 2}, {u[i], 0}});
    }
    return TranslationSurface(sq, glue);
}

}  // namespace

TEST(Involution, DiagramSurfacesHaveEightFixedPoints) {
    for (const auto& D : diagrams()) {
        auto I = is_hyperelliptic_H4(build_diagram(D), 10000);
        ASSERT_TRUE(I.has_value());
        EXPECT_EQ(I->fixed_points, 8);
    }
}

TEST(Involution, Sqrt2Dodecagon) {
    auto I = is_hyperelliptic_H4(dodecagon(), 10000);
    ASSERT_TRUE(I.has_value());
    EXPECT_EQ(I->fixed_points, 8);
}

TEST(Involution, OddComponentHasNone) {
    auto S = odd_origami();
    auto R = validate(S);
    EXPECT_EQ(R.genus, 3);
    EXPECT_EQ(R.stratum(), std::vector<int>{5});
    EXPECT_FALSE(is_hyperelliptic_H4(S, 10000).has_value());
}

TEST(Involution, WrongStratum) {
    EXPECT_EQ(kind_of([] { is_hyperelliptic_H4(unit_torus(), 100); }), ErrorKind::WrongStratum);
    EXPECT_EQ(kind_of([] { find_involution(unit_torus(), 100); }), ErrorKind::WrongStratum);
}

TEST(Involution, SelfInverseOnPositions) {
    for (const auto& D : diagrams()) {
        auto S = build_diagram(D);
        const Atlas& A = S.atlas();
        auto I = find_involution(S, 10000);
        ASSERT_TRUE(I.has_value());
        EXPECT_EQ(I->corner_images.size(), 3 * A.triangles().size());
        for (const Vec2& d : {v(1, 0), v(2, 3), v(-1, 4)})
            for (const auto& p : A.positions_of(0, d)) {
                AngPos q = I->apply(A, p);
                EXPECT_EQ(q.dir, -d);
                EXPECT_TRUE(same_position(I->apply(A, q), p));
            }
    }
}

TEST(Involution, TracesAreEquivariant) {
    std::vector<TranslationSurface> surfaces{dodecagon()};
    for (const auto& D : diagrams()) surfaces.push_back(build_diagram(D));
    TraceOptions opt;
    opt.budget = 200;
    for (const auto& S : surfaces) {
        const Atlas& A = S.atlas();
        auto I = find_involution(S, 10000);
        ASSERT_TRUE(I.has_value());
        for (int x = -3; x <= 3; ++x)
            for (int y = 1; y <= 3; ++y)
                for (const auto& p : A.positions_of(0, v(x, y))) {
                    auto R = trace_from(A, p, opt);
                    auto Q = trace_from(A, I->apply(A, p), opt);
                    ASSERT_EQ(R.kind, Q.kind);
                    if (R.kind != TraceKind::HitSingularity) continue;
                    EXPECT_EQ(Q.holonomy, -R.holonomy);
                    EXPECT_TRUE(same_position(Q.arrival, I->apply(A, R.arrival)));
                }
    }
}

TEST(Involution, PreservesHorizontalCylinders) {
    for (const auto& D : diagrams()) {
        auto S = build_diagram(D);
        auto I = find_involution(S, 10000);
        ASSERT_TRUE(I.has_value());
        auto Dec = decompose(S, v(1, 0), 10000);
        const Atlas& A = S.atlas();
        ASSERT_EQ(Dec.cylinders.size(), 3u);
        for (const auto& C : Dec.cylinders) {
            ASSERT_EQ(C.bottom.size(), C.top.size());
            for (int b : C.bottom) {
                const auto& sc = Dec.saddle_connections[static_cast<size_t>(b)];
                AngPos img = I->apply(A, sc.end);
                int hits = 0;
                for (int t : C.top) hits += same_position(Dec.saddle_connections[static_cast<size_t>(t)].start, img);
                EXPECT_EQ(hits, 1);
            }
        }
    }
}
