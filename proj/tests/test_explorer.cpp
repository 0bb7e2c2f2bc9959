#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "flatstrat/cylinders.hpp"
#include "flatstrat/error.hpp"
#include "flatstrat/explorer.hpp"
#include "flatstrat/involution.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace flatstrat;
using namespace fixtures;
using generators::key;
using generators::lattice_scan;

namespace {

std::multiset<std::string> holonomies(const SaddleConnectionSet& s) {
    std::multiset<std::string> out;
    for (const auto& e : s.entries) out.insert(key(e.holonomy));
    return out;
}

CylinderDiagram integer_case_ii() {
    CylinderDiagram D;
    D.model = DiagramModel::CaseII;
    FieldElement l[3] = {7, 6, 16}, h[3] = {3, 2, 3};
    for (int i = 0; i < 3; ++i) {
        D.widths[i] = l[i];
        D.heights[i] = h[i];
        D.twists[i] = 0;
    }
    return D;
}

CylinderDiagram rectangles() {
    CylinderDiagram D;
    D.model = DiagramModel::CaseI;
    for (int i = 0; i < 3; ++i) {
        D.widths[i] = i + 1;
        D.heights[i] = 1;
        D.twists[i] = 0;
    }
    return D;
}

SplittingDatum square_tori() {
    return {MarkedTorus(Lattice(v(1, 0), v(0, 1))), MarkedTorus(Lattice(v(2, 0), v(0, 1)), {v(0, 0), v(1, 0)}),
            MarkedTorus(Lattice(v(3, 0), v(0, 1)), {v(0, 0), v(1, 0)}), v(1, 0), v(1, 0)};
}

// Two-cylinder L-shaped surface in H(2): a sheared w1 x h1 cylinder on top of a w2 x h2 one.
TranslationSurface l_shape(const Rational& w1, const Rational& w2, const Rational& h1, const Rational& h2,
                           const Rational& s) {
    Rational H = h1 + h2;
    Polygon P{{vq(0, 0), vq(w1, 0), vq(w2, 0), vq(w2, h2), vq(w1, h2), vq(w1 + s, H), vq(s, H), vq(0, h2)}};
    // edges: 0,1 bottom; 2 lower right; 3 lower top; 4 upper right; 5 top; 6 upper left; 7 lower left
    return TranslationSurface({P}, {{{0, 0}, {0, 5}}, {{0, 1}, {0, 3}}, {{0, 2}, {0, 7}}, {{0, 4}, {0, 6}}});
}

const SCPath& entry(const TheoremADecomposition& T, int k, bool second = false) {
    const auto& p = T.pairs[static_cast<size_t>(k)];
    return T.set.entries[static_cast<size_t>(second ? p.second : p.first)];
}

}  // namespace

TEST(SaddleConnections, UnitTorusShort) {
    auto s = saddle_connections(unit_torus(), 2, 1000);
    EXPECT_TRUE(s.complete);
    std::multiset<std::string> want = {"1,0", "-1,0", "0,1", "0,-1", "1,1", "-1,-1", "1,-1", "-1,1"};
    EXPECT_EQ(holonomies(s), want);
}

TEST(SaddleConnections, UnitTorusAgainstScan) {
    auto s = saddle_connections(unit_torus(), 5, 1000);
    EXPECT_EQ(s.entries.size(), 16u);
    EXPECT_EQ(holonomies(s), lattice_scan(v(1, 0), v(0, 1), 5));
}

TEST(SaddleConnections, RandomToriAgainstScan) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-4, 4), den(1, 4), bound(10, 100);
    int done = 0;
    while (done < 30) {
        Vec2 u = vq(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
        Vec2 w = vq(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
        FieldElement A = abs(wedge(u, w));
        if (A < FieldElement(Rational(1, 2))) continue;
        ++done;
        Rational L2 = bound(rng);
        auto s = saddle_connections(torus(u, w), L2, 100000);
        EXPECT_TRUE(s.complete);
        EXPECT_EQ(holonomies(s), lattice_scan(u, w, L2)) << u.to_string() << " " << w.to_string();
    }
}

TEST(SaddleConnections, EntriesRetraceAndPairUp) {
    auto S = dodecagon();
    auto s = saddle_connections(S, 1, 10000);
    ASSERT_TRUE(s.complete);
    const Atlas& A = S.atlas();
    TraceOptions opt;
    opt.budget = 10000;
    std::set<std::string> seen;
    for (const auto& e : s.entries) {
        auto R = trace_from(A, e.start, opt);
        ASSERT_EQ(R.kind, TraceKind::HitSingularity);
        EXPECT_EQ(R.holonomy, e.holonomy);
        EXPECT_TRUE(same_position(R.arrival, e.end));
        // Orientation reversal is in the set: the trace back from the end position.
        auto B = trace_from(A, e.end, opt);
        EXPECT_EQ(B.holonomy, -e.holonomy);
        EXPECT_TRUE(same_position(B.arrival, e.start));
        std::string id = key(e.holonomy) + "@" + std::to_string(e.start.sheet) + ":" + key(e.start.dir);
        EXPECT_TRUE(seen.insert(id).second);
        bool reversed = false;
        for (const auto& f : s.entries) reversed = reversed || same_position(f.start, e.end);
        EXPECT_TRUE(reversed);
    }
    EXPECT_EQ(seen.size(), s.entries.size());
}

TEST(SaddleConnections, CaseIIHorizontalMatchDecomposition) {
    auto S = build_diagram(integer_case_ii());
    auto s = saddle_connections(S, 256, 10000);
    std::multiset<std::string> found;
    for (const auto& e : s.entries)
        if (e.holonomy.y.is_zero()) found.insert(key(e.holonomy));
    auto D = decompose(S, v(1, 0), 10000);
    ASSERT_EQ(D.saddle_connections.size(), 5u);
    std::multiset<std::string> want;
    for (const auto& sc : D.saddle_connections) {
        want.insert(key(sc.holonomy));
        want.insert(key(-sc.holonomy));
    }
    EXPECT_EQ(found, want);
}

TEST(SaddleConnections, RejectsNonPositiveBound) {
    EXPECT_THROW(saddle_connections(unit_torus(), 0, 100), Error);
}

TEST(SimpleCylinders, EveryPrimitiveOnTorus) {
    auto hits = find_simple_cylinders(unit_torus(), 5, 1000);
    std::set<std::string> dirs;
    for (const auto& h : hits) {
        EXPECT_EQ(h.area, FieldElement(1));
        EXPECT_EQ(h.modulus, FieldElement(1) / h.circumference.norm2());
        dirs.insert(key(h.circumference));
    }
    EXPECT_EQ(dirs.size(), 8u);
    EXPECT_EQ(hits.size(), 8u);
}

TEST(SimpleCylinders, CaseIIHorizontal) {
    auto S = build_diagram(integer_case_ii());
    auto hits = find_simple_cylinders(S, 49, 10000);
    std::set<std::pair<std::string, std::string>> horizontal;
    for (const auto& h : hits)
        if (h.circumference.y.is_zero()) horizontal.insert({key(h.circumference), key(Vec2{h.area, 0})});
    std::set<std::pair<std::string, std::string>> want = {{"7,0", "21,0"}, {"6,0", "12,0"}};
    EXPECT_EQ(horizontal, want);
}

TEST(SimpleCylinders, SquareTiledFixture) {
    auto S = build_diagram(rectangles());
    auto hits = find_simple_cylinders(S, 9, 10000);
    ASSERT_FALSE(hits.empty());
    for (const auto& h : hits) EXPECT_GT(h.modulus, FieldElement(0));
}

TEST(SimpleCylinders, InvariantSaddleConnectionsLieInSimpleCylinders) {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<long> n(1, 3), shear(0, 5);
    for (int done = 0; done < 50; ++done) {
        long w1 = n(rng), w2 = w1 + n(rng);
        Rational s(shear(rng) * w1, 6);
        s.canonicalize();
        long h1 = n(rng), h2 = n(rng);
        auto S = l_shape(w1, w2, h1, h2, s);
        ASSERT_EQ(validate(S).stratum(), std::vector<int>{3});
        auto I = find_involution(S, 10000);
        ASSERT_TRUE(I.has_value());
        EXPECT_EQ(I->fixed_points, 6);
        const Atlas& A = S.atlas();
        std::vector<SCPath> open;
        for (const auto& g : saddle_connections(S, 25, 10000).entries)
            if (same_position(g.end, I->apply(A, g.start))) open.push_back(g);
        // A cylinder crossed by g has area |g ^ h| for its circumference h.
        FieldElement area = validate(S).area;
        auto may_contain = [&](const Vec2& h) {
            return std::any_of(open.begin(), open.end(), [&](const SCPath& g) { return abs(wedge(g.holonomy, h)) <= area; });
        };
        for (int bound : {100, 400, 1600}) {
            if (open.empty()) break;
            auto big = saddle_connections(S, bound, 1000000);
            for (const auto& c : find_simple_cylinders(S, big, may_contain)) {
                const SCPath& a = big.entries[static_cast<size_t>(c.a)];
                const SCPath& b = big.entries[static_cast<size_t>(c.b)];
                CutComplex K(A, {a, b});
                int cc = K.component_of({0, 1});
                std::erase_if(open, [&](const SCPath& g) {
                    if (paths_meet(A, g, a) || paths_meet(A, g, b)) return false;
                    const auto& seg = g.segments.front();
                    return K.component_at(seg.tri, FieldElement(Rational(1, 2)) * (seg.from + seg.to)) == cc;
                });
            }
        }
        for (const auto& g : open)
            ADD_FAILURE() << "no simple cylinder contains " << g.holonomy.to_string() << " on " << w1 << " " << w2 << " " << h1 << " " << h2 << " " << s;
    }
}

TEST(HomologousPairs, CutTestIsSymmetric) {
    auto S = dodecagon();
    auto s = saddle_connections(S, 1, 10000);
    const Atlas& A = S.atlas();
    for (size_t i = 0; i < s.entries.size(); ++i)
        for (size_t j = i + 1; j < s.entries.size(); ++j) {
            if (s.entries[i].holonomy != s.entries[j].holonomy || paths_meet(A, s.entries[i], s.entries[j])) continue;
            EXPECT_FALSE(paths_meet(A, s.entries[j], s.entries[i]));
            CutComplex K1(A, {s.entries[i], s.entries[j]}), K2(A, {s.entries[j], s.entries[i]});
            EXPECT_EQ(K1.component_count(), K2.component_count());
        }
}

TEST(TheoremA, DodecagonFeedsCriterion) {
    auto S = dodecagon();
    auto T = find_theorem_A(S, 16, 10000, [](const TheoremADecomposition& d) { return theorem_B_check(d.splitting).ok; });
    EXPECT_TRUE(theorem_B_check(T.splitting).ok);
    EXPECT_TRUE(parallel(entry(T, 0).holonomy, entry(T, 2).holonomy));
    FieldElement sum = 0;
    for (const auto& a : T.areas) sum += a;
    EXPECT_EQ(sum, FieldElement(1));
    auto P = validate_splitting(T.splitting).params;
    ASSERT_TRUE(P.has_value());
    EXPECT_FALSE(P->mbar.is_rational());
    // The cut splitting glues back to a surface of the same area in the same stratum.
    auto R = validate(psi_build(T.splitting));
    EXPECT_EQ(R.area, FieldElement(1));
    EXPECT_EQ(R.stratum(), std::vector<int>{5});
}

TEST(TheoremA, PsiBuildSquareTori) {
    auto X = square_tori();
    auto S = psi_build(X);
    auto T = find_theorem_A(S, 10, 10000);
    FieldElement sum = 0;
    for (const auto& a : T.areas) {
        EXPECT_GT(a, FieldElement(0));
        sum += a;
    }
    EXPECT_EQ(sum, FieldElement(6));
    bool found_v2 = false;
    for (int k : {1, 2}) {
        const Vec2& h = entry(T, k).holonomy;
        found_v2 = found_v2 || h == X.v2 || h == -X.v2;
    }
    EXPECT_TRUE(found_v2);
    EXPECT_NO_THROW(validate_splitting(T.splitting));
}

TEST(TheoremA, CaseIIWithinStatedBound) {
    auto S = build_diagram(integer_case_ii());
    auto T = find_theorem_A(S, 320, 10000);
    FieldElement sum = 0;
    for (const auto& a : T.areas) sum += a;
    EXPECT_EQ(sum, FieldElement(81));
}

TEST(TheoremA, NotFoundWithinTinyBound) {
    auto S = build_diagram(integer_case_ii());
    try {
        find_theorem_A(S, 1, 10000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFoundWithinBound);
    }
    EXPECT_THROW(find_theorem_A(unit_torus(), 10, 1000), Error);
}

TEST(Separation, ChainPairs) {
    auto S = psi_build(square_tori());
    auto T = find_theorem_A(S, 10, 10000);
    EXPECT_EQ(separating_pair_check(S, entry(T, 1), entry(T, 1, true)), Separation::H2_H00);
    EXPECT_EQ(separating_pair_check(S, entry(T, 2), entry(T, 2, true)), Separation::H2_H00);
    EXPECT_EQ(separating_pair_check(S, entry(T, 0), entry(T, 0, true)), Separation::Other);
    EXPECT_EQ(separating_pair_check(S, entry(T, 1, true), entry(T, 1)), Separation::H2_H00);
}

TEST(Separation, NonHomologousPair) {
    auto S = build_diagram(integer_case_ii());
    auto s = saddle_connections(S, 49, 10000);
    const Atlas& A = S.atlas();
    bool tested = false;
    for (size_t i = 0; i < s.entries.size() && !tested; ++i)
        for (size_t j = i + 1; j < s.entries.size() && !tested; ++j) {
            const auto &a = s.entries[i], &b = s.entries[j];
            if (parallel(a.holonomy, b.holonomy) || paths_meet(A, a, b)) continue;
            tested = true;
            try {
                separating_pair_check(S, a, b);
                FAIL();
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::NotSeparating);
            }
        }
    EXPECT_TRUE(tested);
}

TEST(HorizontalSplitting, RectanglesCaseI) {
    auto D = rectangles();
    auto S = build_diagram(D);
    auto X = horizontal_splitting(S, 10000);
    auto R = validate_splitting(X);
    ASSERT_TRUE(R.special);
    EXPECT_EQ(X.T1.area(), FieldElement(1));
    EXPECT_EQ(X.T1.area() + X.T2.area() + X.T3.area(), FieldElement(6));
    // mbar is the ratio of the horizontal moduli of C1 and C2.
    EXPECT_EQ(R.params->mbar, FieldElement(2));
    EXPECT_EQ(validate(psi_build(X)).area, FieldElement(6));
}

TEST(HorizontalSplitting, RejectsCaseII) {
    try {
        horizontal_splitting(build_diagram(integer_case_ii()), 10000);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadDiagram);
    }
}
