#include <gtest/gtest.h>

#include <functional>

#include "fixtures.hpp"
#include "flatstrat/error.hpp"
#include "flatstrat/involution.hpp"
#include "flatstrat/thurston_veech.hpp"
#include "oracle.hpp"

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

struct PublishedRow {
    TVParams p;
    IntPoly Ptilde;
    double alpha, l1, l3;
};

std::vector<PublishedRow> published() {
    return {{{4, 1, 10, 5}, {64, -5, -70, 8}, 8.716407, 0.114726, 1.046891},
            {{5, 2, 10, 3}, {260, -152, -127, 15}, 9.352026, 0.106929, 1.167271},
            {{5, Rational(1, 5), 2, 1}, {15, 83, -115, 25}, 3.643625, 0.274452, 1.242959},
            {{5, Rational(1, 2), 5, 1}, {75, 121, -176, 20}, 7.983332, 0.125261, 1.655175},
            {{2, 1, 6, 1}, {10, 0, -11, 2}, 5.323574, 0.187844, 1.545243},
            {{2, 2, 9, 2}, {76, -53, -34, 8}, 5.175414, 0.193221, 1.175327}};
}

// Six printed decimals, rounded to nearest.
constexpr double kTableTol = 5e-7;

}  // namespace

TEST(TVPolynomial, PublishedRows) {
    for (const auto& r : published()) EXPECT_EQ(tv_polynomial(r.p).Ptilde.to_string(), r.Ptilde.to_string()) << r.p.to_string();
}

TEST(TVPolynomial, ReducibleCase) {
    TVParams p{2, 1, 1, 1};
    EXPECT_EQ(tv_polynomial(p).Ptilde.to_string(), (IntPoly{0, -5, -2, 4}).to_string());
    EXPECT_EQ(kind_of([&] { tv_solve(p); }), ErrorKind::ReduciblePolynomial);
}

TEST(TVPolynomial, RejectsBadParameters) {
    EXPECT_EQ(kind_of([] { tv_polynomial({1, 1, 1, 1}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { tv_polynomial({2, 0, 1, 1}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { tv_polynomial({2, 1, -1, 1}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { tv_polynomial({2, 1, 1, 0}); }), ErrorKind::InvalidInput);
}

TEST(TVSolve, PublishedApproximations) {
    for (const auto& r : published()) {
        auto s = tv_solve(r.p);
        EXPECT_EQ(s.qualifying.size(), 1u);
        EXPECT_NEAR(s.alpha.to_double(), r.alpha, kTableTol) << r.p.to_string();
        EXPECT_NEAR(s.l1.to_double(), r.l1, kTableTol) << r.p.to_string();
        EXPECT_NEAR(s.l3.to_double(), r.l3, kTableTol) << r.p.to_string();
    }
}

// The root and the closed forms recomputed in 100-digit floating point from the geometric relations.
TEST(TVSolve, HighPrecisionOracle) {
    using oracle::Big;
    for (const auto& r : published()) {
        auto s = tv_solve(r.p);
        const Interval& iv = s.qualifying.back();
        Big x = oracle::root(s.Ptilde, iv.lo, iv.hi);
        Big n(r.p.n), a = oracle::to_big(r.p.a), b = oracle::to_big(r.p.b), c(r.p.c);
        Big l1 = 1 / x, h1 = a / x, h3 = n * (x - 1) * (x + a) / ((n - 1) * x) - 1, l3 = h3 / b;
        EXPECT_LT(abs(oracle::value(s.alpha, x) - x), Big("1e-80"));
        EXPECT_LT(abs(oracle::value(s.l3, x) - l3), Big("1e-80"));
        Big c_form = h3 * (1 - l1) / ((h3 + 1) * (l1 + l3 - 1));
        Big d_form = n * n * (h1 + 1) * (1 - l1) / ((h3 + 1) * l1);
        EXPECT_LT(abs(c_form - c), Big("1e-60")) << r.p.to_string();
        EXPECT_LT(abs(d_form - n * (n - 1)), Big("1e-60")) << r.p.to_string();
        EXPECT_GT(x, 1);
        EXPECT_GT(l1 + l3 - 1, 0);
    }
}

TEST(TVBuild, SurfaceInStratumWithInvolution) {
    for (const auto& r : published()) {
        auto s = tv_solve(r.p);
        auto S = tv_build(s);
        auto R = validate(S);
        EXPECT_EQ(R.genus, 3);
        EXPECT_EQ(R.stratum(), std::vector<int>{5});
        EXPECT_EQ(R.area, s.l1 * s.h1 + 1 + s.l3 * s.h3);
        EXPECT_TRUE(is_hyperelliptic_H4(S, 10000).has_value());
    }
}

TEST(TVBuild, HorizontalModuliRatios) {
    auto s = tv_solve({2, 1, 6, 1});
    auto D = decompose(tv_build(s), v(1, 0), 10000);
    auto ord = diagram_order(D);
    ASSERT_TRUE(ord.has_value());
    EXPECT_EQ(ord->model, DiagramModel::CaseI);
    FieldElement m1 = D.cylinders[static_cast<size_t>(ord->order[0])].modulus;
    FieldElement m2 = D.cylinders[static_cast<size_t>(ord->order[1])].modulus;
    FieldElement m3 = D.cylinders[static_cast<size_t>(ord->order[2])].modulus;
    EXPECT_EQ(m1 / m2, FieldElement(1));
    EXPECT_EQ(m3 / m2, FieldElement(6));
}

TEST(TVBuild, DiagramRecognizedWithTwist) {
    auto s = tv_solve({4, 1, 10, 5});
    auto back = recognize_diagram(decompose(tv_build(s), v(1, 0), 10000));
    ASSERT_TRUE(back.has_value());
    auto D = tv_diagram(s);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(back->widths[i], D.widths[i]);
        EXPECT_EQ(back->heights[i], D.heights[i]);
        EXPECT_EQ(back->twists[i], D.twists[i]);
    }
}

TEST(TVVerify, AllCertificatesForEveryRow) {
    for (const auto& r : published()) {
        auto s = tv_solve(r.p);
        auto C = tv_verify(s, tv_build(s), 10000);
        for (const auto& c : C.checks) EXPECT_TRUE(c.ok) << r.p.to_string() << ": " << c.name << ": " << c.detail;
        ASSERT_EQ(C.vertical_moduli.size(), 3u);
        EXPECT_EQ(C.vertical_moduli[1] / C.vertical_moduli[0], FieldElement(r.p.c));
        EXPECT_EQ(C.vertical_moduli[1] / C.vertical_moduli[2], FieldElement(r.p.n * (r.p.n - 1)));
        EXPECT_EQ(minimal_polynomial(C.vertical_moduli[2]).degree(), 3);
    }
}

TEST(TVVerify, SigmaDirectionsCollinear) {
    for (const auto& r : published()) {
        auto s = tv_solve(r.p);
        EXPECT_TRUE(wedge(tv_sigma1(s), tv_sigma2(s)).is_zero());
        EXPECT_EQ(tv_sigma1(s).y, s.h1 + 1);
        EXPECT_EQ(tv_sigma2(s).y, s.h3 + 1);
    }
}

TEST(TVTable, DeterministicAcrossJobs) {
    auto one = render_tv_table(tv_table(10000, 1), true);
    auto three = render_tv_table(tv_table(10000, 3), true);
    EXPECT_EQ(one, three);
    EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 7);
    EXPECT_NE(one.find("2,1,6,1,2X^3 - 11X^2 + 10,5.323574,0.187844,1.545243,PASS"), std::string::npos);
}
