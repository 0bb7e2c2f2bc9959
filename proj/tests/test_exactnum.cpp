#include <gtest/gtest.h>

#include "flatstrat/error.hpp"
#include "flatstrat/field.hpp"
#include "oracle.hpp"

using namespace flatstrat;

namespace {

RealNumberField sqrt2() { return RealNumberField::create(IntPoly{-2, 0, 1}, 1, 2); }
RealNumberField row1() { return RealNumberField::create(IntPoly{64, -5, -70, 8}, 8, 9); }

FieldElement el(const RealNumberField& K, std::vector<Rational> c) { return FieldElement(K, std::move(c)); }

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(parse_rational("1.41"), Rational(141, 100));
    EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(FieldArithmetic, DefiningRelationOfSqrt2) {
    auto K = sqrt2();
    auto a = FieldElement::generator(K);
    EXPECT_TRUE((a * a - 2).is_zero());
    EXPECT_EQ((1 + a) * (1 - a), FieldElement(-1));
}

TEST(FieldArithmetic, InverseInCubicField) {
    auto K = row1();
    auto a = FieldElement::generator(K);
    auto inv = a.inverse();
    // Frozen from the extended Euclidean algorithm: (70a - 8a^2 + 5)/64.
    EXPECT_EQ(inv, el(K, {Rational(5, 64), Rational(70, 64), Rational(-8, 64)}));
    EXPECT_EQ(a * inv, FieldElement(1));
}

TEST(FieldArithmetic, Errors) {
    auto K = sqrt2();
    auto L = row1();
    EXPECT_THROW(FieldElement(K, Rational(0)).inverse(), Error);
    EXPECT_THROW(FieldElement(1) / FieldElement(0), Error);
    try {
        auto s = FieldElement::generator(K) + FieldElement::generator(L);
        (void)s;
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
    }
}

TEST(FieldArithmetic, RandomizedAxioms) {
    std::mt19937_64 rng(7);
    for (auto K : {sqrt2(), row1()}) {
        for (int i = 0; i < 200; ++i) {
            auto x = oracle::random_element(rng, K), y = oracle::random_element(rng, K),
                 z = oracle::random_element(rng, K);
            EXPECT_EQ((x * y) * z, x * (y * z));
            EXPECT_EQ(x * (y + z), x * y + x * z);
            EXPECT_EQ(x + (y - x), y);
            if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), FieldElement(1));
        }
    }
}

TEST(FieldArithmetic, RationalsEmbeddedAgreeWithPureRationals) {
    std::mt19937_64 rng(11);
    auto K = row1();
    for (int i = 0; i < 200; ++i) {
        Rational p = oracle::random_rational(rng, 1000, 97), q = oracle::random_rational(rng, 1000, 97);
        FieldElement a(K, p), b(K, q);
        EXPECT_EQ((a + b).coords()[0], p + q);
        EXPECT_EQ((a * b).coords()[0], p * q);
        EXPECT_TRUE((a * b).is_rational());
        if (q != 0) EXPECT_EQ((a / b).coords()[0], p / q);
        EXPECT_EQ(a.sign(), sgn(p));
    }
}

TEST(Sign, Examples) {
    auto K = sqrt2();
    auto a = FieldElement::generator(K);
    EXPECT_EQ(FieldElement(K, Rational(0)).sign(), 0);
    EXPECT_EQ((a - Rational(141, 100)).sign(), 1);
    auto b = FieldElement::generator(row1());
    EXPECT_EQ((b - Rational(872, 100)).sign(), -1);
}

TEST(Sign, AgreesWithHighPrecisionOracle) {
    std::mt19937_64 rng(2024);
    for (auto K : {sqrt2(), row1()}) {
        auto iv = K.isolating_interval();
        oracle::Big g = oracle::root(K.minpoly(), iv.lo, iv.hi);
        for (int i = 0; i < 500; ++i) {
            auto x = oracle::random_element(rng, K, 30, 30);
            if (x.is_zero()) continue;
            oracle::Big v = oracle::value(x, g);
            int expected = v > 0 ? 1 : -1;
            EXPECT_EQ(x.sign(), expected) << x.to_string();
        }
    }
}

TEST(Sign, NearCancellation) {
    // 99/70 and 140/99 are convergents of sqrt(2) on either side.
    auto a = FieldElement::generator(sqrt2());
    EXPECT_EQ((a - Rational(99, 70)).sign(), -1);   // 99^2 = 9801 > 2 * 70^2
    EXPECT_EQ((a - Rational(140, 99)).sign(), 1);   // 140^2 = 19600 < 2 * 99^2
    EXPECT_EQ((a * 1000000 - Rational(1414213)).sign(), 1);
    EXPECT_EQ((a * 1000000 - Rational(1414214)).sign(), -1);
}

TEST(IsRational, Examples) {
    auto K = sqrt2();
    EXPECT_TRUE(FieldElement(K, Rational(3, 7)).is_rational());
    EXPECT_FALSE(FieldElement::generator(K).is_rational());
}

TEST(QLinearIndependent, Examples) {
    auto K = sqrt2();
    auto a = FieldElement::generator(K);
    EXPECT_TRUE(q_linear_independent({FieldElement(K, Rational(1)), a}).independent);
    auto dep = q_linear_independent({FieldElement(K, Rational(1)), a, 1 + a});
    ASSERT_FALSE(dep.independent);
    EXPECT_EQ(dep.witness, (std::vector<Integer>{1, 1, -1}));
    auto b = FieldElement::generator(row1());
    EXPECT_TRUE(q_linear_independent({b, FieldElement(1), b.inverse()}).independent);
    EXPECT_TRUE(q_linear_independent({}).independent);
}

TEST(QLinearIndependent, WitnessAnnihilatesInputs) {
    std::mt19937_64 rng(5);
    auto K = row1();
    for (int i = 0; i < 100; ++i) {
        auto x = oracle::random_element(rng, K), y = oracle::random_element(rng, K);
        Rational p = oracle::random_rational(rng, 9, 5), q = oracle::random_rational(rng, 9, 5);
        std::vector<FieldElement> xs{x, y, x * p + y * q, oracle::random_element(rng, K)};
        auto r = q_linear_independent(xs);
        ASSERT_FALSE(r.independent);
        FieldElement sum(K, Rational(0));
        bool nonzero = false;
        for (size_t k = 0; k < xs.size(); ++k) {
            sum += xs[k] * Rational(r.witness[k]);
            nonzero = nonzero || r.witness[k] != 0;
        }
        EXPECT_TRUE(nonzero);
        EXPECT_TRUE(sum.is_zero());
        xs.pop_back();
        xs.pop_back();
        if (!(x.is_zero() || y.is_zero()))
            EXPECT_EQ(q_linear_independent(xs).independent, !(x * y.inverse()).is_rational());
    }
}

TEST(IsolateRealRoots, Examples) {
    auto r = isolate_real_roots(IntPoly{-2, 0, 1});
    ASSERT_EQ(r.size(), 2u);
    EXPECT_TRUE(r[0].hi < 0 && r[1].lo > 0);
    auto neg = refine_root(IntPoly{-2, 0, 1}.to_rat(), r[0], Rational(1, 10000));
    EXPECT_TRUE(neg.lo < Rational(-14142, 10000) && neg.hi > Rational(-14143, 10000));
    auto c = isolate_real_roots(IntPoly{64, -5, -70, 8});
    ASSERT_EQ(c.size(), 3u);
    auto top = refine_root(IntPoly{64, -5, -70, 8}.to_rat(), c[2], Rational(1, 1000000000));
    EXPECT_TRUE(top.contains(Rational(8716407, 1000000)) || abs(top.mid() - Rational(8716407, 1000000)) < Rational(1, 1000000));
    auto r5 = isolate_real_roots(IntPoly{10, 0, -11, 2});
    ASSERT_EQ(r5.size(), 3u);
    auto t5 = refine_root(IntPoly{10, 0, -11, 2}.to_rat(), r5.back(), Rational(1, 1000000000));
    EXPECT_LT(abs(t5.mid() - Rational(5323574, 1000000)), Rational(1, 1000000));
}

TEST(IsolateRealRoots, CountsMatchSturmAndOracle) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-20, 20);
    for (int it = 0; it < 200; ++it) {
        std::vector<Integer> c;
        int deg = 1 + it % 5;
        for (int i = 0; i <= deg; ++i) c.emplace_back(coef(rng));
        if (c.back() == 0) c.back() = 1;
        IntPoly p(c);
        auto ivs = isolate_real_roots(p);
        RatPoly rp = p.to_rat();
        RatPoly sq = rp / gcd(rp, rp.derivative());
        EXPECT_EQ(static_cast<int>(ivs.size()), count_real_roots(sturm_sequence(sq)));
        for (size_t i = 0; i < ivs.size(); ++i) {
            if (i > 0) EXPECT_LT(ivs[i - 1].hi, ivs[i].lo);
            const auto& iv = ivs[i];
            if (iv.lo == iv.hi)
                EXPECT_EQ(sq.sign_at(iv.lo), 0);
            else
                EXPECT_LT(sq.sign_at(iv.lo) * sq.sign_at(iv.hi), 0);
        }
    }
}

TEST(IsolateRealRoots, RationalRootsAtMidpoints) {
    // Roots 0 and +-1 coincide with bisection midpoints of the power-of-two bound.
    auto r = isolate_real_roots(IntPoly{0, -1, 0, 1});
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[1].lo, 0);
    EXPECT_EQ(r[1].hi, 0);
}

TEST(IrreducibleCubic, Examples) {
    EXPECT_TRUE(is_irreducible_cubic(IntPoly{64, -5, -70, 8}));
    EXPECT_FALSE(is_irreducible_cubic(IntPoly{0, -5, -2, 4}));
    EXPECT_TRUE(is_irreducible_cubic(IntPoly{-2, 0, 0, 1}));
    EXPECT_FALSE(is_irreducible_cubic(IntPoly{-1, 1, -1, 1}));  // (X-1)(X^2+1)
    try {
        is_irreducible_cubic(IntPoly{1, 0, 0, 0, 1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDegree);
    }
}

TEST(Approximate, Examples) {
    auto a = FieldElement::generator(sqrt2());
    EXPECT_EQ(a.approximate(6), "1.414214");
    auto b = FieldElement::generator(row1());
    EXPECT_EQ(b.approximate(6), "8.716407");
    double v = std::stod(b.inverse().approximate(6));
    EXPECT_LT(std::abs(v * 8.716407 - 1), 1e-5);
    EXPECT_EQ(FieldElement(Rational(-1, 2)).approximate(0), "-1");
    EXPECT_EQ(FieldElement(Rational(1, 8)).approximate(2), "0.13");
    EXPECT_EQ((-a).approximate(3), "-1.414");
}

TEST(Approximate, CorrectlyRoundedAgainstOracle) {
    std::mt19937_64 rng(3);
    auto K = row1();
    auto iv = K.isolating_interval();
    oracle::Big g = oracle::root(K.minpoly(), iv.lo, iv.hi);
    for (int i = 0; i < 100; ++i) {
        auto x = oracle::random_element(rng, K, 20, 9);
        oracle::Big v = oracle::value(x, g);
        oracle::Big scaled = boost::multiprecision::round(v * 1000000000);
        std::string s = x.approximate(9);
        std::string digits;
        for (char ch : s)
            if (ch != '.') digits.push_back(ch);
        EXPECT_EQ(oracle::Big(digits), scaled) << s;
    }
}

TEST(FieldConstruction, Validation) {
    EXPECT_THROW(RealNumberField::create(IntPoly{-2, 0, 1}, -2, 2), Error);  // two roots
    EXPECT_THROW(RealNumberField::create(IntPoly{1, -2, 1}, 0, 2), Error);  // not squarefree
    EXPECT_THROW(RealNumberField::create(IntPoly{-2, 0, 0, 0, 1}, 1, 2), Error);  // needs assertion
    auto K4 = RealNumberField::create(IntPoly{-2, 0, 0, 0, 1}, 1, 2, true);
    EXPECT_FALSE(K4.irreducibility_verified());
    auto r = FieldElement::generator(K4);
    EXPECT_EQ((r * r * r * r).to_rational(), 2);
    EXPECT_TRUE(sqrt2().same_as(RealNumberField::create(IntPoly{-4, 0, 2}, Rational(5, 4), Rational(3, 2))));
}

TEST(MinimalPolynomial, ElementsOfCubicField) {
    auto K = row1();
    auto a = FieldElement::generator(K);
    EXPECT_EQ(minimal_polynomial(a), (IntPoly{64, -5, -70, 8}));
    EXPECT_EQ(minimal_polynomial(FieldElement(K, Rational(3, 2))), (IntPoly{-3, 2}));
    EXPECT_EQ(minimal_polynomial(FieldElement::generator(sqrt2()) + 1), (IntPoly{-1, -2, 1}));
}
