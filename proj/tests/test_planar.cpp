#include <gtest/gtest.h>

#include <random>
#include <set>

#include "flatstrat/error.hpp"
#include "flatstrat/planar.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace flatstrat;
using generators::planar_cover_crossings;

namespace {

RealNumberField sqrt2() { return RealNumberField::create(IntPoly{-2, 0, 1}, 1, 2); }

Vec2 v(long x, long y) { return {FieldElement(x), FieldElement(y)}; }
Vec2 vq(Rational x, Rational y) { return {FieldElement(x), FieldElement(y)}; }

// Brute force: is w parallel to p u + q v for some |p|, |q| <= 200, not both zero?
bool parallel_to_small_lattice_vector(const Vec2& w, const Lattice& L, long bound = 200) {
    // Coordinatewise over Q: p a + q b = 0 in the power basis.
    FieldElement a = wedge(w, L.u), b = wedge(w, L.v);
    size_t d = std::max(a.coords().size(), b.coords().size());
    auto co = [&](const FieldElement& x, size_t i) { return i < x.coords().size() ? x.coords()[i] : Rational(0); };
    for (long p = -bound; p <= bound; ++p)
        for (long q = 0; q <= bound; ++q) {
            if (p == 0 && q == 0) continue;
            bool zero = true;
            for (size_t i = 0; i < d && zero; ++i) zero = p * co(a, i) + q * co(b, i) == 0;
            if (zero) return true;
        }
    return false;
}

}  // namespace

TEST(Wedge, Examples) {
    EXPECT_EQ(wedge(v(1, 0), v(0, 1)), FieldElement(1));
    EXPECT_TRUE(wedge(v(2, 3), v(4, 6)).is_zero());
    auto K = sqrt2();
    auto r = FieldElement::generator(K);
    EXPECT_EQ(wedge({r / 2, 0}, {0, Rational(1, 4)}), r / 8);
}

TEST(Wedge, BilinearAndAntisymmetric) {
    std::mt19937_64 rng(3);
    auto K = sqrt2();
    for (int i = 0; i < 200; ++i) {
        Vec2 a{oracle::random_element(rng, K), oracle::random_element(rng, K)};
        Vec2 b{oracle::random_element(rng, K), oracle::random_element(rng, K)};
        Vec2 c{oracle::random_element(rng, K), oracle::random_element(rng, K)};
        auto s = oracle::random_element(rng, K);
        EXPECT_EQ(wedge(a, b), -wedge(b, a));
        EXPECT_EQ(wedge(s * a + c, b), s * wedge(a, b) + wedge(c, b));
    }
}

TEST(LatticeCoords, Examples) {
    auto [s, t] = lattice_coords(v(1, 1), Lattice(v(1, 0), v(0, 1)));
    EXPECT_EQ(s, FieldElement(1));
    EXPECT_EQ(t, FieldElement(1));
    auto [s2, t2] = lattice_coords(v(3, 0), Lattice(v(2, 0), v(1, 1)));
    EXPECT_EQ(s2, FieldElement(Rational(3, 2)));
    EXPECT_TRUE(t2.is_zero());
    EXPECT_THROW(Lattice(v(1, 2), v(2, 4)), Error);
}

TEST(Primitive, Examples) {
    Lattice Z2(v(1, 0), v(0, 1));
    EXPECT_TRUE(is_primitive(v(1, 0), Z2));
    EXPECT_FALSE(is_primitive(v(2, 0), Z2));
    EXPECT_TRUE(is_primitive(v(2, 0), Lattice(v(2, 0), v(0, 1))));
    EXPECT_FALSE(is_primitive(vq(Rational(1, 2), 0), Z2));
}

TEST(BasisCompletion, CompletesPrimitiveVectors) {
    Lattice L(v(2, 1), v(1, 3));
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 0}, {3, 2}, {-5, 7}, {0, -1}, {13, 8}}) {
        Vec2 w0 = L.at(p, q);
        Vec2 w = basis_completion(w0, L);
        EXPECT_EQ(wedge(w0, w), L.covolume());
        EXPECT_TRUE(same_lattice(Lattice(w0, w), L));
    }
    try {
        basis_completion(L.at(2, 4), L);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPrimitive);
    }
    try {
        basis_completion(vq(Rational(1, 3), 0), L);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInLattice);
    }
}

TEST(Generic, Examples) {
    auto K = sqrt2();
    auto r = FieldElement::generator(K);
    Lattice Z2(v(1, 0), v(0, 1));
    EXPECT_FALSE(is_generic(v(1, 0), Z2));
    EXPECT_TRUE(is_generic({r, 1}, Z2));
    EXPECT_FALSE(is_generic(v(1, 1), Lattice(v(2, 0), v(1, 1))));
    EXPECT_THROW(is_generic(v(0, 0), Z2), Error);
}

// Heights are kept small so that any rational wedge ratio has numerator and denominator
// within the brute-force box; the oracle is then exact on both rational and quadratic inputs.
TEST(Generic, AgreesWithBruteForceSearch) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> small(-3, 3), half(-6, 6), coin(0, 1);
    auto K = sqrt2();
    auto r = FieldElement::generator(K);
    int checked = 0;
    while (checked < 500) {
        Vec2 u = v(small(rng), small(rng)), w = v(small(rng), small(rng));
        if (wedge(u, w).is_zero()) continue;
        Lattice L(u, w);
        Vec2 x = vq(Rational(half(rng), 2), Rational(half(rng), 2));
        if (coin(rng)) x = Vec2{x.x + FieldElement(small(rng)) * r, x.y + FieldElement(small(rng)) * r};
        if (x.is_zero()) continue;
        EXPECT_EQ(is_generic(x, L), !parallel_to_small_lattice_vector(x, L)) << x.to_string();
        ++checked;
    }
}

TEST(Generic, InvariantUnderRationalLinearMaps) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> small(-4, 4);
    auto K = sqrt2();
    auto r = FieldElement::generator(K);
    for (int i = 0; i < 200; ++i) {
        Mat2 M{Rational(small(rng)), Rational(small(rng)), Rational(small(rng)), Rational(small(rng))};
        if (M.det().is_zero()) continue;
        Lattice L(v(1, small(rng)), v(0, 1 + (small(rng) & 3)));
        Vec2 x{FieldElement(small(rng)) + FieldElement(small(rng)) * r, FieldElement(small(rng))};
        if (x.is_zero()) continue;
        Lattice ML(M.apply(L.u), M.apply(L.v));
        EXPECT_EQ(is_generic(M.apply(x), ML), is_generic(x, L));
    }
}

TEST(UniqueIntersection, Examples) {
    MarkedTorus T(Lattice(v(1, 0), v(0, 1)), {vq(Rational(1, 2), Rational(1, 2))});
    EXPECT_TRUE(unique_intersection(vq(0, Rational(1, 2)), v(1, 0), T));
    EXPECT_FALSE(unique_intersection(vq(Rational(1, 3), Rational(3, 2)), v(1, 0), T));
    EXPECT_FALSE(unique_intersection(vq(Rational(3, 2), Rational(1, 2)), v(0, 1), T));
    EXPECT_THROW(unique_intersection(v(2, 0), v(1, 0), T), Error);
    Lattice L(v(1, 0), v(0, 1));
    EXPECT_GE(planar_cover_crossings(vq(Rational(1, 3), Rational(3, 2)), v(1, 0), L), 2);
    EXPECT_GE(planar_cover_crossings(vq(Rational(3, 2), Rational(1, 2)), v(0, 1), L), 2);
}

TEST(UniqueIntersection, AgreesWithPlanarCoverCounter) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> ent(-4, 4), cq(-3, 3);
    int checked = 0;
    while (checked < 200) {
        Lattice L = Lattice(v(1, 0), v(0, 1));
        Vec2 u = v(ent(rng), ent(rng)), w = v(ent(rng), ent(rng));
        if (wedge(u, w).is_zero()) continue;
        L = Lattice(u, w);
        long p = cq(rng), q = cq(rng);
        if (std::gcd(p, q) != 1) continue;
        Vec2 c = L.at(p, q);
        Vec2 s = vq(oracle::random_rational(rng, 20, 5), oracle::random_rational(rng, 20, 5));
        if (parallel(s, c) || in_lattice(s, L)) continue;
        MarkedTorus T(L, {s});
        EXPECT_EQ(unique_intersection(s, c, T), planar_cover_crossings(s, c, L) == 1);
        ++checked;
    }
}
