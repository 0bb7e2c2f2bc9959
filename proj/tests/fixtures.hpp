#pragma once

#include "flatstrat/surface.hpp"

namespace fixtures {

using namespace flatstrat;

inline RealNumberField sqrt2() { return RealNumberField::create(IntPoly{-2, 0, 1}, 1, 2); }

inline Vec2 v(long x, long y) { return {FieldElement(x), FieldElement(y)}; }
inline Vec2 vq(Rational x, Rational y) { return {FieldElement(x), FieldElement(y)}; }

inline TranslationSurface unit_torus() {
    Polygon sq{{v(0, 0), v(1, 0), v(1, 1), v(0, 1)}};
    return TranslationSurface({sq}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}});
}

// Parallelogram torus with basis u, w.
inline TranslationSurface torus(const Vec2& u, const Vec2& w) {
    Polygon P{{v(0, 0), u, u + w, w}};
    if (wedge(u, w).sign() < 0) P = Polygon{{v(0, 0), w, u + w, u}};
    return TranslationSurface({P}, {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}});
}

// The single 12-gon with coordinates in Q(sqrt 2), area 1.
inline TranslationSurface dodecagon() {
    auto K = sqrt2();
    FieldElement r = FieldElement::generator(K) / 4;  // sqrt(2)/4
    FieldElement X[4] = {FieldElement(K, 0), r, 1 - r, 1 + r};
    FieldElement Y[6] = {FieldElement(K, 0), r, Rational(1, 2), Rational(1, 2) + r, 1, Rational(5, 4)};
    auto p = [&](int i, int j) { return Vec2{X[i], Y[j]}; };
    // Drawn grid: x in {0, 3, 6, 11}, y in {0, 3, 4, 7, 8, 10}.
    Polygon P{{p(2, 4), p(1, 4), p(1, 2), p(0, 3), p(0, 1), p(1, 0), p(2, 0), p(2, 2), p(3, 2), p(3, 4), p(3, 5),
               p(2, 5)}};
    return TranslationSurface({P}, {{{0, 11}, {0, 9}},
                                    {{0, 1}, {0, 8}},
                                    {{0, 3}, {0, 6}},
                                    {{0, 2}, {0, 4}},
                                    {{0, 0}, {0, 5}},
                                    {{0, 10}, {0, 7}}});
}

}  // namespace fixtures
