#pragma once

// Random inputs and brute-force counters shared by the unit tests and the acceptance binary.

#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "fixtures.hpp"
#include "flatstrat/cylinders.hpp"
#include "flatstrat/error.hpp"
#include "flatstrat/splitting.hpp"
#include "oracle.hpp"

namespace generators {

using namespace flatstrat;
using fixtures::v;
using fixtures::vq;

inline std::string key(const Vec2& w) {
    auto k = [](const FieldElement& x) { return x.is_rational() ? to_string(x.to_rational()) : x.to_string(); };
    return k(w.x) + "," + k(w.y);
}

// Primitive vectors a u + b w with squared length at most L2, by direct scan of coefficients.
inline std::multiset<std::string> lattice_scan(const Vec2& u, const Vec2& w, const Rational& L2) {
    double A = std::fabs(wedge(u, w).to_double());
    double r = std::sqrt(L2.get_d());
    long bu = static_cast<long>(r * std::sqrt(w.norm2().to_double()) / A) + 2;
    long bw = static_cast<long>(r * std::sqrt(u.norm2().to_double()) / A) + 2;
    std::multiset<std::string> out;
    for (long a = -bu; a <= bu; ++a)
        for (long b = -bw; b <= bw; ++b) {
            if (std::gcd(a, b) != 1) continue;
            Vec2 x = FieldElement(a) * u + FieldElement(b) * w;
            if (x.norm2() <= FieldElement(L2)) out.insert(key(x));
        }
    return out;
}

// Counts the distinct points where the segment t s (0 <= t <= 1) meets the closed geodesic
// through the origin in direction c, by scanning lattice translates of the line R c.
inline int planar_cover_crossings(const Vec2& s, const Vec2& c, const Lattice& L, long box = 12) {
    std::set<Rational> params;
    Rational ws = wedge(s, c).to_rational();
    for (long i = -box; i <= box; ++i)
        for (long j = -box; j <= box; ++j) {
            Vec2 lam = L.at(i, j);
            Rational t = wedge(lam, c).to_rational() / ws;
            if (t >= 0 && t <= 1) params.insert(t);
        }
    return static_cast<int>(params.size());
}

// Random special datum in horizontal form: v1 = (l1, 0), v2 = alpha v1, with twists.
inline SplittingDatum random_special(std::mt19937_64& rng, const RealNumberField& K, bool zero_t2 = false) {
    std::uniform_int_distribution<long> small(1, 6);
    for (;;) {
        FieldElement l1 = FieldElement(Rational(small(rng), small(rng)));
        FieldElement alpha = FieldElement(Rational(small(rng), small(rng)));
        if (!K.is_rationals() && small(rng) % 2 == 0) alpha = alpha * (FieldElement::generator(K) - 1) + 1;
        FieldElement h1 = Rational(small(rng), small(rng)), h2 = Rational(small(rng), small(rng));
        FieldElement t1 = Rational(small(rng) - 1, 7), t2 = zero_t2 ? Rational(0) : Rational(small(rng) - 1, 7);
        Vec2 v1{l1, 0}, v2{alpha * l1, 0}, sum{l1 + alpha * l1, 0};
        MarkedTorus T1(Lattice(v1, Vec2{t1 * l1, h1}), {v(0, 0)});
        MarkedTorus T2(Lattice(sum, Vec2{t2 * sum.x, h2}), {v(0, 0), v1});
        // T3: lattice containing v2 as a primitive vector, marked offset v2.
        FieldElement h3 = Rational(small(rng), small(rng));
        FieldElement s3 = Rational(small(rng) - 1, 5);
        MarkedTorus T3(Lattice(Vec2{2 * v2.x, 0}, Vec2{s3, h3}), {v(0, 0), v2});
        SplittingDatum X{T1, T2, T3, v1, v2};
        try {
            validate_splitting(X);
            return X;
        } catch (const Error&) {
        }
    }
}

// Diagonal rescaling of a horizontal datum to v1 = (1, 0) and total area 1.
inline SplittingDatum normalized(const SplittingDatum& X) {
    FieldElement l1 = X.v1.x;
    FieldElement A = abs(X.T1.area()) + abs(X.T2.area()) + abs(X.T3.area());
    return transformed(X, Mat2{l1.inverse(), 0, 0, l1 / A});
}

inline CylinderDiagram diagram(DiagramModel m, std::vector<FieldElement> l, std::vector<FieldElement> h,
                               std::vector<FieldElement> t) {
    CylinderDiagram D;
    D.model = m;
    for (int i = 0; i < 3; ++i) {
        D.widths[i] = l[static_cast<size_t>(i)];
        D.heights[i] = h[static_cast<size_t>(i)];
        D.twists[i] = t[static_cast<size_t>(i)];
    }
    return D;
}

// Random valid diagram; widths and heights in K when quadratic is set, twists rational in [0, 1).
inline CylinderDiagram random_diagram(std::mt19937_64& rng, DiagramModel m, bool quadratic) {
    std::uniform_int_distribution<long> num(1, 9), den(1, 4), tw(0, 6);
    auto K = fixtures::sqrt2();
    auto r = FieldElement::generator(K);
    for (;;) {
        auto q = [&] { return FieldElement(Rational(num(rng), den(rng))); };
        auto w = [&] { return quadratic ? q() + FieldElement(Rational(num(rng), 7)) * r : q(); };
        auto t = [&] { return FieldElement(Rational(tw(rng), 7)); };
        CylinderDiagram D = diagram(m, {w(), w(), w()}, {w(), q(), w()}, {t(), t(), t()});
        try {
            check_diagram(D);
            return D;
        } catch (const Error&) {
        }
    }
}

}  // namespace generators
