#include "flatstrat/splitting.hpp"

#include <deque>
#include <functional>
#include <utility>

#include "flatstrat/error.hpp"

namespace flatstrat {

namespace {

FieldElement ratio(const Vec2& num, const Vec2& den) {
    return den.x.is_zero() ? num.y / den.y : num.x / den.x;
}

FieldElement fe(const Integer& z) { return FieldElement(Rational(z)); }

// v ≡ ±o modulo L.
bool joins(const Vec2& v, const Vec2& o, const Lattice& L) { return in_lattice(v - o, L) || in_lattice(v + o, L); }

FieldElement twist(const Vec2& v, const Lattice& L) {
    Vec2 w = basis_completion(v, L);
    if (w.y.sign() < 0) w = -w;
    return (w.x / abs(v.x)).frac();
}

Lattice gauss_reduced(Lattice L) {
    Vec2 a = L.u, b = L.v;
    if (b.norm2() < a.norm2()) std::swap(a, b);
    while (true) {
        FieldElement m = dot(a, b) / a.norm2();
        Integer k = (m + Rational(1, 2)).floor();
        b = b - fe(k) * a;
        if (b.norm2() >= a.norm2()) break;
        std::swap(a, b);
    }
    return Lattice(a, b);
}

// Primitive E of L with |E∧s| < covolume, found by a ring search over a reduced basis.
Vec2 short_transversal(const Vec2& s, const Lattice& L) {
    Lattice R = gauss_reduced(L);
    FieldElement A = L.covolume();
    for (long r = 1; r <= 100000; ++r)
        for (long a = -r; a <= r; ++a)
            for (long b = -r; b <= r; ++b) {
                if (std::max(std::labs(a), std::labs(b)) != r) continue;
                Integer g;
                Integer ia = a, ib = b;
                mpz_gcd(g.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
                if (g != 1) continue;
                Vec2 E = R.at(ia, ib);
                if (abs(wedge(E, s)) < A) return E;
            }
    fail(ErrorKind::Internal, "no short transversal for the slit");
}

// Hexagon 0, s, E, E+F, s+F, F of the torus L slit along s from the origin.
Polygon slit_hexagon(const Vec2& s, const Lattice& L) {
    FieldElement A = L.covolume();
    Vec2 E = short_transversal(s, L);
    if (wedge(E, s).is_zero() && dot(E, s).sign() < 0) E = -E;
    Vec2 F = basis_completion(E, L);
    FieldElement s0 = wedge(s, F) / A, t = wedge(E, s) / A;
    if (!t.is_zero()) {
        FieldElement m = abs(t);
        Integer j = (s0 / m).floor();
        FieldElement r = s0 - fe(j) * m;
        if (r.is_zero()) {
            j -= 1;
            r = m;
        }
        // s0 - k t = r
        Integer k = t.sign() > 0 ? j : Integer(-j);
        F = F + fe(k) * E;
    }
    Polygon H{{Vec2{0, 0}, s, E, E + F, s + F, F}};
    require(polygon_is_simple(H) && H.area().sign() > 0, ErrorKind::Internal, "slit torus polygon is not simple");
    return H;
}

void attempt(std::vector<NamedCheck>& checks, const std::string& name, const std::function<bool()>& f) {
    bool ok = false;
    std::string note;
    try {
        ok = f();
    } catch (const Error& e) {
        note = std::string(" (") + e.what() + ")";
    }
    checks.push_back({name + note, ok});
}

bool all_checks(const std::vector<NamedCheck>& c) {
    for (const auto& x : c)
        if (!x.ok) return false;
    return !c.empty();
}

// Fractions of (0, 1) level by level in the Stern–Brocot tree.
class SternBrocot {
public:
    SternBrocot() { q_.push_back({0, 1, 1, 1}); }
    Rational next() {
        auto [a, b, c, d] = q_.front();
        q_.pop_front();
        long m = a + c, n = b + d;
        q_.push_back({a, b, m, n});
        q_.push_back({m, n, c, d});
        return Rational(m, n);
    }

private:
    struct Node {
        long a, b, c, d;
    };
    std::deque<Node> q_;
};

struct Normalized {
    FieldElement A1, A2, A3, alpha0, h1, h2;
};

Normalized check_normalized(const SplittingDatum& X, const SplittingReport& R) {
    require(X.v1 == Vec2(1, 0) && X.v2.y.is_zero() && X.v2.x.sign() > 0, ErrorKind::NeedsHorizontalForm,
            "expected v1 = (1,0) and v2 = (alpha0, 0)");
    const auto& P = *R.params;
    require(P.A1 + P.A2 + P.A3 == FieldElement(1), ErrorKind::InvalidInput, "total area is not 1");
    return {P.A1, P.A2, P.A3, X.v2.x, P.A1, P.A2 / (P.alpha + 1)};
}

}  // namespace

bool segment_is_clear(const Vec2& s, const Lattice& L) {
    auto [a, b] = lattice_coords(s, L);
    FieldElement mu;
    if (b.is_zero()) mu = abs(a);
    else if (a.is_zero()) mu = abs(b);
    else {
        FieldElement r = a / b;
        if (!r.is_rational()) return true;
        mu = abs(a / FieldElement(Rational(r.to_rational().get_num())));
    }
    return mu <= FieldElement(1);
}

SplittingReport validate_splitting(const SplittingDatum& X) {
    require(X.T1.marked_count() == 1, ErrorKind::InvalidInput, "T1 must carry one marked point");
    require(X.T2.marked_count() == 2 && X.T3.marked_count() == 2, ErrorKind::InvalidInput,
            "T2 and T3 must carry two marked points");
    const Lattice &L1 = X.T1.lattice, &L2 = X.T2.lattice, &L3 = X.T3.lattice;
    const Vec2 &o2 = X.T2.marked_offsets[1], &o3 = X.T3.marked_offsets[1];

    require(in_lattice(X.v1, L1), ErrorKind::NotInLattice, "a) v1 is not in the lattice of T1");
    require(is_primitive(X.v1, L1), ErrorKind::NotPrimitive, "a) v1 is not primitive in the lattice of T1");
    require(joins(X.v1, o2, L2) && segment_is_clear(X.v1, L2), ErrorKind::NotInLattice,
            "a) v1 does not realize a segment between the marked points of T2");
    require(joins(X.v2, o2, L2) && segment_is_clear(X.v2, L2), ErrorKind::NotInLattice,
            "b) v2 does not realize a segment between the marked points of T2");
    require(joins(X.v2, o3, L3) && segment_is_clear(X.v2, L3), ErrorKind::NotInLattice,
            "b) v2 does not realize a segment between the marked points of T3");

    Vec2 v = X.v1 + X.v2;
    require(in_lattice(v, L2), ErrorKind::NotInLattice, "c) v1 + v2 is not in the lattice of T2");
    require(is_primitive(v, L2), ErrorKind::NotPrimitive, "c) v1 + v2 is not primitive in the lattice of T2");
    Vec2 w0 = basis_completion(v, L2);
    FieldElement A2 = wedge(v, w0);
    FieldElement c0 = wedge(X.v1, w0), c = wedge(X.v1, v);
    // v1∧(w0 + k v) must lie in (0, A2); v2∧w then lies there too.
    std::optional<Vec2> w;
    if (c.is_zero()) {
        if (c0.sign() > 0 && c0 < A2) w = w0;
    } else {
        FieldElement lo = -c0 / c, hi = (A2 - c0) / c;
        if (hi < lo) std::swap(lo, hi);
        Integer k = lo.floor() + 1;
        if (fe(k) < hi) w = w0 + fe(k) * v;
    }
    require(w.has_value(), ErrorKind::WedgeBoundViolated, "c) no completion w of v1 + v2 with 0 < |vi∧w| < Aa(T2)");

    SplittingReport R;
    R.w = *w;
    R.special = parallel(X.v1, X.v2);
    if (R.special) {
        SpecialSplittingParams P;
        P.A1 = X.T1.area();
        P.A2 = X.T2.area();
        P.A3 = X.T3.area();
        P.alpha = ratio(X.v2, X.v1);
        P.m1 = P.A1 / X.v1.norm2();
        P.m2 = P.A2 / v.norm2();
        P.mbar = P.m1 / P.m2;
        require(P.mbar == P.A1 / P.A2 * (1 + P.alpha) * (1 + P.alpha), ErrorKind::Internal, "moduli ratio identity");
        if (X.v1.y.is_zero()) {
            P.t1 = twist(X.v1, L1);
            P.t2 = twist(v, L2);
        }
        R.params = P;
    }
    return R;
}

SplittingDatum transformed(const SplittingDatum& X, const Mat2& M) {
    auto T = [&](const MarkedTorus& t) {
        std::vector<Vec2> off;
        for (const auto& o : t.marked_offsets) off.push_back(M.apply(o));
        return MarkedTorus(Lattice(M.apply(t.lattice.u), M.apply(t.lattice.v)), off);
    };
    return {T(X.T1), T(X.T2), T(X.T3), M.apply(X.v1), M.apply(X.v2)};
}

Mat2 horizontal_normal_form(const Vec2& v1) {
    require(!v1.is_zero(), ErrorKind::InvalidInput, "zero vector");
    Mat2 Q;
    Vec2 u = v1;
    if (u.x.is_zero()) {
        Q = Mat2{0, 1, -1, 0};
        u = Q.apply(u);
    }
    if (u.x.sign() < 0) {
        Q = Mat2{-1, 0, 0, -1} * Q;
        u = -u;
    }
    return Mat2{1, 0, -u.y / u.x, 1} * Q;
}

TranslationSurface psi_build(const SplittingDatum& X) {
    SplittingReport R = validate_splitting(X);
    const Vec2 &v1 = X.v1, &v2 = X.v2, &w = R.w;
    Vec2 v = v1 + v2, o{0, 0};
    Vec2 u1 = basis_completion(v1, X.T1.lattice);
    Polygon C1{{o, v1, v1 + u1, u1}};
    Polygon P1{{o, v1, v1 + w, w}};
    Polygon P2{{v1, v, v + w, v1 + w}};
    Polygon H = slit_hexagon(v2, X.T3.lattice);
    std::vector<std::pair<EdgeRef, EdgeRef>> g = {
        {{0, 1}, {0, 3}},  // C1 sides
        {{1, 1}, {2, 3}},  // C2 interior seam
        {{2, 1}, {1, 3}},  // C2 sides
        {{3, 1}, {3, 3}},  // C3 torus sides
        {{3, 2}, {3, 5}},
        {{0, 0}, {1, 2}},  // δ1 : C1 bottom to the s1 copy on top of C2
        {{0, 2}, {1, 0}},  // C1 top to s1 on the bottom of C2
        {{3, 0}, {2, 2}},  // δ3 : slit side to the s2 copy on top of C2
        {{3, 4}, {2, 0}},
    };
    return TranslationSurface({C1, P1, P2, H}, g);
}

SpecialSplittingParams moduli_and_twists(const SplittingDatum& X) {
    SplittingReport R = validate_splitting(X);
    require(R.special, ErrorKind::NotSpecial, "v1 and v2 are not parallel");
    require(X.v1.y.is_zero(), ErrorKind::NeedsHorizontalForm, "v1 is not horizontal");
    return *R.params;
}

DualSplittingDatum dual_splitting(const SplittingDatum& X, const Vec2& w1_in, const std::optional<Vec2>& w2_in) {
    validate_splitting(X);
    const Lattice &L1 = X.T1.lattice, &L2 = X.T2.lattice, &L3 = X.T3.lattice;
    Vec2 v = X.v1 + X.v2;
    require(is_primitive(w1_in, L3), ErrorKind::NotPrimitive, "w1 is not primitive in the lattice of T3");
    FieldElement c = wedge(w1_in, X.v2);
    require(!c.is_zero() && abs(c) < X.T3.area(), ErrorKind::WedgeBoundViolated, "need 0 < |w1∧v2| < Aa(T3)");
    Vec2 w1 = w1_in, w2;
    if (w2_in) {
        w2 = *w2_in;
        require(in_lattice(w2, L2) && abs(wedge(v, w2)) == X.T2.area(), ErrorKind::NotPrimitive,
                "w2 is not a completion of v1 + v2 in the lattice of T2");
        require(wedge(w1, X.v2).sign() == wedge(w2, X.v2).sign(), ErrorKind::WedgeBoundViolated,
                "w1 and w2 cross v2 with opposite orientations");
    } else {
        w2 = basis_completion(v, L2);
        if (wedge(w2, X.v2).sign() != c.sign()) w2 = -w2;
    }
    Vec2 u1 = basis_completion(X.v1, L1);
    if (wedge(X.v1, u1).sign() != wedge(X.v1, w2).sign()) u1 = -u1;
    Vec2 y = basis_completion(w1, L3);
    if (wedge(w1, y).sign() != c.sign()) y = -y;
    Vec2 u1hat = y - X.v2;

    DualSplittingDatum D;
    D.w1 = w1;
    D.w2 = w2;
    D.T1 = MarkedTorus(Lattice(w1, u1hat));
    D.T2 = MarkedTorus(Lattice(X.v2, w1 + w2), {Vec2{0, 0}, w1});
    D.T3 = MarkedTorus(Lattice(X.v1, u1 + w2), {Vec2{0, 0}, w2});
    return D;
}

bool dual_area_check(const SplittingDatum& X, const DualSplittingDatum& Xd) {
    if (!parallel(X.v1, X.v2)) return false;
    FieldElement alpha = abs(ratio(X.v2, X.v1));
    return Xd.T3.area() == X.T1.area() + X.T2.area() / (1 + alpha);
}

CheckResult theorem_B_check(const SplittingDatum& X) {
    SplittingReport R;
    try {
        R = validate_splitting(X);
    } catch (const Error& e) {
        return {false, e.what()};
    }
    if (!R.special) return {false, "not special"};
    if (!is_generic(X.v2, X.T3.lattice)) return {false, "v2 not generic"};
    return {true, "special, v2 generic"};
}

CheckResult theorem_C_check(const SplittingDatum& X) {
    SplittingReport R = validate_splitting(X);
    require(R.special, ErrorKind::NotSpecial, "v1 and v2 are not parallel");
    if (R.params->mbar.is_rational()) return {false, "mbar rational"};
    if (!is_generic(X.v2, X.T3.lattice)) return {false, "v2 not generic"};
    return {true, "mbar irrational, v2 generic"};
}

bool ResplitResult::all_ok() const { return all_checks(checks); }
bool WitnessResult::all_ok() const { return all_checks(checks); }

ResplitResult resplit_claim1(const SplittingDatum& X, const ResplitTarget& tg, long search_bound) {
    SplittingReport R = validate_splitting(X);
    require(R.special, ErrorKind::NotSpecial, "v1 and v2 are not parallel");
    Normalized N = check_normalized(X, R);
    const FieldElement &A1 = tg.A1, &A2 = tg.A2, &A3 = tg.A3, &alpha = tg.alpha, &a0 = N.alpha0;
    require(A1.sign() > 0 && A2.sign() > 0 && A3.sign() > 0 && alpha.sign() > 0, ErrorKind::InvalidInput,
            "target areas and alpha must be positive");
    require(A1 + A2 + A3 == FieldElement(1), ErrorKind::InvalidInput, "target areas do not sum to 1");
    require(A1 + A2 / (alpha + 1) == N.A1 + N.A2 / (a0 + 1), ErrorKind::InvalidInput,
            "target violates A1 + A2/(alpha+1) = A1⁰ + A2⁰/(alpha0+1)");

    const FieldElement &h1 = N.h1, &h2 = N.h2;
    FieldElement scale = alpha * a0 * (h1 + h2);
    FieldElement m0 = a0 * N.A2 / (a0 + 1), mt = alpha * A2 / (alpha + 1);
    FieldElement lo = (m0 > mt ? m0 : mt) / scale, hi = (m0 + N.A3) / scale;

    ResplitResult out;
    bool found = false;
    for (long q = 1; q <= search_bound && !found; ++q) {
        Integer p = (lo * FieldElement(q)).floor() + 1;
        if (fe(p) < hi * FieldElement(q)) {
            out.p = p;
            out.q = q;
            found = true;
        }
    }
    require(found, ErrorKind::SearchExhausted, "no p/q within the search bound");
    FieldElement P = fe(out.p), Q = fe(out.q), pq = P / Q;
    FieldElement k = A2 / (h2 * (alpha + 1));
    out.x = (k - 1) / P;
    out.y = (alpha * k - a0) / Q;
    out.z = alpha * pq * (h1 + h2) - h2;
    out.u1 = {out.x, h1};
    out.w1 = {out.y, out.z};
    out.w2 = {FieldElement(0), h2};
    out.v1p = X.v1 + P * (out.u1 + out.w2);
    out.v2p = X.v2 + Q * (out.w1 + out.w2);

    auto& c = out.checks;
    FieldElement A2d = abs(wedge(X.v2, out.w1 + out.w2));
    FieldElement A3d = h1 + h2;
    attempt(c, "(i) v2' = alpha v1'", [&] { return out.v2p == alpha * out.v1p; });
    attempt(c, "(ii) |v1'∧w2| = A2/(alpha+1)", [&] { return abs(wedge(out.v1p, out.w2)) == A2 / (alpha + 1); });
    attempt(c, "(iii) |v2'∧w2| < Aa(T2 dual)", [&] { return abs(wedge(out.v2p, out.w2)) < A2d; });
    attempt(c, "Aa(T2 dual) = alpha alpha0 (p/q)(h1+h2)", [&] { return A2d == scale * pq; });
    attempt(c, "0 < z < A3⁰/alpha0", [&] { return out.z.sign() > 0 && out.z < N.A3 / a0; });
    attempt(c, "|v2∧w2| < Aa(T2 dual) < alpha0 A2⁰/(alpha0+1) + A3⁰",
            [&] { return abs(wedge(X.v2, out.w2)) < A2d && A2d < m0 + N.A3; });

    FieldElement A1d = 1 - A2d - A3d;
    Vec2 u1hat{A1d / out.z, FieldElement(0)};
    attempt(c, "base splitting", [&] {
        Vec2 v = X.v1 + X.v2;
        out.base = {MarkedTorus(Lattice(X.v1, out.u1)), MarkedTorus(Lattice(v, out.w2), {Vec2{0, 0}, X.v1}),
                    MarkedTorus(Lattice(out.w1, X.v2 + u1hat), {Vec2{0, 0}, X.v2}), X.v1, X.v2};
        validate_splitting(out.base);
        return out.base.T1.area() == N.A1 && out.base.T2.area() == N.A2 && out.base.T3.area() == N.A3;
    });
    attempt(c, "|w1∧(v2+u1hat)| = A3⁰", [&] { return abs(wedge(out.w1, X.v2 + u1hat)) == N.A3; });
    attempt(c, "dual splitting", [&] {
        out.dual = dual_splitting(out.base, out.w1, out.w2);
        validate_splitting(out.dual.as_splitting());
        return dual_area_check(out.base, out.dual) && out.dual.T2.area() == A2d && out.dual.T1.area() == A1d;
    });
    attempt(c, "resplit has the target parameters", [&] {
        out.resplit = dual_splitting(out.dual.as_splitting(), out.v1p, out.v2p).as_splitting();
        SplittingReport S = validate_splitting(out.resplit);
        return S.special && S.params->A1 == A1 && S.params->A2 == A2 && S.params->A3 == A3 &&
               S.params->alpha == alpha;
    });
    return out;
}

WitnessResult theorem_B_witness(const SplittingDatum& X, long search_bound) {
    SplittingReport R = validate_splitting(X);
    require(R.special, ErrorKind::NotApplicable, "X is not special");
    Normalized N = check_normalized(X, R);
    const auto& P0 = *R.params;
    require(P0.mbar.is_rational(), ErrorKind::NotApplicable, "mbar is irrational; the criterion applies directly");
    require(P0.t2->is_zero(), ErrorKind::NotApplicable, "twist t2 is not 0");
    const FieldElement &a0 = N.alpha0, &h1 = N.h1, &h2 = N.h2, &A3_0 = N.A3;

    WitnessResult out;
    out.w2 = {FieldElement(0), h2};
    require(in_lattice(out.w2, X.T2.lattice), ErrorKind::Internal, "vertical completion missing with t2 = 0");
    Vec2 u1 = basis_completion(X.v1, X.T1.lattice);
    Lattice L3d(X.v1, u1 + out.w2);
    FieldElement A3d = h1 + h2, A0 = a0 * h2 + A3_0;

    RealNumberField K = common_field({h1, h2, a0, u1.x, A3_0});
    if (K.is_rationals()) K = RealNumberField::create(IntPoly{-2, 0, 1}, 1, 2);
    FieldElement theta = FieldElement::generator(K).frac();
    SternBrocot grid;
    auto& c = out.checks;

    if (!u1.x.is_rational()) {
        // Vertical w1: the dual itself satisfies the criterion when its moduli ratio is irrational.
        out.vertical_case = true;
        FieldElement zmax = A3_0 / a0;
        bool found = false;
        FieldElement z;
        for (long n = 0; n < search_bound && !found; ++n) {
            FieldElement r(grid.next());
            for (const FieldElement& cand : {r * zmax, r * theta * zmax}) {
                FieldElement A1d = A3_0 - a0 * cand, A2d = a0 * (cand + h2);
                FieldElement al = h2 / cand;
                if (!(A1d / A2d * (1 + al) * (1 + al)).is_rational()) {
                    z = cand;
                    found = true;
                    break;
                }
            }
        }
        require(found, ErrorKind::SearchExhausted, "no vertical dual with irrational moduli ratio");
        out.w1 = {FieldElement(0), z};
        FieldElement A1d = A3_0 - a0 * z;
        out.u1hat = {A1d / z, FieldElement(0)};
        attempt(c, "base splitting", [&] {
            out.base = {X.T1, X.T2, MarkedTorus(Lattice(out.w1, X.v2 + out.u1hat), {Vec2{0, 0}, X.v2}), X.v1, X.v2};
            validate_splitting(out.base);
            return out.base.T3.area() == A3_0;
        });
        attempt(c, "dual splitting", [&] {
            out.dual = dual_splitting(out.base, out.w1, out.w2);
            return dual_area_check(out.base, out.dual);
        });
        attempt(c, "criterion holds for the dual", [&] {
            out.witness = out.dual.as_splitting();
            return theorem_C_check(out.witness).ok;
        });
        return out;
    }

    // Rational twist: Λ3 dual contains vertical vectors.
    Integer d = Rational(u1.x.frac().to_rational()).get_den();
    out.h3 = fe(d) * (h1 + h2);
    Vec2 u3{FieldElement(0), out.h3};
    require(is_primitive(u3, L3d), ErrorKind::Internal, "vertical vector of the dual lattice");
    Vec2 c3 = -basis_completion(u3, L3d);
    out.l = c3.x;
    out.h = c3.y - fe((c3.y / out.h3).floor()) * out.h3;
    const FieldElement &l = out.l, &h = out.h, &h3 = out.h3;
    out.A1 = l * (h3 - h2);
    FieldElement amax = A0 / (l * h2);

    // Rational multiples of a rational lower bound for amax come first, then irrational ones.
    Rational amax_lo = amax.enclose(amax.to_double() > 0 ? Rational(1, 1000000) : Rational(1)).lo;
    FieldElement base = amax_lo > 0 ? FieldElement(amax_lo) : amax;
    bool found = false;
    for (long n = 0; n < search_bound && !found; ++n) {
        FieldElement r(grid.next());
        for (const FieldElement& al : {r * base, r * theta * base}) {
            if (al.sign() <= 0 || !(al < amax)) continue;
            FieldElement A2 = l * h2 * (al + 1);
            if ((out.A1 * (al + 1) * (al + 1) / A2).is_rational()) continue;
            FieldElement s = al * a0 * h3;
            // q from the two lower bounds, raised until p also keeps the dual's w1 above the axis.
            FieldElement b1 = h * a0 / (l * h2), b2 = 2 * s / (A0 - al * l * h2);
            Integer q = std::max(b1.floor(), b2.floor()) + 1;
            if (q < 1) q = 1;
            for (long tries = 0; tries < 1000 && !found; ++tries, q += 1) {
                FieldElement Q = fe(q), off = h / (h3 * Q);
                FieldElement lo = al * l * h2 / s - off, lo_z = h2 / (al * h3) - off, hi = A0 / s - off;
                if (lo_z > lo) lo = lo_z;
                Integer p = (lo * Q).floor() + 1;
                if (p >= 1 && fe(p) < hi * Q) {
                    out.p = p;
                    out.q = q;
                    out.alpha = al;
                    out.A2 = A2;
                    found = true;
                }
            }
            if (found) break;
        }
    }
    require(found, ErrorKind::SearchExhausted, "no (alpha, p, q) within the search bound");
    const FieldElement& al = out.alpha;
    out.A3 = 1 - out.A1 - out.A2;
    FieldElement P = fe(out.p), Q = fe(out.q), s = al * a0 * h3;
    out.v1p = {l, P * h3 + h};
    out.w1 = {(al * l - a0) / Q, al * h3 * (h / (h3 * Q) + P / Q) - h2};
    out.v2p = X.v2 + Q * (out.w1 + out.w2);
    FieldElement A2d = s * (h / (h3 * Q) + P / Q);

    attempt(c, "v2' = (alpha l, alpha(p h3 + h))", [&] { return out.v2p == al * out.v1p; });
    attempt(c, "|v1'∧w2| = l h2 < l h3 = Aa(T3 dual)",
            [&] { return abs(wedge(out.v1p, out.w2)) == l * h2 && l * h2 < l * h3 && l * h3 == A3d; });
    attempt(c, "|v2'∧w2| < Aa(T2 dual)", [&] {
        return abs(wedge(out.v2p, out.w2)) == al * l * h2 && al * l * h2 < A2d &&
               A2d == abs(wedge(X.v2, out.w1 + out.w2));
    });
    attempt(c, "Aa(T2 dual) < A0", [&] { return A2d < A0; });
    attempt(c, "0 < z < A3⁰/alpha0", [&] { return out.w1.y.sign() > 0 && out.w1.y < A3_0 / a0; });
    attempt(c, "A2/(alpha+1) = l h2 and (A1/A2)(alpha+1)² irrational", [&] {
        return out.A2 / (al + 1) == l * h2 && !(out.A1 / out.A2 * (al + 1) * (al + 1)).is_rational() &&
               out.A3.sign() > 0;
    });

    FieldElement A1d = 1 - A2d - A3d;
    FieldElement sg(wedge(out.w1, X.v2).sign());
    out.lambda = FieldElement::generator(K);
    FieldElement mu = sg * A1d / wedge(out.w1, out.v2p);
    out.u1hat = out.lambda * out.w1 + mu * out.v2p;
    attempt(c, "|u1hat∧w1| = Aa(T1 dual), lambda irrational",
            [&] { return abs(wedge(out.u1hat, out.w1)) == A1d && !out.lambda.is_rational(); });
    attempt(c, "base splitting", [&] {
        out.base = {X.T1, X.T2, MarkedTorus(Lattice(out.w1, X.v2 + out.u1hat), {Vec2{0, 0}, X.v2}), X.v1, X.v2};
        validate_splitting(out.base);
        return out.base.T3.area() == A3_0;
    });
    attempt(c, "dual splitting", [&] {
        out.dual = dual_splitting(out.base, out.w1, out.w2);
        validate_splitting(out.dual.as_splitting());
        return dual_area_check(out.base, out.dual) && same_lattice(out.dual.T3.lattice, L3d);
    });
    attempt(c, "witness has areas (A1, A2, A3) and ratio alpha", [&] {
        out.witness = dual_splitting(out.dual.as_splitting(), out.v1p, out.v2p).as_splitting();
        SplittingReport S = validate_splitting(out.witness);
        return S.special && S.params->A1 == out.A1 && S.params->A2 == out.A2 && S.params->A3 == out.A3 &&
               S.params->alpha == al;
    });
    attempt(c, "witness lattice Z w1 + Z(v2' + u1hat)",
            [&] { return same_lattice(out.witness.T3.lattice, Lattice(out.w1, out.v2p + out.u1hat)); });
    attempt(c, "criterion holds for the witness", [&] { return theorem_C_check(out.witness).ok; });
    return out;
}

}  // namespace flatstrat
