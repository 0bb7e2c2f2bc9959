#include "flatstrat/planar.hpp"

#include "flatstrat/error.hpp"

namespace flatstrat {

FieldElement wedge(const Vec2& a, const Vec2& b) { return a.x * b.y - b.x * a.y; }
FieldElement dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

bool parallel(const Vec2& a, const Vec2& b) { return wedge(a, b).is_zero(); }
bool same_direction(const Vec2& a, const Vec2& b) { return parallel(a, b) && dot(a, b).sign() > 0; }

int half_plane(const Vec2& d) {
    int sy = d.y.sign();
    if (sy > 0 || (sy == 0 && d.x.sign() > 0)) return 0;
    return 1;
}

bool angle_less(const Vec2& a, const Vec2& b) {
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return wedge(a, b).sign() > 0;
}

Lattice::Lattice(Vec2 u_, Vec2 v_) : u(std::move(u_)), v(std::move(v_)) {
    require(!wedge(u, v).is_zero(), ErrorKind::DegenerateConfiguration, "lattice basis vectors are parallel");
}

Vec2 Lattice::at(const Integer& p, const Integer& q) const {
    return FieldElement(Rational(p)) * u + FieldElement(Rational(q)) * v;
}

std::pair<FieldElement, FieldElement> lattice_coords(const Vec2& w, const Lattice& L) {
    FieldElement det = wedge(L.u, L.v);
    require(!det.is_zero(), ErrorKind::DegenerateConfiguration, "degenerate lattice");
    return {wedge(w, L.v) / det, wedge(L.u, w) / det};
}

std::optional<std::pair<Integer, Integer>> integer_coords(const Vec2& w, const Lattice& L) {
    auto [s, t] = lattice_coords(w, L);
    if (!s.is_rational() || !t.is_rational()) return std::nullopt;
    Rational a = s.to_rational(), b = t.to_rational();
    if (a.get_den() != 1 || b.get_den() != 1) return std::nullopt;
    return std::make_pair(Integer(a.get_num()), Integer(b.get_num()));
}

bool in_lattice(const Vec2& w, const Lattice& L) { return integer_coords(w, L).has_value(); }

bool is_primitive(const Vec2& w, const Lattice& L) {
    auto c = integer_coords(w, L);
    if (!c) return false;
    Integer g;
    mpz_gcd(g.get_mpz_t(), c->first.get_mpz_t(), c->second.get_mpz_t());
    return g == 1;
}

bool is_generic(const Vec2& w, const Lattice& L) {
    require(!w.is_zero(), ErrorKind::InvalidInput, "genericity of the zero vector");
    FieldElement a = wedge(w, L.u), b = wedge(w, L.v);
    if (a.is_zero() || b.is_zero()) return false;
    return !(a / b).is_rational();
}

Vec2 basis_completion(const Vec2& v, const Lattice& L) {
    auto c = integer_coords(v, L);
    require(c.has_value(), ErrorKind::NotInLattice, "vector " + v.to_string() + " is not in the lattice");
    Integer p = c->first, q = c->second, g, s, t;
    // s*p + t*q = g
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    require(g == 1 || g == -1, ErrorKind::NotPrimitive, "vector " + v.to_string() + " is not primitive");
    if (g == -1) {
        s = -s;
        t = -t;
    }
    // w = (-t) u + s v has det [[p, -t], [q, s]] = p s + q t = 1 in lattice coordinates.
    Vec2 w = L.at(-t, s);
    if (wedge(v, w).sign() < 0) w = -w;
    return w;
}

bool same_lattice(const Lattice& a, const Lattice& b) {
    return in_lattice(a.u, b) && in_lattice(a.v, b) && in_lattice(b.u, a) && in_lattice(b.v, a);
}

std::optional<Lattice> lattice_span(const std::vector<Vec2>& gens) {
    const Vec2* g0 = nullptr;
    const Vec2* g1 = nullptr;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        if (!g0) g0 = &g;
        else if (!parallel(*g0, g)) {
            g1 = &g;
            break;
        }
    }
    if (!g1) return std::nullopt;
    Lattice frame(*g0, *g1);
    std::vector<std::pair<Rational, Rational>> rc;
    Integer den = 1;
    for (const auto& g : gens) {
        auto [s, t] = lattice_coords(g, frame);
        require(s.is_rational() && t.is_rational(), ErrorKind::DegenerateConfiguration,
                "periods do not span a lattice");
        rc.emplace_back(s.to_rational(), t.to_rational());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rc.back().first.get_den_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), rc.back().second.get_den_mpz_t());
    }
    Integer pa = 0, pb = 0, h = 0;
    for (const auto& [s, t] : rc) {
        Rational sa = s * den, tb = t * den;
        Integer wa = sa.get_num(), wb = tb.get_num();
        while (wa != 0) {
            Integer q = pa / wa;
            pa -= q * wa;
            pb -= q * wb;
            std::swap(pa, wa);
            std::swap(pb, wb);
        }
        mpz_gcd(h.get_mpz_t(), h.get_mpz_t(), wb.get_mpz_t());
    }
    require(pa != 0 && h != 0, ErrorKind::Internal, "lattice span lost rank");
    FieldElement inv = FieldElement(Rational(1) / Rational(den));
    Vec2 u = inv * (FieldElement(Rational(pa)) * frame.u + FieldElement(Rational(pb)) * frame.v);
    Vec2 v = inv * (FieldElement(Rational(h)) * frame.v);
    return Lattice(u, v);
}

MarkedTorus::MarkedTorus(Lattice L, std::vector<Vec2> offsets) : lattice(std::move(L)), marked_offsets(std::move(offsets)) {
    if (marked_offsets.empty() || !marked_offsets.front().is_zero())
        marked_offsets.insert(marked_offsets.begin(), Vec2{0, 0});
    require(marked_offsets.size() <= 2, ErrorKind::InvalidInput, "a marked torus carries one or two marked points");
    if (marked_offsets.size() == 2)
        require(!in_lattice(marked_offsets[1], lattice), ErrorKind::InvalidInput,
                "marked points coincide modulo the lattice");
}

bool unique_intersection(const Vec2& s, const Vec2& c, const MarkedTorus& T) {
    FieldElement w = wedge(s, c);
    require(!w.is_zero(), ErrorKind::DegenerateConfiguration, "segment is parallel to the closed geodesic");
    return (T.area() - abs(w)).sign() > 0;
}

Mat2 Mat2::inverse() const {
    FieldElement D = det();
    require(!D.is_zero(), ErrorKind::DegenerateConfiguration, "singular matrix");
    return {d / D, -b / D, -c / D, a / D};
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

}  // namespace flatstrat
