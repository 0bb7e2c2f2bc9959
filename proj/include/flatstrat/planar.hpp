#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatstrat/field.hpp"

namespace flatstrat {

struct Vec2 {
    FieldElement x;
    FieldElement y;

    Vec2() = default;
    Vec2(FieldElement x_, FieldElement y_) : x(std::move(x_)), y(std::move(y_)) {}

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    FieldElement norm2() const { return x * x + y * y; }
    std::string to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }

    Vec2 operator-() const { return {-x, -y}; }
    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const FieldElement& s, const Vec2& a) { return {s * a.x, s * a.y}; }
    friend Vec2 operator*(const Vec2& a, const FieldElement& s) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
};

FieldElement wedge(const Vec2& a, const Vec2& b);
FieldElement dot(const Vec2& a, const Vec2& b);
// Same direction: parallel with positive dot product.
bool same_direction(const Vec2& a, const Vec2& b);
bool parallel(const Vec2& a, const Vec2& b);

// Angular order of directions on [0, 2pi) measured from the positive horizontal axis.
// half(d) = 0 on the upper half plane including the positive x-axis, 1 otherwise.
int half_plane(const Vec2& d);
bool angle_less(const Vec2& a, const Vec2& b);

struct Lattice {
    Vec2 u;
    Vec2 v;

    Lattice() = default;
    Lattice(Vec2 u_, Vec2 v_);
    FieldElement covolume() const { return abs(wedge(u, v)); }
    Vec2 at(const Integer& p, const Integer& q) const;
};

std::pair<FieldElement, FieldElement> lattice_coords(const Vec2& w, const Lattice& L);
bool in_lattice(const Vec2& w, const Lattice& L);
// Integer coordinates of w in L when w lies in L.
std::optional<std::pair<Integer, Integer>> integer_coords(const Vec2& w, const Lattice& L);
bool is_primitive(const Vec2& w, const Lattice& L);
bool is_generic(const Vec2& w, const Lattice& L);
// A vector w with L = Z v + Z w and wedge(v, w) > 0; v must be primitive in L.
Vec2 basis_completion(const Vec2& v, const Lattice& L);
// The same subgroup of the plane.
bool same_lattice(const Lattice& a, const Lattice& b);
// Z-span of the generators, or nullopt when it has rank below 2. Throws DegenerateConfiguration when
// the span is not discrete.
std::optional<Lattice> lattice_span(const std::vector<Vec2>& gens);

struct MarkedTorus {
    Lattice lattice;
    std::vector<Vec2> marked_offsets;  // first entry is the origin

    MarkedTorus() = default;
    MarkedTorus(Lattice L, std::vector<Vec2> offsets = {});
    int marked_count() const { return static_cast<int>(marked_offsets.size()); }
    FieldElement area() const { return lattice.covolume(); }
};

bool unique_intersection(const Vec2& s, const Vec2& c, const MarkedTorus& T);

// Invertible linear map with field entries, acting on column vectors.
struct Mat2 {
    FieldElement a = 1, b = 0, c = 0, d = 1;
    Vec2 apply(const Vec2& w) const { return {a * w.x + b * w.y, c * w.x + d * w.y}; }
    FieldElement det() const { return a * d - b * c; }
    Mat2 inverse() const;
    friend Mat2 operator*(const Mat2& m, const Mat2& n);
};

}  // namespace flatstrat
