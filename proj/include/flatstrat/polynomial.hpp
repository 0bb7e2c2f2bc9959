#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace flatstrat {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Integer floor_of(const Rational& q);

// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool excludes_zero() const { return lo > 0 || hi < 0; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);

// Dense polynomial over Q, coefficients from degree 0 upward, no trailing zeros.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    static RatPoly constant(const Rational& c);
    static RatPoly monomial(const Rational& c, int degree);
    static RatPoly x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    int sign_at(const Rational& x) const;
    Interval eval(const Interval& x) const;
    RatPoly derivative() const;
    RatPoly monic() const;
    RatPoly compose(const RatPoly& inner) const;

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const Rational& s, const RatPoly& a);
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

// Quotient and remainder of a by b (b nonzero).
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
RatPoly operator/(const RatPoly& a, const RatPoly& b);
// Monic gcd; gcd(0, 0) = 0.
RatPoly gcd(const RatPoly& a, const RatPoly& b);
// Returns g = gcd(a, b) and s, t with s*a + t*b = g.
RatPoly extended_gcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t);

// Integer polynomial, canonical form primitive with positive leading coefficient.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Integer> coeffs);
    IntPoly(std::initializer_list<long> coeffs);
    static IntPoly primitive_part(const RatPoly& p);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Integer>& coeffs() const { return c_; }
    const Integer& coeff(int i) const { return c_.at(static_cast<size_t>(i)); }
    RatPoly to_rat() const;
    IntPoly canonical() const;
    bool is_squarefree() const;
    std::string to_string(const std::string& var = "X") const;
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

private:
    std::vector<Integer> c_;
};

std::vector<RatPoly> sturm_sequence(const RatPoly& p);
// Number of distinct real roots of p in (a, b], via the Sturm sequence of p.
int count_roots(const std::vector<RatPoly>& sturm, const Rational& a, const Rational& b);
int count_real_roots(const std::vector<RatPoly>& sturm);
// Power of two strictly exceeding the absolute value of every real root.
Rational root_bound(const RatPoly& p);

// Disjoint closed intervals, one per distinct real root, sorted ascending; endpoints are never roots
// unless the interval is a single rational root [r, r].
std::vector<Interval> isolate_real_roots(const IntPoly& p);
// Narrow an isolating interval of a squarefree p by bisection until width < bound.
Interval refine_root(const RatPoly& p, Interval iv, const Rational& bound);

std::vector<Rational> rational_roots(const IntPoly& p);
bool is_irreducible_cubic(const IntPoly& p);

}  // namespace flatstrat
