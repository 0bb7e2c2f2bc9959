#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flatstrat/polynomial.hpp"

namespace flatstrat {

namespace detail {
struct FieldData;
}

// A real number field Q(a) presented by the minimal polynomial of a and an isolating interval.
class RealNumberField {
public:
    RealNumberField();  // the rationals
    // The rational field (minpoly X, root 0).
    static RealNumberField rationals();
    // Degree 2 and 3 minpolys are checked for irreducibility; degree >= 4 needs assume_irreducible.
    static RealNumberField create(const IntPoly& minpoly, const Rational& lo, const Rational& hi,
                                  bool assume_irreducible = false);

    int degree() const;
    const IntPoly& minpoly() const;
    // Original isolating interval as supplied by the caller.
    Interval isolating_interval() const;
    // Current (possibly refined) isolating interval.
    Interval current_interval() const;
    // Isolating interval of width below bound; the refinement is shared thereafter.
    Interval refined_interval(const Rational& bound) const;
    bool irreducibility_verified() const;

    bool is_rationals() const { return degree() == 1; }
    bool same_as(const RealNumberField& other) const;
    std::string describe() const;

    const detail::FieldData* id() const { return data_.get(); }

private:
    explicit RealNumberField(std::shared_ptr<detail::FieldData> d) : data_(std::move(d)) {}
    std::shared_ptr<detail::FieldData> data_;
    friend class FieldElement;
};

// Exact element of a RealNumberField in the power basis 1, a, ..., a^(d-1).
class FieldElement {
public:
    FieldElement();  // zero of Q
    FieldElement(long v);  // NOLINT(google-explicit-constructor)
    FieldElement(const Rational& q);  // NOLINT(google-explicit-constructor)
    FieldElement(const RealNumberField& K, const Rational& q);
    FieldElement(const RealNumberField& K, std::vector<Rational> coords);
    static FieldElement generator(const RealNumberField& K);

    const RealNumberField& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }
    Rational coord(int i) const;

    bool is_zero() const;
    bool is_rational() const;
    Rational to_rational() const;  // requires is_rational()
    int sign() const;

    FieldElement inverse() const;
    FieldElement in_field(const RealNumberField& K) const;  // embed a rational element

    // Enclosure of the real value with width < bound.
    Interval enclose(const Rational& bound) const;
    Integer floor() const;
    FieldElement frac() const;  // x - floor(x), in [0, 1)
    std::string approximate(int digits) const;
    double to_double() const;
    std::string to_string() const;  // exact "[a0, a1, ...]" or "p/q" for rationals

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    friend bool operator<(const FieldElement& a, const FieldElement& b) { return (a - b).sign() < 0; }
    friend bool operator>(const FieldElement& a, const FieldElement& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const FieldElement& a, const FieldElement& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const FieldElement& a, const FieldElement& b) { return (a - b).sign() >= 0; }

private:
    RealNumberField field_;
    std::vector<Rational> coords_;
    RatPoly as_poly() const;
    static RealNumberField common_field(const FieldElement& a, const FieldElement& b);
};

FieldElement abs(const FieldElement& x);
FieldElement pow(const FieldElement& x, int e);
// Field of a set of elements: the unique non-rational field among them, or Q.
RealNumberField common_field(const std::vector<FieldElement>& xs);

struct DependencyResult {
    bool independent = true;
    std::vector<Integer> witness;  // nonzero integer relation when dependent
};
DependencyResult q_linear_independent(const std::vector<FieldElement>& xs);

// Minimal polynomial over Q of x (primitive integer form).
IntPoly minimal_polynomial(const FieldElement& x);

}  // namespace flatstrat
