#include "flatstrat/field.hpp"

#include <mutex>
#include <sstream>

#include "flatstrat/error.hpp"

namespace flatstrat {

namespace detail {

struct FieldData {
    IntPoly minpoly;
    RatPoly rpoly;
    int degree = 1;
    Interval original;
    bool verified = true;
    // Coordinates of a^k for k = d .. 2d-2, used to reduce products.
    std::vector<std::vector<Rational>> reduction;

    mutable std::mutex mu;
    mutable std::shared_ptr<const Interval> current;

    std::shared_ptr<const Interval> snapshot() const {
        std::lock_guard<std::mutex> lock(mu);
        return current;
    }
};

}  // namespace detail

namespace {

std::shared_ptr<detail::FieldData> make_data(const IntPoly& minpoly, const Interval& iv, bool verified) {
    auto d = std::make_shared<detail::FieldData>();
    d->minpoly = minpoly;
    d->rpoly = minpoly.to_rat();
    d->degree = minpoly.degree();
    d->original = iv;
    d->verified = verified;
    d->current = std::make_shared<const Interval>(iv);
    int n = d->degree;
    // a^n = -(c0 + ... + c_{n-1} a^{n-1}) / c_n
    std::vector<Rational> top(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) top[static_cast<size_t>(i)] = -Rational(minpoly.coeff(i)) / Rational(minpoly.coeff(n));
    std::vector<Rational> cur = top;
    for (int k = n; k <= 2 * n - 2; ++k) {
        d->reduction.push_back(cur);
        // multiply by a
        std::vector<Rational> next(static_cast<size_t>(n));
        for (int i = n - 1; i >= 1; --i) next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
        Rational carry = cur[static_cast<size_t>(n - 1)];
        for (int i = 0; i < n; ++i) next[static_cast<size_t>(i)] += carry * top[static_cast<size_t>(i)];
        cur = std::move(next);
    }
    return d;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::shared_ptr<detail::FieldData>>& registry() {
    static std::vector<std::shared_ptr<detail::FieldData>> r;
    return r;
}

}  // namespace

RealNumberField RealNumberField::rationals() {
    static const RealNumberField q(make_data(IntPoly{0, 1}, Interval{0, 0}, true));
    return q;
}

RealNumberField::RealNumberField() : data_(rationals().data_) {}

RealNumberField RealNumberField::create(const IntPoly& minpoly_in, const Rational& lo, const Rational& hi,
                                        bool assume_irreducible) {
    require(minpoly_in.degree() >= 1, ErrorKind::InvalidInput, "minimal polynomial must have degree >= 1");
    require(lo <= hi, ErrorKind::InvalidInput, "isolating interval has lo > hi");
    IntPoly minpoly = minpoly_in.canonical();
    RatPoly p = minpoly.to_rat();
    require(minpoly.is_squarefree(), ErrorKind::InvalidInput, "minimal polynomial is not squarefree");
    int d = minpoly.degree();
    bool verified = true;
    if (d == 2 || d == 3) {
        require(is_irreducible_cubic(minpoly), ErrorKind::ReduciblePolynomial,
                minpoly.to_string() + " has a rational root");
    } else if (d >= 4) {
        require(assume_irreducible, ErrorKind::UnsupportedDegree,
                "irreducibility of degree >= 4 minpolys is not verified; caller assertion required");
        verified = false;
    }
    auto seq = sturm_sequence(p);
    int inside = count_roots(seq, lo, hi) + (p.sign_at(lo) == 0 ? 1 : 0);
    require(inside == 1, ErrorKind::InvalidInput,
            "interval [" + to_string(lo) + ", " + to_string(hi) + "] contains " + std::to_string(inside) +
                " roots of " + minpoly.to_string());
    if (d == 1) return rationals();

    std::lock_guard<std::mutex> lock(registry_mutex());
    for (const auto& f : registry()) {
        if (!(f->minpoly == minpoly)) continue;
        auto cur = f->snapshot();
        Rational a = lo > cur->lo ? lo : cur->lo;
        Rational b = hi < cur->hi ? hi : cur->hi;
        if (a > b) continue;
        int shared = count_roots(seq, a, b) + (p.sign_at(a) == 0 ? 1 : 0);
        if (shared == 1) return RealNumberField(f);
    }
    auto data = make_data(minpoly, Interval{lo, hi}, verified);
    registry().push_back(data);
    return RealNumberField(data);
}

int RealNumberField::degree() const { return data_->degree; }
const IntPoly& RealNumberField::minpoly() const { return data_->minpoly; }
Interval RealNumberField::isolating_interval() const { return data_->original; }
Interval RealNumberField::current_interval() const { return *data_->snapshot(); }
bool RealNumberField::irreducibility_verified() const { return data_->verified; }
bool RealNumberField::same_as(const RealNumberField& other) const { return data_ == other.data_; }

Interval RealNumberField::refined_interval(const Rational& bound) const {
    auto cur = data_->snapshot();
    if (cur->width() < bound) return *cur;
    Interval next = refine_root(data_->rpoly, *cur, bound);
    std::lock_guard<std::mutex> lock(data_->mu);
    if (next.width() < data_->current->width()) data_->current = std::make_shared<const Interval>(next);
    return *data_->current;
}

std::string RealNumberField::describe() const {
    if (is_rationals()) return "QQ";
    std::ostringstream os;
    os << "poly(";
    for (int i = 0; i <= degree(); ++i) os << (i ? "," : "") << minpoly().coeff(i).get_str();
    os << ") root in [" << to_string(data_->original.lo) << "," << to_string(data_->original.hi) << "]";
    return os.str();
}

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement() : field_(RealNumberField::rationals()), coords_{Rational(0)} {}
FieldElement::FieldElement(long v) : field_(RealNumberField::rationals()), coords_{Rational(v)} {}
FieldElement::FieldElement(const Rational& q) : field_(RealNumberField::rationals()), coords_{q} {
    coords_[0].canonicalize();
}

FieldElement::FieldElement(const RealNumberField& K, const Rational& q)
    : field_(K), coords_(static_cast<size_t>(K.degree())) {
    coords_[0] = q;
    coords_[0].canonicalize();
}

FieldElement::FieldElement(const RealNumberField& K, std::vector<Rational> coords)
    : field_(K), coords_(std::move(coords)) {
    require(static_cast<int>(coords_.size()) <= K.degree(), ErrorKind::InvalidInput,
            "too many coordinates for a degree " + std::to_string(K.degree()) + " field");
    coords_.resize(static_cast<size_t>(K.degree()));
    for (auto& c : coords_) c.canonicalize();
}

FieldElement FieldElement::generator(const RealNumberField& K) {
    if (K.degree() == 1) return FieldElement(K.data_->original.lo);
    FieldElement g(K, Rational(0));
    g.coords_[1] = 1;
    return g;
}

Rational FieldElement::coord(int i) const {
    if (i < 0 || i >= static_cast<int>(coords_.size())) return 0;
    return coords_[static_cast<size_t>(i)];
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

Rational FieldElement::to_rational() const {
    require(is_rational(), ErrorKind::InvalidInput, "element is not rational");
    return coords_[0];
}

RatPoly FieldElement::as_poly() const { return RatPoly(coords_); }

FieldElement FieldElement::in_field(const RealNumberField& K) const {
    if (field_.same_as(K)) return *this;
    require(field_.is_rationals(), ErrorKind::FieldMismatch, "cannot move an irrational element to another field");
    return FieldElement(K, coords_[0]);
}

RealNumberField FieldElement::common_field(const FieldElement& a, const FieldElement& b) {
    if (a.field_.same_as(b.field_)) return a.field_;
    if (a.field_.is_rationals()) return b.field_;
    if (b.field_.is_rationals()) return a.field_;
    fail(ErrorKind::FieldMismatch, a.field_.describe() + " vs " + b.field_.describe());
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    RealNumberField K = common_field(*this, o);
    if (!field_.same_as(K)) *this = in_field(K);
    if (o.field_.same_as(K)) {
        for (size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    } else {
        coords_[0] += o.coords_[0];
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    RealNumberField K = common_field(*this, o);
    if (o.field_.is_rationals() && !K.is_rationals()) {
        for (auto& c : coords_) c *= o.coords_[0];
        return *this;
    }
    if (field_.is_rationals() && !K.is_rationals()) {
        Rational s = coords_[0];
        *this = o;
        for (auto& c : coords_) c *= s;
        return *this;
    }
    int n = K.degree();
    if (n == 1) {
        coords_[0] *= o.coords_[0];
        return *this;
    }
    std::vector<Rational> prod(static_cast<size_t>(2 * n - 1));
    for (int i = 0; i < n; ++i) {
        if (coords_[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < n; ++j)
            prod[static_cast<size_t>(i + j)] += coords_[static_cast<size_t>(i)] * o.coords_[static_cast<size_t>(j)];
    }
    const auto& red = K.data_->reduction;
    for (int k = n; k <= 2 * n - 2; ++k) {
        const Rational& c = prod[static_cast<size_t>(k)];
        if (c == 0) continue;
        const auto& row = red[static_cast<size_t>(k - n)];
        for (int i = 0; i < n; ++i) prod[static_cast<size_t>(i)] += c * row[static_cast<size_t>(i)];
    }
    prod.resize(static_cast<size_t>(n));
    coords_ = std::move(prod);
    return *this;
}

FieldElement FieldElement::inverse() const {
    require(!is_zero(), ErrorKind::DivisionByZero, "inverse of zero");
    if (field_.is_rationals() || is_rational()) return FieldElement(field_, 1 / coords_[0]);
    RatPoly s, t;
    RatPoly g = extended_gcd(as_poly(), field_.data_->rpoly, s, t);
    require(g.degree() == 0, ErrorKind::DivisionByZero, "element is a zero divisor (minpoly not irreducible)");
    std::vector<Rational> c = s.coeffs();
    c.resize(static_cast<size_t>(field_.degree()));
    return FieldElement(field_, std::move(c));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    require(!o.is_zero(), ErrorKind::DivisionByZero, "division by zero");
    if (o.field_.is_rationals() || o.is_rational()) {
        RealNumberField K = common_field(*this, o);
        if (!field_.same_as(K)) *this = in_field(K);
        for (auto& c : coords_) c /= o.coords_[0];
        return *this;
    }
    return *this *= o.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) { return (a - b).is_zero(); }

int FieldElement::sign() const {
    if (is_rational()) return sgn(coords_[0]);
    RatPoly g = as_poly();
    Interval iv = field_.current_interval();
    while (true) {
        if (iv.width() == 0) return sgn(g.eval(iv.lo));
        Interval v = g.eval(iv);
        if (v.lo > 0) return 1;
        if (v.hi < 0) return -1;
        Rational bound = iv.width() / 65536;
        iv = field_.refined_interval(bound);
    }
}

Interval FieldElement::enclose(const Rational& bound) const {
    if (is_rational()) return {coords_[0], coords_[0]};
    RatPoly g = as_poly();
    Interval iv = field_.current_interval();
    while (true) {
        Interval v = g.eval(iv);
        if (v.width() < bound) return v;
        iv = field_.refined_interval(iv.width() / 65536);
    }
}

Integer FieldElement::floor() const {
    if (is_rational()) return floor_of(coords_[0]);
    Rational bound(1, 1024);
    while (true) {
        Interval v = enclose(bound);
        Integer a = floor_of(v.lo), b = floor_of(v.hi);
        if (a == b) return a;
        bound /= 1024;
    }
}

FieldElement FieldElement::frac() const { return *this - FieldElement(field_, Rational(floor())); }

namespace {

// Round half away from zero to an integer.
Integer round_rational(const Rational& x) {
    if (x >= 0) return floor_of(x + Rational(1, 2));
    return -floor_of(-x + Rational(1, 2));
}

std::string format_scaled(const Integer& n, int digits) {
    Integer a = abs(n);
    std::string s = a.get_str();
    if (static_cast<int>(s.size()) <= digits) s = std::string(static_cast<size_t>(digits) - s.size() + 1, '0') + s;
    std::string out = s.substr(0, s.size() - static_cast<size_t>(digits));
    if (digits > 0) out += "." + s.substr(s.size() - static_cast<size_t>(digits));
    if (n < 0) out = "-" + out;
    return out;
}

}  // namespace

std::string FieldElement::approximate(int digits) const {
    require(digits >= 0, ErrorKind::InvalidInput, "digits must be nonnegative");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational S(scale);
    if (is_rational()) return format_scaled(round_rational(coords_[0] * S), digits);
    Rational bound = Rational(1) / (S * 16);
    while (true) {
        Interval v = enclose(bound);
        Integer a = round_rational(v.lo * S), b = round_rational(v.hi * S);
        if (a == b) return format_scaled(a, digits);
        bound /= 1024;
    }
}

double FieldElement::to_double() const {
    if (is_rational()) return coords_[0].get_d();
    return enclose(Rational(1, Integer(1) << 64)).mid().get_d();
}

std::string FieldElement::to_string() const {
    if (field_.is_rationals()) return coords_[0].get_str();
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i].get_str();
    os << "]";
    return os.str();
}

FieldElement abs(const FieldElement& x) { return x.sign() < 0 ? -x : x; }

FieldElement pow(const FieldElement& x, int e) {
    if (e < 0) return pow(x.inverse(), -e);
    FieldElement r = FieldElement(x.field(), Rational(1)), b = x;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

RealNumberField common_field(const std::vector<FieldElement>& xs) {
    RealNumberField K = RealNumberField::rationals();
    for (const auto& x : xs) {
        if (x.field().is_rationals()) continue;
        if (K.is_rationals())
            K = x.field();
        else
            require(K.same_as(x.field()), ErrorKind::FieldMismatch, "elements from different fields");
    }
    return K;
}

DependencyResult q_linear_independent(const std::vector<FieldElement>& xs) {
    DependencyResult res;
    if (xs.empty()) return res;
    RealNumberField K = common_field(xs);
    int n = static_cast<int>(xs.size());
    int d = K.degree();
    // A is d x n: column i holds the coordinates of xs[i].
    std::vector<std::vector<Rational>> A(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        FieldElement e = xs[static_cast<size_t>(i)].in_field(K);
        for (int j = 0; j < d; ++j) A[static_cast<size_t>(j)][static_cast<size_t>(i)] = e.coord(j);
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < d; ++col) {
        int p = -1;
        for (int r = row; r < d; ++r)
            if (A[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(A[static_cast<size_t>(p)], A[static_cast<size_t>(row)]);
        Rational inv = 1 / A[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (auto& v : A[static_cast<size_t>(row)]) v *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == row) continue;
            Rational f = A[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f == 0) continue;
            for (int c = 0; c < n; ++c)
                A[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * A[static_cast<size_t>(row)][static_cast<size_t>(c)];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (static_cast<int>(pivot_col.size()) == n) return res;
    res.independent = false;
    int free_col = 0;
    for (size_t k = 0; k <= pivot_col.size(); ++k) {
        if (k == pivot_col.size() || pivot_col[k] != static_cast<int>(k)) {
            free_col = static_cast<int>(k);
            break;
        }
    }
    std::vector<Rational> lambda(static_cast<size_t>(n));
    lambda[static_cast<size_t>(free_col)] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r)
        lambda[static_cast<size_t>(pivot_col[r])] = -A[r][static_cast<size_t>(free_col)];
    Integer l = 1;
    for (const auto& v : lambda) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> w;
    for (const auto& v : lambda) {
        w.push_back(Integer(v * l));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
    }
    int first_sign = 0;
    for (const auto& v : w)
        if (v != 0) {
            first_sign = sgn(v);
            break;
        }
    if (first_sign < 0) g = -g;
    for (auto& v : w) v /= g;
    res.witness = std::move(w);
    return res;
}

IntPoly minimal_polynomial(const FieldElement& x) {
    std::vector<FieldElement> powers{FieldElement(x.field(), Rational(1))};
    while (true) {
        powers.push_back(powers.back() * x);
        auto dep = q_linear_independent(powers);
        if (!dep.independent) return IntPoly(dep.witness).canonical();
    }
}

}  // namespace flatstrat
