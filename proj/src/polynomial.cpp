#include "flatstrat/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "flatstrat/error.hpp"

namespace flatstrat {

Rational make_rational(long num, long den) {
    require(den != 0, ErrorKind::DivisionByZero, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    require(!s.empty(), ErrorKind::ParseError, "empty rational");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // Decimal literal, read exactly.
        std::string sign;
        if (s[0] == '-' || s[0] == '+') {
            if (s[0] == '-') sign = "-";
            s = s.substr(1);
            dot -= 1;
        }
        std::string intpart = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (intpart.empty()) intpart = "0";
        for (char ch : intpart + frac)
            require(ch >= '0' && ch <= '9', ErrorKind::ParseError, "bad decimal '" + text + "'");
        Integer num(sign + intpart + frac);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    size_t slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num = num.substr(1);
    require(valid_int(num) && valid_int(den), ErrorKind::ParseError, "bad rational '" + text + "'");
    Integer d(den);
    require(d != 0, ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
    Rational q{Integer(num), d};
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{p[0], p[0]};
    for (auto& x : p) {
        if (x < r.lo) r.lo = x;
        if (x > r.hi) r.hi = x;
    }
    return r;
}

Interval operator*(const Rational& s, const Interval& a) {
    if (s >= 0) return {s * a.lo, s * a.hi};
    return {s * a.hi, s * a.lo};
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }

RatPoly RatPoly::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(static_cast<size_t>(degree) + 1);
    v.back() = c;
    return RatPoly(std::move(v));
}

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<size_t>(i)];
}

Rational RatPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

int RatPoly::sign_at(const Rational& x) const { return sgn(eval(x)); }

Interval RatPoly::eval(const Interval& x) const {
    if (c_.empty()) return {0, 0};
    Interval r{c_.back(), c_.back()};
    for (auto it = c_.rbegin() + 1; it != c_.rend(); ++it) {
        r = r * x;
        r.lo += *it;
        r.hi += *it;
    }
    return r;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return RatPoly(std::move(d));
}

RatPoly RatPoly::monic() const {
    if (c_.empty()) return {};
    Rational inv = 1 / c_.back();
    return inv * *this;
}

RatPoly RatPoly::compose(const RatPoly& inner) const {
    RatPoly r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * inner + constant(*it);
    return r;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < v.size(); ++i) {
        if (i < a.c_.size()) v[i] += a.c_[i];
        if (i < b.c_.size()) v[i] += b.c_[i];
    }
    return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x = -x;
    return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return RatPoly(std::move(v));
}

RatPoly operator*(const Rational& s, const RatPoly& a) {
    std::vector<Rational> v(a.c_);
    for (auto& x : v) x *= s;
    return RatPoly(std::move(v));
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    require(!b.is_zero(), ErrorKind::DivisionByZero, "polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    std::vector<Rational> quo(rem.size() > static_cast<size_t>(db) ? rem.size() - static_cast<size_t>(db) : 1);
    Rational lead = b.leading();
    for (int i = static_cast<int>(rem.size()) - 1; i >= db; --i) {
        Rational f = rem[static_cast<size_t>(i)] / lead;
        if (f == 0) continue;
        quo[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(i - db + j)] -= f * b.coeffs()[static_cast<size_t>(j)];
    }
    q = RatPoly(std::move(quo));
    r = RatPoly(std::move(rem));
}

RatPoly operator%(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return r;
}

RatPoly operator/(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return q;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

RatPoly extended_gcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(1), s1;
    RatPoly t0, t1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        RatPoly q, r;
        divmod(r0, r1, q, r);
        RatPoly s2 = s0 - q * s1;
        RatPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        s = s0;
        t = t0;
        return r0;
    }
    Rational inv = 1 / r0.leading();
    s = inv * s0;
    t = inv * t0;
    return inv * r0;
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) c_.emplace_back(c);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::primitive_part(const RatPoly& p) {
    if (p.is_zero()) return {};
    Integer l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> v;
    for (const auto& c : p.coeffs()) v.push_back(Integer(c * l));
    return IntPoly(std::move(v)).canonical();
}

RatPoly IntPoly::to_rat() const {
    std::vector<Rational> v;
    for (const auto& c : c_) v.emplace_back(c);
    return RatPoly(std::move(v));
}

IntPoly IntPoly::canonical() const {
    if (c_.empty()) return {};
    Integer g = 0;
    for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (c_.back() < 0) g = -g;
    std::vector<Integer> v;
    for (const auto& c : c_) v.push_back(c / g);
    return IntPoly(std::move(v));
}

bool IntPoly::is_squarefree() const {
    RatPoly p = to_rat();
    return gcd(p, p.derivative()).degree() == 0;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = c_[static_cast<size_t>(i)];
        if (c == 0) continue;
        Integer a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------- roots

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
    std::vector<RatPoly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    RatPoly d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (true) {
        RatPoly r = seq[seq.size() - 2] % seq.back();
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

namespace {

int variations_at(const std::vector<RatPoly>& seq, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int variations_at_infinity(const std::vector<RatPoly>& seq, bool positive) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
        int s = sgn(q.leading());
        if (!positive && q.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

int count_roots(const std::vector<RatPoly>& sturm, const Rational& a, const Rational& b) {
    return variations_at(sturm, a) - variations_at(sturm, b);
}

int count_real_roots(const std::vector<RatPoly>& sturm) {
    return variations_at_infinity(sturm, false) - variations_at_infinity(sturm, true);
}

Rational root_bound(const RatPoly& p) {
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.coeff(i) / p.leading());
        if (r > m) m = r;
    }
    Rational b = 1;
    while (b <= m + 1) b *= 2;
    return b;
}

std::vector<Interval> isolate_real_roots(const IntPoly& poly) {
    require(poly.degree() >= 0, ErrorKind::InvalidInput, "zero polynomial");
    RatPoly p = poly.to_rat();
    if (p.degree() == 0) return {};
    RatPoly sq = p / gcd(p, p.derivative());
    auto seq = sturm_sequence(sq);
    Rational B = root_bound(sq);
    std::vector<Interval> out;
    std::vector<Interval> todo{{-B, B}};
    while (!todo.empty()) {
        Interval iv = todo.back();
        todo.pop_back();
        int n = count_roots(seq, iv.lo, iv.hi);
        if (n == 0) continue;
        if (n == 1) {
            if (sq.sign_at(iv.hi) == 0)
                out.push_back({iv.hi, iv.hi});
            else
                out.push_back(iv);
            continue;
        }
        Rational m = iv.mid();
        if (sq.sign_at(m) == 0) {
            out.push_back({m, m});
            // Shrink both halves so that m is excluded from them.
            Rational eps = iv.width() / 4;
            while (count_roots(seq, m, m + eps) > 0 || count_roots(seq, m - eps, m) > 1) eps /= 2;
            todo.push_back({iv.lo, m - eps});
            todo.push_back({m + eps, iv.hi});
            continue;
        }
        todo.push_back({iv.lo, m});
        todo.push_back({m, iv.hi});
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    // Bisection neighbours may share an endpoint; shrink until strictly separated.
    for (size_t i = 1; i < out.size(); ++i) {
        while (out[i - 1].hi >= out[i].lo) {
            out[i - 1] = refine_root(sq, out[i - 1], out[i - 1].width() / 2);
            out[i] = refine_root(sq, out[i], out[i].width() / 2);
        }
    }
    return out;
}

Interval refine_root(const RatPoly& p, Interval iv, const Rational& bound) {
    int slo = p.sign_at(iv.lo);
    if (slo == 0) return {iv.lo, iv.lo};
    if (p.sign_at(iv.hi) == 0) return {iv.hi, iv.hi};
    while (iv.width() >= bound) {
        Rational m = iv.mid();
        int sm = p.sign_at(m);
        if (sm == 0) return {m, m};
        if (sm == slo)
            iv.lo = m;
        else
            iv.hi = m;
    }
    return iv;
}

namespace {

std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rational> rational_roots(const IntPoly& poly) {
    std::vector<Rational> roots;
    if (poly.degree() <= 0) return roots;
    IntPoly p = poly;
    RatPoly rp = p.to_rat();
    int low = 0;
    while (p.coeff(low) == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    auto num = positive_divisors(p.coeff(low));
    auto den = positive_divisors(p.coeff(p.degree()));
    for (const auto& a : num) {
        for (const auto& b : den) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (g != 1) continue;
            for (int s : {1, -1}) {
                Rational r(a * s, b);
                if (rp.sign_at(r) == 0) roots.push_back(r);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_irreducible_cubic(const IntPoly& p) {
    require(p.degree() == 2 || p.degree() == 3, ErrorKind::UnsupportedDegree,
            "irreducibility test supports degree 2 or 3, got " + std::to_string(p.degree()));
    return rational_roots(p).empty();
}

}  // namespace flatstrat
