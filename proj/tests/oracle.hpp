#pragma once

// Independent high-precision oracles for tests: floating evaluation with 100 decimal digits,
// entirely separate from the exact interval machinery under test.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>
#include <vector>

#include "flatstrat/field.hpp"

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;

inline Big to_big(const flatstrat::Rational& q) {
    return Big(q.get_num().get_str()) / Big(q.get_den().get_str());
}

// Root of an integer polynomial by bisection on [lo, hi] in 100-digit floating point.
inline Big root(const flatstrat::IntPoly& p, const flatstrat::Rational& lo, const flatstrat::Rational& hi) {
    auto eval = [&](const Big& x) {
        Big r = 0;
        for (int i = p.degree(); i >= 0; --i) r = r * x + Big(p.coeff(i).get_str());
        return r;
    };
    Big a = to_big(lo), b = to_big(hi);
    Big fa = eval(a);
    if (fa == 0) return a;
    for (int it = 0; it < 400; ++it) {
        Big m = (a + b) / 2;
        Big fm = eval(m);
        if (fm == 0) return m;
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return (a + b) / 2;
}

inline Big value(const flatstrat::FieldElement& x, const Big& generator) {
    Big r = 0;
    const auto& c = x.coords();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * generator + to_big(c[static_cast<size_t>(i)]);
    return r;
}

inline flatstrat::Rational random_rational(std::mt19937_64& rng, long num_bound, long den_bound) {
    std::uniform_int_distribution<long> n(-num_bound, num_bound), d(1, den_bound);
    flatstrat::Rational q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline flatstrat::FieldElement random_element(std::mt19937_64& rng, const flatstrat::RealNumberField& K,
                                              long num_bound = 50, long den_bound = 20) {
    std::vector<flatstrat::Rational> c;
    for (int i = 0; i < K.degree(); ++i) c.push_back(random_rational(rng, num_bound, den_bound));
    return flatstrat::FieldElement(K, c);
}

}  // namespace oracle
