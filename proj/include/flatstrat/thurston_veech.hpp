#pragma once

#include <string>
#include <vector>

#include "flatstrat/cylinders.hpp"
#include "flatstrat/field.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

// Parameters of the cubic construction; the middle cylinder is fixed to width and height 1.
struct TVParams {
    long n = 2;
    Rational a = 1;
    Rational b = 1;
    long c = 1;

    std::string to_string() const;
};

struct TVSolution {
    TVParams params;
    RatPoly P;
    IntPoly Ptilde;
    std::vector<Interval> qualifying;  // isolating intervals of every root passing both tests
    RealNumberField field;
    FieldElement alpha, l1, h1, l3, h3;
};

struct TVPolynomials {
    RatPoly P;
    IntPoly Ptilde;
};

TVPolynomials tv_polynomial(const TVParams& p);
TVSolution tv_solve(const TVParams& p);
CylinderDiagram tv_diagram(const TVSolution& s);
TranslationSurface tv_build(const TVSolution& s);

// Holonomies of the two parallel saddle-connection pairs crossing the horizontal cylinders.
Vec2 tv_sigma1(const TVSolution& s);
Vec2 tv_sigma2(const TVSolution& s);

struct TVCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct TVCertificates {
    std::vector<TVCheck> checks;
    std::vector<FieldElement> vertical_moduli;  // C1, C2, C3 of the vertical diagram
    std::vector<FieldElement> sigma_moduli;     // C1', C2', C3' in direction sigma1
    bool all_ok() const;
};

TVCertificates tv_verify(const TVSolution& s, const TranslationSurface& S, int budget);

// The six parameter rows of the published table, in order.
std::vector<TVParams> tv_table_rows();

struct TVRow {
    TVSolution solution;
    TVCertificates certificates;
};

std::vector<TVRow> tv_table(int budget, int jobs = 1);
std::string render_tv_table(const std::vector<TVRow>& rows, bool csv);

}  // namespace flatstrat
