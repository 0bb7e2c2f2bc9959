#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatstrat/field.hpp"
#include "flatstrat/planar.hpp"
#include "flatstrat/surface.hpp"

namespace flatstrat {

// T1 carries one marked point, T2 and T3 two.
struct SplittingDatum {
    MarkedTorus T1, T2, T3;
    Vec2 v1, v2;
};

struct SpecialSplittingParams {
    FieldElement A1, A2, A3;
    FieldElement alpha;  // |v2| / |v1|
    FieldElement m1, m2, mbar;
    std::optional<FieldElement> t1, t2;  // only when v1 is horizontal
};

struct SplittingReport {
    bool special = false;
    Vec2 w;  // Λ2 = Z(v1 + v2) + Z w with both wedge bounds
    std::optional<SpecialSplittingParams> params;
};

// Throws NotInLattice, NotPrimitive or WedgeBoundViolated naming the failed condition.
SplittingReport validate_splitting(const SplittingDatum& X);

// Segment from a marked point along s avoids both marked points in its interior.
bool segment_is_clear(const Vec2& s, const Lattice& L);

SplittingDatum transformed(const SplittingDatum& X, const Mat2& M);
// Unimodular shear (after a quarter turn when v1 is vertical) making v1 horizontal and rightward.
Mat2 horizontal_normal_form(const Vec2& v1);

TranslationSurface psi_build(const SplittingDatum& X);

SpecialSplittingParams moduli_and_twists(const SplittingDatum& X);

struct DualSplittingDatum {
    MarkedTorus T1, T2, T3;
    Vec2 w1, w2;

    SplittingDatum as_splitting() const { return {T1, T2, T3, w1, w2}; }
};

// Dual along a primitive w1 of Λ3 with 0 < |w1∧v2| < Aa(T3) and a completion w2 of v1 + v2 in Λ2.
// Without w2 a completion is chosen; the orientation of w1 is matched to w2.
DualSplittingDatum dual_splitting(const SplittingDatum& X, const Vec2& w1, const std::optional<Vec2>& w2 = {});

bool dual_area_check(const SplittingDatum& X, const DualSplittingDatum& Xd);

struct CheckResult {
    bool ok = false;
    std::string diagnostic;
};

CheckResult theorem_B_check(const SplittingDatum& X);
// Throws NotSpecial on non-special input.
CheckResult theorem_C_check(const SplittingDatum& X);

struct ResplitTarget {
    FieldElement A1, A2, A3, alpha;
};

struct NamedCheck {
    std::string name;
    bool ok = false;
};

struct ResplitResult {
    Integer p, q;
    FieldElement x, y, z;
    Vec2 u1, w1, w2, v1p, v2p;
    SplittingDatum base;  // X with the twists and T3 used by the construction
    DualSplittingDatum dual;
    SplittingDatum resplit;  // the new special splitting with the target parameters
    std::vector<NamedCheck> checks;

    bool all_ok() const;
};

// X normalized with v1 = (1,0), v2 = (α0,0) and total area 1.
ResplitResult resplit_claim1(const SplittingDatum& X, const ResplitTarget& target, long search_bound = 1000000);

struct WitnessResult {
    bool vertical_case = false;  // irrational t1: the dual itself is the witness
    Integer p, q;
    FieldElement A1, A2, A3, alpha, lambda;
    FieldElement l, h, h3;
    Vec2 w1, w2, v1p, v2p, u1hat;
    SplittingDatum base;
    DualSplittingDatum dual;
    SplittingDatum witness;
    std::vector<NamedCheck> checks;

    bool all_ok() const;
};

// X special, normalized as for resplit_claim1, with rational mbar and t2 = 0.
WitnessResult theorem_B_witness(const SplittingDatum& X, long search_bound = 1000000);

}  // namespace flatstrat
