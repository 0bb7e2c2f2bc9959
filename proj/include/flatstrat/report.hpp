#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "flatstrat/cylinders.hpp"
#include "flatstrat/explorer.hpp"
#include "flatstrat/splitting.hpp"
#include "flatstrat/surface.hpp"
#include "flatstrat/thurston_veech.hpp"

namespace flatstrat {

using Json = nlohmann::ordered_json;

// Exact value as written in input files plus a 12-digit decimal.
Json scalar_json(const FieldElement& x);
Json vec_json(const Vec2& p);
Json cone_json(const ConeReport& R);
Json diagram_json(const CylinderDiagram& D);
Json decomposition_json(const Decomposition& D);
Json splitting_json(const SplittingDatum& X, const SplittingReport& R);
Json theorem_a_json(const TheoremADecomposition& T);
Json certificate_json(const Certificate& C);
Json tv_json(const TVSolution& s, const TVCertificates& C);

std::string cone_text(const ConeReport& R);
std::string diagram_text(const CylinderDiagram& D);
std::string decomposition_text(const Decomposition& D);
std::string splitting_text(const SplittingDatum& X, const SplittingReport& R);
std::string theorem_a_text(const TheoremADecomposition& T);
std::string tv_text(const TVSolution& s, const TVCertificates& C);

// Declaration line of the first irrational field among the coordinates, empty over Q.
std::string field_declaration(const TranslationSurface& S);

// 64-bit FNV-1a as 16 hex digits.
std::string digest(const std::string& bytes);

struct RunReport {
    std::string command;
    std::string input_digest;
    std::string field;  // declaration of the coordinate field, empty over Q
    Json results = Json::object();
    std::optional<double> seconds;  // left out unless timing was requested

    std::string render() const;
};

}  // namespace flatstrat
