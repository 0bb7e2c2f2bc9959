#include "flatstrat/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "flatstrat/io.hpp"

namespace flatstrat {

namespace {

std::string dec(const FieldElement& x) { return x.approximate(12); }

std::string pt(const Vec2& p) { return "(" + write_scalar(p.x) + ", " + write_scalar(p.y) + ")"; }

std::string both(const FieldElement& x) {
    std::string e = write_scalar(x);
    std::string d = dec(x);
    return x.is_rational() && x.to_rational().get_den() == 1 ? e : e + " ~ " + d;
}

Json scalars(const std::vector<FieldElement>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(scalar_json(x));
    return a;
}

Json splitting_data(const SplittingDatum& X) {
    Json j = Json::object();
    const MarkedTorus* T[3] = {&X.T1, &X.T2, &X.T3};
    for (int i = 0; i < 3; ++i) {
        Json t = {{"basis", {vec_json(T[i]->lattice.u), vec_json(T[i]->lattice.v)}},
                  {"marked", Json::array()},
                  {"area", scalar_json(T[i]->area().sign() < 0 ? -T[i]->area() : T[i]->area())}};
        for (const auto& o : T[i]->marked_offsets) t["marked"].push_back(vec_json(o));
        j["T" + std::to_string(i + 1)] = t;
    }
    j["v1"] = vec_json(X.v1);
    j["v2"] = vec_json(X.v2);
    return j;
}

}  // namespace

Json scalar_json(const FieldElement& x) { return {{"exact", write_scalar(x)}, {"decimal", dec(x)}}; }

Json vec_json(const Vec2& p) { return Json::array({scalar_json(p.x), scalar_json(p.y)}); }

Json cone_json(const ConeReport& R) {
    Json classes = Json::array();
    for (const auto& c : R.classes) classes.push_back({{"k", c.angle_multiplier}, {"corners", c.corners.size()}});
    return {{"genus", R.genus}, {"stratum", R.stratum()}, {"area", scalar_json(R.area)}, {"classes", classes}};
}

Json diagram_json(const CylinderDiagram& D) {
    return {{"model", to_string(D.model)},
            {"widths", scalars({D.widths[0], D.widths[1], D.widths[2]})},
            {"heights", scalars({D.heights[0], D.heights[1], D.heights[2]})},
            {"twists", scalars({D.twists[0], D.twists[1], D.twists[2]})},
            {"area", scalar_json(D.area())}};
}

Json decomposition_json(const Decomposition& D) {
    Json scs = Json::array();
    for (const auto& s : D.saddle_connections)
        scs.push_back({{"holonomy", vec_json(s.holonomy)}, {"length", scalar_json(s.length)}});
    Json cyls = Json::array();
    for (const auto& c : D.cylinders)
        cyls.push_back({{"circumference", vec_json(c.circumference)},
                        {"width", scalar_json(c.width)},
                        {"height", scalar_json(c.height)},
                        {"area", scalar_json(c.area)},
                        {"modulus", scalar_json(c.modulus)},
                        {"twist", scalar_json(c.twist)},
                        {"bottom", c.bottom},
                        {"top", c.top},
                        {"simple", c.simple()}});
    Json j = {{"direction", vec_json(D.direction)},
              {"area", scalar_json(D.area)},
              {"saddle_connections", scs},
              {"cylinders", cyls}};
    if (auto R = recognize_diagram(D)) j["diagram"] = diagram_json(*R);
    return j;
}

Json splitting_json(const SplittingDatum& X, const SplittingReport& R) {
    Json j = splitting_data(X);
    j["special"] = R.special;
    j["w"] = vec_json(R.w);
    if (R.params) {
        const auto& p = *R.params;
        Json q = {{"A1", scalar_json(p.A1)}, {"A2", scalar_json(p.A2)}, {"A3", scalar_json(p.A3)},
                  {"alpha", scalar_json(p.alpha)}, {"m1", scalar_json(p.m1)}, {"m2", scalar_json(p.m2)},
                  {"mbar", scalar_json(p.mbar)}};
        if (p.t1) q["t1"] = scalar_json(*p.t1);
        if (p.t2) q["t2"] = scalar_json(*p.t2);
        j["params"] = q;
    }
    return j;
}

Json theorem_a_json(const TheoremADecomposition& T) {
    Json pairs = Json::array();
    for (const auto& [a, b] : T.pairs) {
        const SCPath& p = T.set.entries[static_cast<size_t>(a)];
        pairs.push_back({{"entries", {a, b}}, {"holonomy", vec_json(p.holonomy)}});
    }
    Json areas = Json::array();
    const char* names[5] = {"C(d1)", "P(d1,d2)", "P(d2,d3)", "P(d3,d4)", "C(d4)"};
    for (int i = 0; i < 5; ++i) areas.push_back({{"component", names[i]}, {"area", scalar_json(T.areas[static_cast<size_t>(i)])}});
    return {{"bound", scalar_json(T.set.bound)},
            {"saddle_connections_examined", T.set.entries.size()},
            {"pairs", pairs},
            {"components", areas},
            {"splitting", splitting_data(T.splitting)}};
}

Json certificate_json(const Certificate& C) {
    Json w = Json::array();
    for (const auto& c : C.witness) w.push_back(c.get_str());
    return {{"ok", C.ok}, {"moduli", scalars(C.moduli)}, {"witness", w}, {"diagnostic", C.diagnostic}};
}

Json tv_json(const TVSolution& s, const TVCertificates& C) {
    Json checks = Json::array();
    for (const auto& c : C.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    Json roots = Json::array();
    for (const auto& iv : s.qualifying) roots.push_back({to_string(iv.lo), to_string(iv.hi)});
    return {{"params", {{"n", s.params.n}, {"a", to_string(s.params.a)}, {"b", to_string(s.params.b)}, {"c", s.params.c}}},
            {"Ptilde", s.Ptilde.to_string()},
            {"qualifying_roots", roots},
            {"field", s.field.describe()},
            {"alpha", scalar_json(s.alpha)},
            {"l1", scalar_json(s.l1)},
            {"h1", scalar_json(s.h1)},
            {"l3", scalar_json(s.l3)},
            {"h3", scalar_json(s.h3)},
            {"sigma1", vec_json(tv_sigma1(s))},
            {"sigma2", vec_json(tv_sigma2(s))},
            {"vertical_moduli", scalars(C.vertical_moduli)},
            {"sigma_moduli", scalars(C.sigma_moduli)},
            {"checks", checks},
            {"all_ok", C.all_ok()}};
}

std::string cone_text(const ConeReport& R) {
    std::ostringstream os;
    os << "genus " << R.genus << "\nvertex classes " << R.classes.size() << ":";
    for (const auto& c : R.classes) os << " k=" << c.angle_multiplier;
    os << "\nstratum H(";
    auto st = R.stratum();
    for (size_t i = 0; i < st.size(); ++i) os << (i ? "," : "") << st[i] - 1;
    os << ")\narea " << both(R.area) << '\n';
    return os.str();
}

std::string diagram_text(const CylinderDiagram& D) {
    std::ostringstream os;
    os << "diagram " << to_string(D.model) << '\n';
    for (int i = 0; i < 3; ++i)
        os << "  C" << i + 1 << ": width " << both(D.widths[i]) << ", height " << both(D.heights[i]) << ", twist "
           << both(D.twists[i]) << '\n';
    os << "area " << both(D.area()) << '\n';
    return os.str();
}

std::string decomposition_text(const Decomposition& D) {
    std::ostringstream os;
    os << "direction " << pt(D.direction) << '\n';
    os << "saddle connections " << D.saddle_connections.size() << '\n';
    for (size_t i = 0; i < D.saddle_connections.size(); ++i)
        os << "  s" << i << ": holonomy " << pt(D.saddle_connections[i].holonomy) << '\n';
    os << "cylinders " << D.cylinders.size() << '\n';
    for (size_t i = 0; i < D.cylinders.size(); ++i) {
        const Cylinder& c = D.cylinders[i];
        os << "  cylinder " << i << (c.simple() ? " (simple)" : "") << ": width " << both(c.width) << ", height "
           << both(c.height) << ", modulus " << both(c.modulus) << ", twist " << both(c.twist) << "\n    bottom";
        for (int s : c.bottom) os << " s" << s;
        os << ", top";
        for (int s : c.top) os << " s" << s;
        os << '\n';
    }
    os << "area " << both(D.area) << '\n';
    if (auto R = recognize_diagram(D)) os << diagram_text(*R);
    return os.str();
}

std::string splitting_text(const SplittingDatum& X, const SplittingReport& R) {
    std::ostringstream os;
    os << "splitting valid\n  v1 " << pt(X.v1) << "\n  v2 " << pt(X.v2) << "\n  w " << pt(R.w) << '\n';
    os << "special " << (R.special ? "yes" : "no") << '\n';
    if (R.params) {
        const auto& p = *R.params;
        os << "  A1 " << both(p.A1) << "\n  A2 " << both(p.A2) << "\n  A3 " << both(p.A3) << "\n  alpha "
           << both(p.alpha) << "\n  m1 " << both(p.m1) << "\n  m2 " << both(p.m2) << "\n  mbar " << both(p.mbar)
           << '\n';
        if (p.t1) os << "  t1 " << both(*p.t1) << '\n';
        if (p.t2) os << "  t2 " << both(*p.t2) << '\n';
    }
    return os.str();
}

std::string theorem_a_text(const TheoremADecomposition& T) {
    std::ostringstream os;
    os << "decomposition found at bound " << write_scalar(T.set.bound) << " (" << T.set.entries.size()
       << " saddle connections)\n";
    for (int i = 0; i < 4; ++i)
        os << "  d" << i + 1 << ": holonomy " << pt(T.set.entries[static_cast<size_t>(T.pairs[static_cast<size_t>(i)].first)].holonomy)
           << '\n';
    const char* names[5] = {"C(d1)", "P(d1,d2)", "P(d2,d3)", "P(d3,d4)", "C(d4)"};
    for (int i = 0; i < 5; ++i) os << "  " << names[i] << " area " << both(T.areas[static_cast<size_t>(i)]) << '\n';
    os << "splitting along d1 and d3\n  v1 " << pt(T.splitting.v1) << "\n  v2 " << pt(T.splitting.v2) << '\n';
    return os.str();
}

std::string tv_text(const TVSolution& s, const TVCertificates& C) {
    std::ostringstream os;
    os << "parameters " << s.params.to_string() << "\nPtilde " << s.Ptilde.to_string() << "\nfield "
       << s.field.describe() << '\n';
    os << "alpha " << s.alpha.approximate(12) << "\nl1 " << s.l1.approximate(12) << "\nh1 " << s.h1.approximate(12)
       << "\nl3 " << s.l3.approximate(12) << "\nh3 " << s.h3.approximate(12) << '\n';
    for (const auto& c : C.checks) os << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    return os.str();
}

std::string field_declaration(const TranslationSurface& S) {
    for (const auto& P : S.polygons())
        for (const auto& p : P.vertices)
            for (const auto* x : {&p.x, &p.y})
                if (!x->is_rational()) return "field " + x->field().describe();
    return "";
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string RunReport::render() const {
    Json j = {{"command", command}};
    if (!input_digest.empty()) j["input_digest"] = input_digest;
    if (!field.empty()) j["field"] = field;
    j["results"] = results;
    if (seconds) j["seconds"] = *seconds;
    return j.dump(2) + "\n";
}

}  // namespace flatstrat
