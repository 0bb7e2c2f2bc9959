#include "flatstrat/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "flatstrat/error.hpp"

namespace flatstrat {

namespace {

struct Token {
    std::string text;
    int line = 0;
    bool punct = false;
};

[[noreturn]] void rethrow_at(int line, const Error& e) {
    std::string what = e.what();
    what = what.substr(std::min(what.size(), to_string(e.kind()).size() + 2));
    throw Error(e.kind(), "line " + std::to_string(line) + ": " + what);
}

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '/' || c == '+' || c == '-';
}

class Parser {
public:
    explicit Parser(const std::string& text) {
        int line = 1;
        for (size_t i = 0; i < text.size();) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                ++i;
            } else if (c == '#') {
                while (i < text.size() && text[i] != '\n') ++i;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (std::string("()[],=").find(c) != std::string::npos) {
                toks_.push_back({std::string(1, c), line, true});
                ++i;
            } else if (word_char(c)) {
                size_t j = i;
                while (j < text.size() && word_char(text[j])) ++j;
                toks_.push_back({text.substr(i, j - i), line, false});
                i = j;
            } else {
                fail_at(line, std::string("unexpected character '") + c + "'");
            }
        }
        last_line_ = toks_.empty() ? line : toks_.back().line;
    }

    bool done() const { return pos_ >= toks_.size(); }
    int line() const { return done() ? last_line_ : toks_[pos_].line; }
    [[noreturn]] void fail(const std::string& what) const { fail_at(line(), what); }
    [[noreturn]] static void fail_at(int line, const std::string& what) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
    }

    bool at(const std::string& s) const { return !done() && toks_[pos_].text == s; }
    bool at_punct(char c) const { return !done() && toks_[pos_].punct && toks_[pos_].text[0] == c; }

    std::string word() {
        if (done() || toks_[pos_].punct) fail(done() ? "unexpected end of input" : "expected a word, found '" + toks_[pos_].text + "'");
        return toks_[pos_++].text;
    }
    void expect(const std::string& s) {
        if (!at(s)) fail("expected '" + s + "'" + (done() ? "" : ", found '" + toks_[pos_].text + "'"));
        ++pos_;
    }

    Rational rational() {
        int ln = line();
        std::string w = word();
        static const std::regex re(R"([+-]?[0-9]+(/[0-9]+)?)");
        if (!std::regex_match(w, re)) fail_at(ln, "malformed rational '" + w + "'");
        Rational q;
        q.set_str(w[0] == '+' ? w.substr(1) : w, 10);
        if (q.get_den() == 0) fail_at(ln, "zero denominator in '" + w + "'");
        q.canonicalize();
        return q;
    }

    Integer integer() {
        int ln = line();
        Rational q = rational();
        if (q.get_den() != 1) fail_at(ln, "expected an integer");
        return q.get_num();
    }

    void field() {
        int ln = line();
        expect("field");
        expect("poly");
        expect("(");
        std::vector<Integer> c{integer()};
        while (at(",")) {
            ++pos_;
            c.push_back(integer());
        }
        expect(")");
        expect("root");
        expect("in");
        expect("[");
        Rational lo = rational();
        expect(",");
        Rational hi = rational();
        expect("]");
        try {
            K_ = RealNumberField::create(IntPoly(c), lo, hi);
        } catch (const Error& e) {
            rethrow_at(ln, e);
        }
    }

    FieldElement scalar() {
        if (!at("[")) return FieldElement(rational());
        int ln = line();
        ++pos_;
        std::vector<Rational> c{rational()};
        while (at(",")) {
            ++pos_;
            c.push_back(rational());
        }
        expect("]");
        if (!K_) fail_at(ln, "coordinate vector without a field declaration");
        if (static_cast<int>(c.size()) != K_->degree())
            fail_at(ln, "coordinate vector of length " + std::to_string(c.size()) + " in a field of degree " +
                            std::to_string(K_->degree()));
        return FieldElement(*K_, c);
    }

    Vec2 point() {
        expect("(");
        FieldElement x = scalar();
        expect(",");
        FieldElement y = scalar();
        expect(")");
        return {x, y};
    }

    void set_field(const std::optional<RealNumberField>& K) { K_ = K; }

    void maybe_field() {
        if (at("field")) field();
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    int last_line_ = 1;
    std::optional<RealNumberField> K_;
};

std::optional<RealNumberField> field_of(const std::vector<FieldElement>& xs) {
    std::optional<RealNumberField> K;
    for (const auto& x : xs) {
        if (x.is_rational()) continue;
        if (!K) K = x.field();
        require(K->same_as(x.field()), ErrorKind::FieldMismatch, "coordinates from two different fields");
    }
    return K;
}

std::string field_line(const RealNumberField& K) {
    std::ostringstream os;
    os << "field poly(";
    const auto& c = K.minpoly().coeffs();
    for (size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].get_str();
    Interval iv = K.isolating_interval();
    os << ") root in [" << to_string(iv.lo) << ", " << to_string(iv.hi) << "]\n";
    return os.str();
}

std::string point(const Vec2& p) { return "(" + write_scalar(p.x) + ", " + write_scalar(p.y) + ")"; }

std::string with_field(const std::vector<FieldElement>& xs, const std::string& body) {
    auto K = field_of(xs);
    return (K ? field_line(*K) : std::string()) + body;
}

}  // namespace

std::string write_scalar(const FieldElement& x) {
    if (x.is_rational()) return to_string(x.to_rational());
    std::string s = "[";
    for (size_t i = 0; i < x.coords().size(); ++i) s += (i ? ", " : "") + to_string(x.coords()[i]);
    return s + "]";
}

FieldElement parse_scalar(const std::string& text, const std::optional<RealNumberField>& K) {
    Parser P(text);
    P.set_field(K);
    FieldElement x = P.scalar();
    if (!P.done()) P.fail("trailing input after the scalar");
    return x;
}

Vec2 parse_point(const std::string& text, const std::optional<RealNumberField>& K) {
    Parser P(text.find('(') == std::string::npos ? "(" + text + ")" : text);
    P.set_field(K);
    Vec2 p = P.point();
    if (!P.done()) P.fail("trailing input after the point");
    return p;
}

TranslationSurface parse_surface(const std::string& text) {
    Parser P(text);
    P.maybe_field();
    std::vector<Polygon> polys;
    std::map<std::string, int> names;
    std::vector<std::pair<EdgeRef, EdgeRef>> glue;
    auto edge_ref = [&](int ln, const std::string& w) {
        auto dot = w.rfind(".e");
        if (dot == std::string::npos) Parser::fail_at(ln, "expected NAME.eK, found '" + w + "'");
        auto it = names.find(w.substr(0, dot));
        if (it == names.end()) Parser::fail_at(ln, "unknown polygon '" + w.substr(0, dot) + "'");
        std::string k = w.substr(dot + 2);
        if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos)
            Parser::fail_at(ln, "malformed edge index in '" + w + "'");
        int e = std::stoi(k);
        if (e >= polys[static_cast<size_t>(it->second)].size())
            Parser::fail_at(ln, "edge index out of range in '" + w + "'");
        return EdgeRef{it->second, e};
    };
    while (!P.done()) {
        int ln = P.line();
        if (P.at("polygon")) {
            P.expect("polygon");
            std::string name = P.word();
            if (names.count(name)) Parser::fail_at(ln, "duplicate polygon '" + name + "'");
            P.expect("=");
            Polygon poly;
            while (P.at("(")) poly.vertices.push_back(P.point());
            if (poly.size() < 3) Parser::fail_at(ln, "polygon needs at least three vertices");
            names[name] = static_cast<int>(polys.size());
            polys.push_back(std::move(poly));
        } else if (P.at("glue")) {
            P.expect("glue");
            EdgeRef a = edge_ref(ln, P.word());
            EdgeRef b = edge_ref(ln, P.word());
            glue.push_back({a, b});
        } else if (P.at("field")) {
            P.fail("the field must be declared before any polygon");
        } else {
            Parser::fail_at(ln, "expected 'polygon' or 'glue', found '" + P.word() + "'");
        }
    }
    if (polys.empty()) P.fail("no polygons");
    TranslationSurface S(std::move(polys), std::move(glue));
    validate(S);
    return S;
}

SplittingDatum parse_splitting(const std::string& text) {
    Parser P(text);
    P.maybe_field();
    P.expect("splitting");
    MarkedTorus T[3];
    for (int i = 0; i < 3; ++i) {
        int ln = P.line();
        P.expect("torus");
        std::string name = P.word();
        if (name != "T" + std::to_string(i + 1)) Parser::fail_at(ln, "expected torus T" + std::to_string(i + 1));
        P.expect("basis");
        Vec2 u = P.point(), w = P.point();
        P.expect("marked");
        std::vector<Vec2> marked{P.point()};
        while (P.at("(")) marked.push_back(P.point());
        try {
            T[i] = MarkedTorus(Lattice(u, w), marked);
        } catch (const Error& e) {
            rethrow_at(ln, e);
        }
        int want = i == 0 ? 1 : 2;
        if (T[i].marked_count() != want)
            Parser::fail_at(ln, name + " needs " + std::to_string(want) + " marked point" + (want > 1 ? "s" : "") +
                                    " counting the origin");
    }
    P.expect("v1");
    Vec2 v1 = P.point();
    P.expect("v2");
    Vec2 v2 = P.point();
    P.expect("end");
    if (!P.done()) P.fail("trailing input after 'end'");
    return {T[0], T[1], T[2], v1, v2};
}

CylinderDiagram parse_diagram(const std::string& text) {
    Parser P(text);
    P.maybe_field();
    P.expect("diagram");
    CylinderDiagram D;
    int ln = P.line();
    std::string m = P.word();
    if (m == "caseI") D.model = DiagramModel::CaseI;
    else if (m == "caseII") D.model = DiagramModel::CaseII;
    else Parser::fail_at(ln, "expected caseI or caseII, found '" + m + "'");
    P.expect("widths");
    for (auto& x : D.widths) x = P.scalar();
    P.expect("heights");
    for (auto& x : D.heights) x = P.scalar();
    P.expect("twists");
    for (auto& x : D.twists) x = P.scalar();
    if (!P.done()) P.fail("trailing input after the diagram");
    return D;
}

std::string write_surface(const TranslationSurface& S) {
    std::vector<FieldElement> xs;
    std::ostringstream os;
    for (size_t i = 0; i < S.polygons().size(); ++i) {
        os << "polygon P" << i + 1 << " =";
        for (const auto& p : S.polygon(static_cast<int>(i)).vertices) {
            os << ' ' << point(p);
            xs.push_back(p.x);
            xs.push_back(p.y);
        }
        os << '\n';
    }
    for (const auto& [a, b] : S.gluings())
        os << "glue P" << a.poly + 1 << ".e" << a.edge << " P" << b.poly + 1 << ".e" << b.edge << '\n';
    return with_field(xs, os.str());
}

std::string write_splitting(const SplittingDatum& X) {
    std::vector<FieldElement> xs;
    auto note = [&](const Vec2& p) {
        xs.push_back(p.x);
        xs.push_back(p.y);
        return point(p);
    };
    std::ostringstream os;
    os << "splitting\n";
    const MarkedTorus* T[3] = {&X.T1, &X.T2, &X.T3};
    for (int i = 0; i < 3; ++i) {
        os << "  torus T" << i + 1 << " basis " << note(T[i]->lattice.u) << ' ' << note(T[i]->lattice.v) << " marked";
        for (const auto& o : T[i]->marked_offsets) os << ' ' << note(o);
        os << '\n';
    }
    os << "  v1 " << note(X.v1) << "\n  v2 " << note(X.v2) << "\nend\n";
    return with_field(xs, os.str());
}

std::string write_diagram(const CylinderDiagram& D) {
    std::vector<FieldElement> xs;
    std::ostringstream os;
    os << "diagram " << (D.model == DiagramModel::CaseI ? "caseI" : "caseII");
    auto row = [&](const char* name, const FieldElement* v) {
        os << "\n  " << name;
        for (int i = 0; i < 3; ++i) {
            os << ' ' << write_scalar(v[i]);
            xs.push_back(v[i]);
        }
    };
    row("widths", D.widths);
    row("heights", D.heights);
    row("twists", D.twists);
    os << '\n';
    return with_field(xs, os.str());
}

LoadedInput parse_input(const std::string& text, const std::string& path) {
    auto ends = [&](const std::string& ext) {
        return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
    };
    if (ends(".surf")) return parse_surface(text);
    if (ends(".split")) return parse_splitting(text);
    if (ends(".diag")) return parse_diagram(text);
    fail(ErrorKind::InvalidInput, "unknown file extension for '" + path + "' (expected .surf, .split or .diag)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace flatstrat
