#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "flatstrat/cylinders.hpp"
#include "flatstrat/error.hpp"
#include "flatstrat/explorer.hpp"
#include "flatstrat/io.hpp"
#include "flatstrat/report.hpp"
#include "flatstrat/splitting.hpp"
#include "flatstrat/svg.hpp"
#include "flatstrat/thurston_veech.hpp"

using namespace flatstrat;

namespace {

constexpr int kCheckFailed = 2;

struct Options {
    int budget = 0;
    int jobs = 1;
    bool json = false;
    bool timing = false;
    std::string command;
};

struct Loaded {
    std::string path;
    std::string bytes;
    LoadedInput value;
};

Loaded load(const std::string& path) {
    std::string bytes = read_file(path);
    return {path, bytes, parse_input(bytes, path)};
}

TranslationSurface surface_of(const Loaded& in) {
    if (auto* S = std::get_if<TranslationSurface>(&in.value)) return *S;
    if (auto* D = std::get_if<CylinderDiagram>(&in.value)) return build_diagram(*D);
    const auto& X = std::get<SplittingDatum>(in.value);
    validate_splitting(X);
    return psi_build(X);
}

std::optional<RealNumberField> field_of(const TranslationSurface& S) {
    for (const auto& P : S.polygons())
        for (const auto& p : P.vertices) {
            if (!p.x.is_rational()) return p.x.field();
            if (!p.y.is_rational()) return p.y.field();
        }
    return std::nullopt;
}

Vec2 direction(const std::string& text, const TranslationSurface& S, int budget) {
    if (text == "horizontal") return {1, 0};
    if (text == "vertical") return {0, 1};
    if (text == "sigma1") {
        auto D = recognize_diagram(decompose(S, {1, 0}, budget));
        require(D && D->model == DiagramModel::CaseI, ErrorKind::InvalidInput,
                "sigma1 needs a surface whose horizontal decomposition is a Case I diagram");
        return {D->twists[0] * D->widths[0], D->heights[0] + D->heights[1]};
    }
    Vec2 d = parse_point(text, field_of(S));
    require(!d.is_zero(), ErrorKind::InvalidInput, "direction must be nonzero");
    return d;
}

FieldElement default_bound(const TranslationSurface& S) {
    // (sum of diameters)^2 <= n * sum of squared diameters.
    FieldElement sum = 0;
    for (const auto& P : S.polygons()) {
        FieldElement d2 = 0;
        for (const auto& p : P.vertices)
            for (const auto& q : P.vertices) d2 = std::max(d2, dot(p - q, p - q));
        sum += d2;
    }
    return FieldElement(4 * static_cast<long>(S.polygons().size())) * sum;
}

class Runner {
public:
    explicit Runner(const Options& o) : o_(o), start_(std::chrono::steady_clock::now()) { rep_.command = o.command; }

    void input(const Loaded& in) { rep_.input_digest = digest(in.bytes); }
    void field(const TranslationSurface& S) { rep_.field = field_declaration(S); }
    Json& results() { return rep_.results; }
    std::ostringstream& text() { return text_; }

    int finish(int code) {
        if (o_.timing)
            rep_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (o_.json) {
            rep_.results["exit_code"] = code;
            std::cout << rep_.render();
        } else {
            std::cout << text_.str();
            if (rep_.seconds) std::cout << "time " << *rep_.seconds << " s\n";
        }
        return code;
    }

private:
    Options o_;
    std::chrono::steady_clock::time_point start_;
    RunReport rep_;
    std::ostringstream text_;
};

int cmd_validate(const Options& o, const std::string& path) {
    Runner r(o);
    Loaded in = load(path);
    r.input(in);
    if (auto* S = std::get_if<TranslationSurface>(&in.value)) {
        ConeReport R = validate(*S);
        r.field(*S);
        r.results()["kind"] = "surface";
        r.results()["cone"] = cone_json(R);
        r.text() << "surface valid\n" << cone_text(R);
    } else if (auto* D = std::get_if<CylinderDiagram>(&in.value)) {
        check_diagram(*D);
        TranslationSurface S = build_diagram(*D);
        ConeReport R = validate(S);
        r.field(S);
        r.results()["kind"] = "diagram";
        r.results()["diagram"] = diagram_json(*D);
        r.results()["cone"] = cone_json(R);
        r.text() << to_string(D->model) << " valid\n" << diagram_text(*D) << cone_text(R);
    } else {
        const auto& X = std::get<SplittingDatum>(in.value);
        SplittingReport R = validate_splitting(X);
        r.results()["kind"] = "splitting";
        r.results()["splitting"] = splitting_json(X, R);
        r.text() << splitting_text(X, R);
    }
    r.results()["valid"] = true;
    return r.finish(0);
}

int cmd_decompose(const Options& o, const std::string& path, const std::string& dir) {
    Runner r(o);
    Loaded in = load(path);
    r.input(in);
    TranslationSurface S = surface_of(in);
    r.field(S);
    Decomposition D = decompose(S, direction(dir, S, o.budget), o.budget);
    r.results()["decomposition"] = decomposition_json(D);
    r.text() << decomposition_text(D);
    return r.finish(0);
}

bool theorem_c_holds(const SplittingDatum& X) {
    try {
        return theorem_C_check(X).ok;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotSpecial) return false;
        throw;
    }
}

int cmd_check(const Options& o, const std::string& path, const std::string& which, const std::string& bound,
              const std::string& dir) {
    Runner r(o);
    Loaded in = load(path);
    r.input(in);
    r.results()["check"] = which;
    bool ok = false;
    if (which == "corollary-b") {
        TranslationSurface S = surface_of(in);
        r.field(S);
        Vec2 d = direction(dir.empty() ? "horizontal" : dir, S, o.budget);
        Certificate C = corollary_B_check(S, d, o.budget);
        ok = C.ok;
        r.results()["direction"] = vec_json(d);
        r.results()["certificate"] = certificate_json(C);
        r.text() << "direction (" << write_scalar(d.x) << ", " << write_scalar(d.y) << ")\n";
        for (size_t i = 0; i < C.moduli.size(); ++i) r.text() << "  modulus " << i + 1 << ' ' << C.moduli[i].approximate(12) << '\n';
        if (!C.diagnostic.empty()) r.text() << C.diagnostic << '\n';
    } else if (auto* X = std::get_if<SplittingDatum>(&in.value)) {
        CheckResult C = which == "theorem-b" ? theorem_B_check(*X) : theorem_C_check(*X);
        ok = C.ok;
        r.results()["diagnostic"] = C.diagnostic;
        if (!C.diagnostic.empty()) r.text() << C.diagnostic << '\n';
    } else {
        TranslationSurface S = surface_of(in);
        r.field(S);
        FieldElement L2 = bound.empty() ? default_bound(S) : parse_scalar(bound, field_of(S));
        auto accept = [&](const TheoremADecomposition& d) {
            return which == "theorem-b" ? theorem_B_check(d.splitting).ok : theorem_c_holds(d.splitting);
        };
        TheoremADecomposition T = find_theorem_A(S, L2, o.budget, accept);
        ok = true;
        r.results()["decomposition"] = theorem_a_json(T);
        r.text() << theorem_a_text(T);
    }
    r.results()["pass"] = ok;
    r.text() << which << ": " << (ok ? "PASS" : "FAIL") << '\n';
    return r.finish(ok ? 0 : kCheckFailed);
}

int cmd_find_theorem_a(const Options& o, const std::string& path, const std::string& bound, const std::string& svg) {
    Runner r(o);
    Loaded in = load(path);
    r.input(in);
    TranslationSurface S = surface_of(in);
    r.field(S);
    FieldElement L2 = bound.empty() ? default_bound(S) : parse_scalar(bound, field_of(S));
    TheoremADecomposition T = find_theorem_A(S, L2, o.budget);
    r.results()["decomposition"] = theorem_a_json(T);
    r.text() << theorem_a_text(T);
    if (!svg.empty()) {
        const char* colors[4] = {"#c0392b", "#8e44ad", "#16a085", "#d35400"};
        std::vector<SvgOverlay> ov;
        for (int i = 0; i < 4; ++i) {
            auto [a, b] = T.pairs[static_cast<size_t>(i)];
            std::string d = "d" + std::to_string(i + 1);
            ov.push_back({T.set.entries[static_cast<size_t>(a)], d + "+", colors[i]});
            ov.push_back({T.set.entries[static_cast<size_t>(b)], d + "-", colors[i]});
        }
        std::ofstream(svg) << render_svg(S, ov, "Theorem A decomposition");
        r.text() << "wrote " << svg << '\n';
    }
    return r.finish(0);
}

int cmd_tv(const Options& o, const TVParams& p, const std::string& emit) {
    Runner r(o);
    TVSolution s = tv_solve(p);
    TranslationSurface S = tv_build(s);
    if (emit == "surf") {
        std::cout << write_surface(S);
        return 0;
    }
    if (emit == "svg") {
        std::cout << render_svg(S, {}, "TV " + p.to_string());
        return 0;
    }
    TVCertificates C = tv_verify(s, S, o.budget);
    int code = C.all_ok() ? 0 : kCheckFailed;
    if (emit == "json") {
        Options j = o;
        j.json = true;
        Runner rj(j);
        rj.results()["tv"] = tv_json(s, C);
        return rj.finish(code);
    }
    r.text() << tv_text(s, C);
    return r.finish(code);
}

int cmd_tv_table(const Options& o, bool csv) {
    auto rows = tv_table(o.budget, o.jobs);
    std::cout << render_tv_table(rows, csv);
    for (const auto& row : rows)
        if (!row.certificates.all_ok()) return kCheckFailed;
    return 0;
}

int cmd_render(const Options& o, const std::string& path, const std::string& out) {
    (void)o;
    Loaded in = load(path);
    TranslationSurface S = surface_of(in);
    std::string svg = render_svg(S);
    if (out.empty())
        std::cout << svg;
    else
        std::ofstream(out) << svg;
    return 0;
}

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotFoundWithinBound:
    case ErrorKind::NotPeriodicWithinBudget:
    case ErrorKind::SearchExhausted: return 3;
    default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact translation surfaces in the hyperelliptic component of H(4)"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    o.budget = default_budget();
    app.add_option("--budget", o.budget, "edge crossings allowed per trace")->check(CLI::PositiveNumber);
    app.add_option("--jobs", o.jobs, "worker threads for table rows")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json, "machine-readable report");
    app.add_flag("--timing", o.timing, "include wall time in the report");

    std::string path, which, bound, dir, svg_out, out, emit = "text";
    bool csv = false;
    std::string a = "1", b = "1";
    long n = 2, c = 1;

    auto* validate_cmd = app.add_subcommand("validate", "load a .surf, .split or .diag file and run its validator");
    validate_cmd->add_option("path", path)->required();

    auto* decompose_cmd = app.add_subcommand("decompose", "cylinder decomposition in a direction");
    decompose_cmd->add_option("path", path)->required();
    decompose_cmd->add_option("--direction", dir, "p,q or horizontal, vertical, sigma1")->default_val("horizontal");

    auto* check_cmd = app.add_subcommand("check", "certify a hypothesis");
    check_cmd->add_option("path", path)->required();
    check_cmd->add_option("criterion", which)->required()->check(CLI::IsMember({"theorem-b", "theorem-c", "corollary-b"}));
    check_cmd->add_option("--bound", bound, "squared-length bound for the splitting search");
    check_cmd->add_option("--direction", dir, "p,q or horizontal, vertical, sigma1");

    auto* find_cmd = app.add_subcommand("find-theorem-a", "search for a five-component decomposition");
    find_cmd->add_option("--input", path)->required();
    find_cmd->add_option("--bound", bound, "squared-length bound");
    find_cmd->add_option("--svg", svg_out, "write a labeled figure");

    auto* tv_cmd = app.add_subcommand("tv", "cubic Thurston-Veech example");
    tv_cmd->add_option("--n", n)->required();
    tv_cmd->add_option("--a", a)->required();
    tv_cmd->add_option("--b", b)->required();
    tv_cmd->add_option("--c", c)->required();
    tv_cmd->add_option("--emit", emit)->check(CLI::IsMember({"text", "json", "svg", "surf"}));

    auto* table_cmd = app.add_subcommand("tv-table", "the six published rows");
    table_cmd->add_flag("--csv", csv);

    auto* render_cmd = app.add_subcommand("render", "SVG of the polygon family");
    render_cmd->add_option("path", path)->required();
    render_cmd->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    for (int i = 1; i < argc; ++i) o.command += (i > 1 ? " " : "") + std::string(argv[i]);

    try {
        if (*validate_cmd) return cmd_validate(o, path);
        if (*decompose_cmd) return cmd_decompose(o, path, dir);
        if (*check_cmd) return cmd_check(o, path, which, bound, dir);
        if (*find_cmd) return cmd_find_theorem_a(o, path, bound, svg_out);
        if (*tv_cmd) return cmd_tv(o, {n, parse_scalar(a).to_rational(), parse_scalar(b).to_rational(), c}, emit);
        if (*table_cmd) return cmd_tv_table(o, csv);
        if (*render_cmd) return cmd_render(o, path, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    }
    return 1;
}
