#include "flatstrat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "flatstrat/io.hpp"

namespace flatstrat {

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kColors = 10;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '<') r += "&lt;";
        else if (c == '>') r += "&gt;";
        else if (c == '&') r += "&amp;";
        else if (c == '"') r += "&quot;";
        else r += c;
    }
    return r;
}

struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

}  // namespace

std::string render_svg(const TranslationSurface& S, const std::vector<SvgOverlay>& overlays, const std::string& title) {
    const auto& polys = S.polygons();
    std::vector<Box> boxes;
    double total = 0, height = 0;
    for (const auto& P : polys) {
        Box b{1e300, 1e300, -1e300, -1e300};
        for (const auto& p : P.vertices) {
            double x = p.x.to_double(), y = p.y.to_double();
            b.x0 = std::min(b.x0, x);
            b.y0 = std::min(b.y0, y);
            b.x1 = std::max(b.x1, x);
            b.y1 = std::max(b.y1, y);
        }
        boxes.push_back(b);
        total += b.x1 - b.x0;
        height = std::max(height, b.y1 - b.y0);
    }
    double gap = 0.15 * std::max(total / static_cast<double>(polys.size()), height);
    total += gap * static_cast<double>(polys.size() - 1);
    const double width_px = 800, margin = 30;
    double scale = std::min((width_px - 2 * margin) / total, 600.0 / height);
    double top = title.empty() ? margin : margin + 20;
    double height_px = height * scale + top + margin;

    std::vector<double> shift;
    double cursor = 0;
    for (const auto& b : boxes) {
        shift.push_back(cursor - b.x0);
        cursor += b.x1 - b.x0 + gap;
    }
    auto X = [&](int poly, double x) { return margin + (x + shift[static_cast<size_t>(poly)]) * scale; };
    auto Y = [&](int poly, double y) { return top + (boxes[static_cast<size_t>(poly)].y1 - y) * scale; };

    std::map<EdgeRef, std::pair<int, EdgeRef>> glue;
    int g = 0;
    for (const auto& [a, b] : S.gluings()) {
        glue[a] = {g, b};
        glue[b] = {g, a};
        ++g;
    }

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_px) << "\" height=\"" << num(height_px)
       << "\" viewBox=\"0 0 " << num(width_px) << ' ' << num(height_px) << "\">\n";
    std::string field = "";
    for (const auto& P : polys)
        for (const auto& p : P.vertices)
            if (field.empty() && !p.x.is_rational()) field = p.x.field().describe();
            else if (field.empty() && !p.y.is_rational()) field = p.y.field().describe();
    if (!field.empty()) os << "  <metadata data-field=\"" << escape(field) << "\"/>\n";
    if (!title.empty())
        os << "  <text x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" font-family=\"sans-serif\" font-size=\"14\">"
           << escape(title) << "</text>\n";

    for (size_t i = 0; i < polys.size(); ++i) {
        int pi = static_cast<int>(i);
        const Polygon& P = polys[i];
        os << "  <g class=\"polygon\" data-name=\"P" << i + 1 << "\">\n    <polygon points=\"";
        for (int k = 0; k < P.size(); ++k)
            os << (k ? " " : "") << num(X(pi, P.vertex(k).x.to_double())) << ',' << num(Y(pi, P.vertex(k).y.to_double()));
        os << "\" fill=\"#f4f4f4\" stroke=\"none\"/>\n";
        for (int k = 0; k < P.size(); ++k) {
            double ax = X(pi, P.vertex(k).x.to_double()), ay = Y(pi, P.vertex(k).y.to_double());
            double bx = X(pi, P.vertex(k + 1).x.to_double()), by = Y(pi, P.vertex(k + 1).y.to_double());
            auto it = glue.find(EdgeRef{pi, k});
            int id = it == glue.end() ? -1 : it->second.first;
            const char* color = id < 0 ? "#000000" : kPalette[id % kColors];
            os << "    <line class=\"edge\" data-edge=\"P" << i + 1 << ".e" << k << "\"";
            if (id >= 0) os << " data-glued=\"P" << it->second.second.poly + 1 << ".e" << it->second.second.edge << "\"";
            os << " x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\"" << num(bx) << "\" y2=\"" << num(by)
               << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            if (id < 0) continue;
            double dx = bx - ax, dy = by - ay, len = std::hypot(dx, dy);
            if (len == 0) continue;
            double ux = dx / len, uy = dy / len, nx = -uy * 5, ny = ux * 5;
            int ticks = id / kColors + 1;
            for (int t = 0; t < ticks; ++t) {
                double o = (t - (ticks - 1) / 2.0) * 4;
                double cx = (ax + bx) / 2 + ux * o, cy = (ay + by) / 2 + uy * o;
                os << "    <line class=\"tick\" x1=\"" << num(cx - nx) << "\" y1=\"" << num(cy - ny) << "\" x2=\""
                   << num(cx + nx) << "\" y2=\"" << num(cy + ny) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
            }
        }
        for (int k = 0; k < P.size(); ++k)
            os << "    <circle class=\"vertex\" data-index=\"" << k << "\" data-x=\"" << escape(write_scalar(P.vertex(k).x))
               << "\" data-y=\"" << escape(write_scalar(P.vertex(k).y)) << "\" cx=\"" << num(X(pi, P.vertex(k).x.to_double()))
               << "\" cy=\"" << num(Y(pi, P.vertex(k).y.to_double())) << "\" r=\"2.5\" fill=\"#000000\"/>\n";
        os << "  </g>\n";
    }

    if (!overlays.empty()) {
        const Atlas& A = S.atlas();
        for (const auto& ov : overlays) {
            os << "  <g class=\"saddle-connection\" data-label=\"" << escape(ov.label) << "\" data-holonomy=\"("
               << escape(write_scalar(ov.path.holonomy.x)) << ", " << escape(write_scalar(ov.path.holonomy.y)) << ")\">\n";
            for (const auto& s : ov.path.segments) {
                int poly = A.tri(s.tri).poly;
                os << "    <line x1=\"" << num(X(poly, s.from.x.to_double())) << "\" y1=\"" << num(Y(poly, s.from.y.to_double()))
                   << "\" x2=\"" << num(X(poly, s.to.x.to_double())) << "\" y2=\"" << num(Y(poly, s.to.y.to_double()))
                   << "\" stroke=\"" << ov.color << "\" stroke-width=\"1.5\" stroke-dasharray=\"4 2\"/>\n";
            }
            if (!ov.path.segments.empty() && !ov.label.empty()) {
                const auto& s = ov.path.segments.front();
                int poly = A.tri(s.tri).poly;
                double mx = (s.from.x.to_double() + s.to.x.to_double()) / 2, my = (s.from.y.to_double() + s.to.y.to_double()) / 2;
                os << "    <text x=\"" << num(X(poly, mx) + 3) << "\" y=\"" << num(Y(poly, my) - 3)
                   << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << ov.color << "\">" << escape(ov.label)
                   << "</text>\n";
            }
            os << "  </g>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace flatstrat
