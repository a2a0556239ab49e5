#include <asymnet/dot_export.hpp>

#include <asymnet/csv.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace asymnet {

void ExportStyle::validate() const
{
    if (!(width_min < width_max))
        throw std::invalid_argument("export style: width_min must be < width_max");
    if (node_base < 0.0 || node_per_degree < 0.0)
        throw std::invalid_argument("export style: node scale must be non-negative");
    if (highlight.empty())
        throw std::invalid_argument("export style: empty highlight color");
}

namespace {

std::string dot_id(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string export_dot(const InteractionGraph& g, const NormalizedMatrix& nm, std::span<const TriadVerdict> verdicts,
                       const ExportStyle& style)
{
    style.validate();
    const Feature f = style.feature;

    std::set<Edge> highlighted;
    for (const auto& v : verdicts) {
        if (!v.balanced())
            continue;
        const auto& t = v.triangle;
        highlighted.insert({t.a, t.b});
        highlighted.insert({t.a, t.c});
        highlighted.insert({t.b, t.c});
    }

    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (VertexId u = 0; u < g.vertex_count(); ++u)
        for (VertexId v : g.neighbors(u))
            if (auto x = nm.normalized({g.name(u), g.name(v)}, f)) {
                lo = any ? std::min(lo, *x) : *x;
                hi = any ? std::max(hi, *x) : *x;
                any = true;
            }
    auto width_of = [&](double x) {
        if (hi == lo)
            return (style.width_min + style.width_max) / 2.0;
        return style.width_min + (x - lo) / (hi - lo) * (style.width_max - style.width_min);
    };

    std::string out;
    out += "digraph asymnet {\n";
    out += fmt::format("  graph [feature={}];\n", dot_id(to_string(f)));
    out += "  node [shape=circle, fixedsize=true, label=\"\"];\n";
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto d = degree(g, u);
        out += fmt::format("  {} [width=\"{:.4f}\", degree=\"{}\"];\n", dot_id(g.name(u)),
                           style.node_base + style.node_per_degree * static_cast<double>(d), d);
    }
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        for (VertexId v : g.neighbors(u)) {
            auto x = nm.normalized({g.name(u), g.name(v)}, f);
            std::string attrs;
            if (x)
                attrs = fmt::format("penwidth=\"{:.4f}\", value=\"{}\"", width_of(*x), csv::format_double(*x));
            else
                attrs = fmt::format("penwidth=\"{:.4f}\", nodata=\"true\"", style.width_min);
            if (highlighted.count({std::min(u, v), std::max(u, v)}))
                attrs += fmt::format(", color={}", dot_id(style.highlight));
            out += fmt::format("  {} -> {} [{}];\n", dot_id(g.name(u)), dot_id(g.name(v)), attrs);
        }
    }
    out += "}\n";
    return out;
}

} // namespace asymnet
