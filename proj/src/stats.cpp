#include <asymnet/stats.hpp>

#include <asymnet/csv.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace asymnet {

double pearson(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("pearson: need at least two samples");
    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(xs) || constant(ys))
        throw std::domain_error("pearson: zero variance");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::domain_error("pearson: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CurveSeries bin_curve(std::span<const double> xs, std::span<const double> ys, std::size_t bins)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("bin_curve: length mismatch");
    if (xs.empty())
        throw std::invalid_argument("bin_curve: empty input");
    if (bins < 1)
        throw std::invalid_argument("bin_curve: need at least one bin");

    auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it, hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);

    std::vector<double> sum(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::size_t b = 0;
        if (width > 0.0)
            b = std::min(bins - 1, static_cast<std::size_t>((xs[i] - lo) / width));
        sum[b] += ys[i];
        ++count[b];
    }

    CurveSeries c;
    for (std::size_t b = 0; b < bins; ++b)
        if (count[b])
            c.points.push_back({lo + (static_cast<double>(b) + 0.5) * width,
                                sum[b] / static_cast<double>(count[b]), std::nullopt, std::nullopt});
    return c;
}

std::string_view to_string(StructuralFeature s)
{
    switch (s) {
    case StructuralFeature::degree:
        return "degree";
    case StructuralFeature::clustering:
        return "clustering";
    case StructuralFeature::embeddedness:
        return "embeddedness";
    }
    return "?";
}

std::optional<StructuralFeature> parse_structural_feature(std::string_view s)
{
    for (auto sf : kStructuralFeatures)
        if (to_string(sf) == s)
            return sf;
    return std::nullopt;
}

const CorrelationCell& CorrelationReport::at(StructuralFeature s, Feature f) const
{
    for (const auto& c : cells)
        if (c.structural == s && c.language == f)
            return c;
    throw std::out_of_range("no such report cell");
}

SamplePairs correlation_samples(const StructureTable& st, const NormalizedMatrix& nm, StructuralFeature s,
                                Feature f)
{
    SamplePairs out;
    if (s == StructuralFeature::embeddedness) {
        for (const auto& e : st.edges)
            if (auto a = edge_asymmetry(nm, UnorderedPair::of(e.a, e.b), f)) {
                out.xs.push_back(static_cast<double>(e.embeddedness));
                out.ys.push_back(*a);
            }
        return out;
    }
    for (const auto& v : st.vertices) {
        Maybe x = s == StructuralFeature::degree ? Maybe(static_cast<double>(v.degree)) : v.clustering;
        if (!x)
            continue;
        if (auto a = vertex_avg_asymmetry(nm, v.id, f)) {
            out.xs.push_back(*x);
            out.ys.push_back(*a);
        }
    }
    return out;
}

CorrelationReport correlation_report(const StructureTable& st, const NormalizedMatrix& nm)
{
    CorrelationReport report;
    for (auto s : kStructuralFeatures)
        for (Feature f : kFeatures) {
            auto samples = correlation_samples(st, nm, s, f);
            CorrelationCell cell{s, f, std::nullopt, samples.xs.size()};
            if (cell.n >= 2) {
                try {
                    cell.r = pearson(samples.xs, samples.ys);
                } catch (const std::domain_error&) {
                    // zero variance: reported as N/A
                }
            }
            report.cells.push_back(cell);
        }
    return report;
}

void write_report_csv(std::ostream& out, const CorrelationReport& report)
{
    csv::Writer w(out);
    w.row({"structural_feature", "language_feature", "r", "n"});
    for (const auto& c : report.cells)
        w.row({std::string(to_string(c.structural)), std::string(to_string(c.language)), csv::format_maybe(c.r),
               std::to_string(c.n)});
}

void write_curves_csv(std::ostream& out, const StructureTable& st, const NormalizedMatrix& nm, std::size_t bins)
{
    csv::Writer w(out);
    w.row({"structural_feature", "language_feature", "x", "y"});
    for (auto s : kStructuralFeatures)
        for (Feature f : kFeatures) {
            auto samples = correlation_samples(st, nm, s, f);
            if (samples.xs.empty())
                continue;
            for (const auto& p : bin_curve(samples.xs, samples.ys, bins).points)
                w.row({std::string(to_string(s)), std::string(to_string(f)), csv::format_double(p.x),
                       csv::format_double(p.y)});
        }
}

} // namespace asymnet
