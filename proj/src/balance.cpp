#include <asymnet/balance.hpp>

#include <asymnet/csv.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace asymnet {

std::string_view to_string(BalanceMode m)
{
    return m == BalanceMode::traditional ? "traditional" : "extended";
}

std::optional<BalanceMode> parse_balance_mode(std::string_view s)
{
    if (s == "traditional")
        return BalanceMode::traditional;
    if (s == "extended")
        return BalanceMode::extended;
    return std::nullopt;
}

namespace {

Maybe merged_value(const NormalizedMatrix& nm, const UnorderedPair& p, Feature f)
{
    auto ab = nm.normalized({p.a, p.b}, f);
    auto ba = nm.normalized({p.b, p.a}, f);
    if (!ab || !ba)
        return std::nullopt;
    return *ab + *ba;
}

void check_probability(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("probability outside [0, 1]: " + std::to_string(p));
}

std::array<std::string, 3> triangle_names(const InteractionGraph& g, const Triangle& t)
{
    std::array<std::string, 3> names = {g.name(t.a), g.name(t.b), g.name(t.c)};
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace

SignedEdgeSet label_merged_edges(const NormalizedMatrix& nm, Feature f, double threshold)
{
    if (!std::isfinite(threshold))
        throw std::invalid_argument("threshold must be finite");
    SignedEdgeSet set;
    set.feature = f;
    set.threshold = threshold;
    std::size_t positive = 0;
    for (auto& pair : nm.mutual_pairs()) {
        auto m = merged_value(nm, pair, f);
        if (!m)
            continue;
        auto s = sign_above(*m, threshold);
        positive += s == Sign::positive;
        set.edges.emplace(std::move(pair), SignedEdge{*m, s});
    }
    if (set.edges.empty())
        throw EmptyDomainError("no pair has both directions of '" + std::string(to_string(f)) + "' defined");
    set.positive_fraction = static_cast<double>(positive) / static_cast<double>(set.edges.size());
    return set;
}

Verdict classify_traditional(const std::array<Sign, 3>& signs)
{
    auto positives = std::count(signs.begin(), signs.end(), Sign::positive);
    return positives == 3 || positives == 1 ? Verdict::balanced : Verdict::unbalanced;
}

double traditional_baseline(double p)
{
    check_probability(p);
    return p * p * p + 3.0 * p * (1.0 - p) * (1.0 - p);
}

double extended_baseline(double p)
{
    check_probability(p);
    return p * p + (1.0 - p) * (1.0 - p);
}

double default_extended_threshold(const NormalizedMatrix& nm, Feature f)
{
    auto diffs = edge_asymmetries(nm, f);
    if (diffs.empty())
        throw EmptyDomainError("no pair has both directions of '" + std::string(to_string(f)) + "' defined");
    double sum = 0.0;
    for (const auto& [pair, d] : diffs)
        sum += d;
    return sum / static_cast<double>(diffs.size());
}

std::vector<ExtendedTriadLabel> classify_extended(const std::array<std::string, 3>& triad,
                                                  const NormalizedMatrix& nm, Feature f, double threshold)
{
    // Anchor pairs (0,1|2), (0,2|1), (1,2|0).
    static constexpr std::array<std::array<int, 3>, 3> anchors = {{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    std::vector<ExtendedTriadLabel> out;
    for (const auto& [ia, ib, ic] : anchors) {
        const auto &a = triad[ia], &b = triad[ib], &c = triad[ic];
        auto ab = nm.normalized({a, b}, f), ba = nm.normalized({b, a}, f);
        auto ac = nm.normalized({a, c}, f), bc = nm.normalized({b, c}, f);
        if (!ab || !ba || !ac || !bc)
            continue;
        ExtendedTriadLabel l;
        l.a = a;
        l.b = b;
        l.c = c;
        l.third_party_difference = std::abs(*ac - *bc);
        l.interrelationship_difference = std::abs(*ab - *ba);
        l.third_party_sign = sign_above(l.third_party_difference, threshold);
        l.interrelationship_sign = sign_above(l.interrelationship_difference, threshold);
        l.verdict = l.third_party_sign == l.interrelationship_sign ? Verdict::balanced : Verdict::unbalanced;
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<TriadVerdict> classify_triads(const InteractionGraph& g, std::span<const Triangle> triangles,
                                          const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                                          double threshold)
{
    std::vector<TriadVerdict> out;
    out.reserve(triangles.size());
    for (const auto& t : triangles) {
        TriadVerdict v{t, 0, 0};
        auto names = triangle_names(g, t);
        if (mode == BalanceMode::traditional) {
            auto m01 = merged_value(nm, {names[0], names[1]}, f);
            auto m02 = merged_value(nm, {names[0], names[2]}, f);
            auto m12 = merged_value(nm, {names[1], names[2]}, f);
            if (m01 && m02 && m12) {
                v.evaluated_configs = 1;
                v.balanced_configs = classify_traditional({sign_above(*m01, threshold), sign_above(*m02, threshold),
                                                           sign_above(*m12, threshold)}) == Verdict::balanced;
            }
        } else {
            for (const auto& l : classify_extended(names, nm, f, threshold)) {
                ++v.evaluated_configs;
                v.balanced_configs += l.verdict == Verdict::balanced;
            }
        }
        out.push_back(v);
    }
    return out;
}

namespace {

// Values that define the x axis: merged sums or pair differences.
std::vector<double> axis_values(const NormalizedMatrix& nm, Feature f, BalanceMode mode)
{
    std::vector<double> v;
    for (const auto& pair : nm.mutual_pairs()) {
        auto x = mode == BalanceMode::traditional ? merged_value(nm, pair, f) : edge_asymmetry(nm, pair, f);
        if (x)
            v.push_back(*x);
    }
    return v;
}

double fraction_above(std::span<const double> values, double threshold)
{
    std::size_t n = 0;
    for (double v : values)
        n += v > threshold;
    return static_cast<double>(n) / static_cast<double>(values.size());
}

CurveSeries empty_curve(BalanceMode mode)
{
    CurveSeries c;
    c.x_label = mode == BalanceMode::traditional ? "positive_edge_fraction" : "positive_difference_fraction";
    c.y_label = mode == BalanceMode::traditional ? "balanced_triangle_fraction" : "balanced_configuration_fraction";
    return c;
}

void finish_curve(CurveSeries& c)
{
    std::sort(c.points.begin(), c.points.end(), [](const CurvePoint& p, const CurvePoint& q) {
        return p.x != q.x ? p.x < q.x : *p.theta < *q.theta;
    });
}

double baseline(BalanceMode mode, double x)
{
    return mode == BalanceMode::traditional ? traditional_baseline(x) : extended_baseline(x);
}

} // namespace

std::vector<double> auto_sweep(const NormalizedMatrix& nm, Feature f, BalanceMode mode, std::size_t count)
{
    auto v = axis_values(nm, f, mode);
    if (v.empty())
        throw EmptyDomainError("no pair has both directions of '" + std::string(to_string(f)) + "' defined");
    if (count < 1)
        throw std::invalid_argument("sweep needs at least one threshold");
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        double q = count == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(count - 1);
        double h = static_cast<double>(v.size() - 1) * q;
        auto lo = static_cast<std::size_t>(std::floor(h));
        auto hi = std::min(lo + 1, v.size() - 1);
        out.push_back(v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]));
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CurveSeries balance_curve(const InteractionGraph& g, const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                          std::span<const double> sweep)
{
    if (sweep.empty())
        throw std::invalid_argument("sweep must not be empty");
    CurveSeries curve = empty_curve(mode);
    const auto axis = axis_values(nm, f, mode);
    if (axis.empty())
        throw EmptyDomainError("no pair has both directions of '" + std::string(to_string(f)) + "' defined");

    // Flatten every evaluable configuration into plain arrays once; the
    // threshold loop then only compares numbers.
    const auto triangles = enumerate_triangles(g);
    std::vector<std::array<double, 3>> merged;      // traditional: three edge sums
    std::vector<std::array<double, 2>> differences; // extended: (third party, interrelationship)
    for (const auto& t : triangles) {
        auto names = triangle_names(g, t);
        if (mode == BalanceMode::traditional) {
            auto m01 = merged_value(nm, {names[0], names[1]}, f);
            auto m02 = merged_value(nm, {names[0], names[2]}, f);
            auto m12 = merged_value(nm, {names[1], names[2]}, f);
            if (m01 && m02 && m12)
                merged.push_back({*m01, *m02, *m12});
        } else {
            for (const auto& l : classify_extended(names, nm, f, 0.0))
                differences.push_back({l.third_party_difference, l.interrelationship_difference});
        }
    }
    const std::size_t total = mode == BalanceMode::traditional ? merged.size() : differences.size();
    if (total == 0) {
        curve.warnings.push_back("no triangle with defined '" + std::string(to_string(f)) + "' values");
        return curve;
    }

    for (double theta : sweep) {
        const auto n = static_cast<std::ptrdiff_t>(total);
        std::size_t balanced = 0;
        if (mode == BalanceMode::traditional) {
#pragma omp parallel for reduction(+ : balanced) schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                int pos = (merged[i][0] > theta) + (merged[i][1] > theta) + (merged[i][2] > theta);
                balanced += pos == 3 || pos == 1;
            }
        } else {
#pragma omp parallel for reduction(+ : balanced) schedule(static)
            for (std::ptrdiff_t i = 0; i < n; ++i)
                balanced += (differences[i][0] > theta) == (differences[i][1] > theta);
        }
        double x = fraction_above(axis, theta);
        curve.points.push_back(
            {x, static_cast<double>(balanced) / static_cast<double>(total), baseline(mode, x), theta});
    }
    finish_curve(curve);
    return curve;
}

CurveSeries balance_curve(const NormalizedMatrix& nm, Feature f, BalanceMode mode, std::span<const double> sweep)
{
    auto pairs = nm.mutual_pairs();
    return balance_curve(build_graph(std::span<const UnorderedPair>(pairs)), nm, f, mode, sweep);
}

namespace serial {

CurveSeries balance_curve(const InteractionGraph& g, const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                          std::span<const double> sweep)
{
    if (sweep.empty())
        throw std::invalid_argument("sweep must not be empty");
    CurveSeries curve = empty_curve(mode);
    const auto triangles = serial::enumerate_triangles(g);
    for (double theta : sweep) {
        double x = 0.0;
        if (mode == BalanceMode::traditional) {
            x = label_merged_edges(nm, f, theta).positive_fraction;
        } else {
            auto diffs = edge_asymmetries(nm, f);
            if (diffs.empty())
                throw EmptyDomainError("no defined pair");
            std::size_t pos = 0;
            for (const auto& [pair, d] : diffs)
                pos += sign_above(d, theta) == Sign::positive;
            x = static_cast<double>(pos) / static_cast<double>(diffs.size());
        }
        std::size_t balanced = 0, total = 0;
        for (const auto& v : classify_triads(g, triangles, nm, f, mode, theta)) {
            balanced += v.balanced_configs;
            total += v.evaluated_configs;
        }
        if (total == 0) {
            curve.points.clear();
            curve.warnings.push_back("no triangle with defined '" + std::string(to_string(f)) + "' values");
            return curve;
        }
        curve.points.push_back(
            {x, static_cast<double>(balanced) / static_cast<double>(total), baseline(mode, x), theta});
    }
    finish_curve(curve);
    return curve;
}

} // namespace serial

void write_curve_csv(std::ostream& out, const CurveSeries& curve)
{
    csv::Writer w(out);
    w.row({"theta", "x_positive_fraction", "balanced_fraction", "baseline"});
    for (const auto& p : curve.points)
        w.row({csv::format_maybe(p.theta), csv::format_double(p.x), csv::format_double(p.y),
               csv::format_maybe(p.baseline)});
}

double simulate_random_balance(BalanceMode mode, double p, std::size_t trials, std::uint64_t seed)
{
    check_probability(p);
    if (trials == 0)
        throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(seed);
    // 53-bit uniform in [0, 1); avoids the implementation-defined distributions.
    auto draw = [&] { return sign_above(p, static_cast<double>(rng() >> 11) * 0x1.0p-53); };
    std::size_t balanced = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        if (mode == BalanceMode::traditional)
            balanced += classify_traditional({draw(), draw(), draw()}) == Verdict::balanced;
        else {
            auto third_party = draw();
            auto interrelationship = draw();
            balanced += third_party == interrelationship;
        }
    }
    return static_cast<double>(balanced) / static_cast<double>(trials);
}

} // namespace asymnet
