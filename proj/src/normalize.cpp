#include <asymnet/normalize.hpp>

#include <asymnet/csv.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

namespace asymnet {

void NormalizedMatrix::set(const OrderedPair& pair, Feature f, NormalizedCell cell)
{
    cells_[pair][index_of(f)] = cell;
}

Maybe NormalizedMatrix::normalized(const OrderedPair& pair, Feature f) const
{
    auto it = cells_.find(pair);
    if (it == cells_.end())
        return std::nullopt;
    return it->second[index_of(f)].normalized;
}

std::vector<std::string> NormalizedMatrix::individuals() const
{
    std::set<std::string> names;
    for (const auto& [pair, row] : cells_) {
        names.insert(pair.from);
        names.insert(pair.to);
    }
    return {names.begin(), names.end()};
}

std::vector<UnorderedPair> NormalizedMatrix::mutual_pairs() const
{
    std::vector<UnorderedPair> out;
    for (const auto& [pair, row] : cells_)
        if (pair.from < pair.to && contains(pair.reversed()))
            out.push_back({pair.from, pair.to});
    return out;
}

std::vector<std::string> NormalizedMatrix::partners(const std::string& individual) const
{
    std::vector<std::string> out;
    for (auto it = cells_.lower_bound({individual, ""}); it != cells_.end() && it->first.from == individual;
         ++it)
        if (contains(it->first.reversed()))
            out.push_back(it->first.to);
    return out;
}

Maybe habit(const FeatureMatrix& fm, const std::string& individual, Feature f)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (auto it = fm.lower_bound({individual, ""}); it != fm.end() && it->first.from == individual; ++it) {
        if (auto v = it->second[f]) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

NormalizedMatrix normalize_feature(const FeatureMatrix& fm)
{
    NormalizedMatrix nm;
    auto it = fm.begin();
    while (it != fm.end()) {
        const std::string& sender = it->first.from;
        std::array<Maybe, 4> habits;
        for (Feature f : kFeatures)
            habits[index_of(f)] = habit(fm, sender, f);
        for (; it != fm.end() && it->first.from == sender; ++it) {
            for (Feature f : kFeatures) {
                NormalizedCell cell;
                cell.raw = it->second[f];
                cell.habit = habits[index_of(f)];
                if (cell.raw && cell.habit)
                    cell.normalized =
                        (*cell.raw - *cell.habit) / std::max(std::abs(*cell.habit), kHabitEpsilon);
                nm.set(it->first, f, cell);
            }
        }
    }
    return nm;
}

Maybe edge_asymmetry(const NormalizedMatrix& nm, const UnorderedPair& pair, Feature f)
{
    auto ab = nm.normalized({pair.a, pair.b}, f);
    auto ba = nm.normalized({pair.b, pair.a}, f);
    if (!ab || !ba)
        return std::nullopt;
    return std::abs(*ab - *ba);
}

std::map<UnorderedPair, double> edge_asymmetries(const NormalizedMatrix& nm, Feature f)
{
    std::map<UnorderedPair, double> out;
    for (auto& pair : nm.mutual_pairs())
        if (auto a = edge_asymmetry(nm, pair, f))
            out.emplace(std::move(pair), *a);
    return out;
}

Maybe vertex_avg_asymmetry(const NormalizedMatrix& nm, const std::string& individual, Feature f)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& partner : nm.partners(individual)) {
        if (auto a = edge_asymmetry(nm, UnorderedPair::of(individual, partner), f)) {
            sum += *a;
            ++n;
        }
    }
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

namespace {
const std::vector<std::string> kNormalizedHeader = {"from", "to", "feature", "raw", "habit", "normalized"};
const std::vector<std::string> kEdgeHeader = {"a", "b", "feature", "asymmetry"};
} // namespace

void write_normalized_csv(std::ostream& out, const NormalizedMatrix& nm)
{
    csv::Writer w(out);
    w.row(kNormalizedHeader);
    for (const auto& [pair, row] : nm.cells())
        for (Feature f : kFeatures) {
            const auto& c = row[index_of(f)];
            w.row({pair.from, pair.to, std::string(to_string(f)), csv::format_maybe(c.raw),
                   csv::format_maybe(c.habit), csv::format_maybe(c.normalized)});
        }
}

void write_edge_asymmetry_csv(std::ostream& out, const NormalizedMatrix& nm)
{
    csv::Writer w(out);
    w.row(kEdgeHeader);
    for (const auto& pair : nm.mutual_pairs())
        for (Feature f : kFeatures)
            w.row({pair.a, pair.b, std::string(to_string(f)), csv::format_maybe(edge_asymmetry(nm, pair, f))});
}

namespace {
NormalizedMatrix normalized_from_table(const csv::Table& t)
{
    NormalizedMatrix nm;
    for (const auto& r : t.rows()) {
        auto f = parse_feature(r.fields[2]);
        if (!f)
            throw ParseError("unknown feature '" + r.fields[2] + "'", r.line);
        nm.set({r.fields[0], r.fields[1]}, *f,
               {csv::parse_maybe(r.fields[3], r.line), csv::parse_maybe(r.fields[4], r.line),
                csv::parse_maybe(r.fields[5], r.line)});
    }
    return nm;
}
} // namespace

NormalizedMatrix read_normalized_csv(std::istream& in)
{
    return normalized_from_table(csv::Table::read(in, kNormalizedHeader));
}

NormalizedMatrix read_normalized_csv(const std::filesystem::path& path)
{
    return normalized_from_table(csv::Table::read_file(path, kNormalizedHeader));
}

} // namespace asymnet
