#pragma once

#include <asymnet/graph.hpp>
#include <asymnet/normalize.hpp>
#include <asymnet/types.hpp>

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace asymnet {

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
    Maybe baseline;
    Maybe theta; // set for threshold sweeps

    bool operator==(const CurvePoint&) const = default;
};

struct CurveSeries {
    std::string x_label;
    std::string y_label;
    std::vector<CurvePoint> points;
    std::vector<std::string> warnings;
};

/// Sample Pearson correlation. Throws std::invalid_argument on length
/// mismatch or fewer than two samples and std::domain_error when either
/// side has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Equal-width bins over [min x, max x]; each non-empty bin becomes one point
/// at the bin midpoint with the mean y of its members.
CurveSeries bin_curve(std::span<const double> xs, std::span<const double> ys, std::size_t bins = 20);

enum class StructuralFeature { degree, clustering, embeddedness };
inline constexpr std::array<StructuralFeature, 3> kStructuralFeatures = {
    StructuralFeature::degree, StructuralFeature::clustering, StructuralFeature::embeddedness};
std::string_view to_string(StructuralFeature s);
std::optional<StructuralFeature> parse_structural_feature(std::string_view s);

struct CorrelationCell {
    StructuralFeature structural = StructuralFeature::degree;
    Feature language = Feature::frequency;
    Maybe r; // nullopt = N/A
    std::size_t n = 0;

    bool operator==(const CorrelationCell&) const = default;
};

/// Vertex rows: degree and clustering vs mean vertex asymmetry.
/// Edge rows: embeddedness vs edge asymmetry. Only defined samples are used.
struct CorrelationReport {
    std::vector<CorrelationCell> cells; // 12 cells, structural-major order

    const CorrelationCell& at(StructuralFeature s, Feature f) const;
};

/// Paired samples behind one report cell.
struct SamplePairs {
    std::vector<double> xs;
    std::vector<double> ys;
};

SamplePairs correlation_samples(const StructureTable& st, const NormalizedMatrix& nm, StructuralFeature s,
                                Feature f);

CorrelationReport correlation_report(const StructureTable& st, const NormalizedMatrix& nm);

void write_report_csv(std::ostream& out, const CorrelationReport& report);

/// Long format: structural_feature,language_feature,x,y (binned curves).
void write_curves_csv(std::ostream& out, const StructureTable& st, const NormalizedMatrix& nm,
                      std::size_t bins);

} // namespace asymnet
