#pragma once

#include <asymnet/graph.hpp>
#include <asymnet/normalize.hpp>
#include <asymnet/stats.hpp>
#include <asymnet/types.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace asymnet {

enum class Sign { negative, positive };
enum class Verdict { unbalanced, balanced };
enum class BalanceMode { traditional, extended };

std::string_view to_string(BalanceMode m);
std::optional<BalanceMode> parse_balance_mode(std::string_view s);

/// '+' iff value > threshold. A value equal to the threshold is '-'.
inline Sign sign_above(double value, double threshold)
{
    return value > threshold ? Sign::positive : Sign::negative;
}

struct SignedEdge {
    double merged = 0.0; // f'(a, b) + f'(b, a)
    Sign sign = Sign::negative;
};

struct SignedEdgeSet {
    Feature feature = Feature::frequency;
    double threshold = 0.0;
    std::map<UnorderedPair, SignedEdge> edges; // only pairs with both directions defined
    double positive_fraction = 0.0;
};

/// Merges both directions of every mutual pair and labels the sum against
/// `threshold`. Throws EmptyDomainError when no pair is defined.
SignedEdgeSet label_merged_edges(const NormalizedMatrix& nm, Feature f, double threshold);

/// Balanced iff the sign multiset is {+,+,+} or {+,-,-}.
Verdict classify_traditional(const std::array<Sign, 3>& signs);

/// Probability that a triangle with i.i.d. edge signs (P(+) = p) is balanced:
/// p³ + 3p(1-p)². Throws std::domain_error outside [0, 1].
double traditional_baseline(double p);

/// Same for the directed extension: p² + (1-p)².
double extended_baseline(double p);

/// Mean of |f'(a,b) - f'(b,a)| over every mutual pair with both directions
/// defined. Throws EmptyDomainError when there is none.
double default_extended_threshold(const NormalizedMatrix& nm, Feature f);

/// One anchor pair (a, b) of a triangle with third party c.
struct ExtendedTriadLabel {
    std::string a;
    std::string b;
    std::string c;
    double third_party_difference = 0.0;     // |f'(a,c) - f'(b,c)|
    double interrelationship_difference = 0.0; // |f'(a,b) - f'(b,a)|
    Sign third_party_sign = Sign::negative;
    Sign interrelationship_sign = Sign::negative;
    Verdict verdict = Verdict::unbalanced;
};

/// Evaluates the three anchor choices of a triangle (names sorted) under the
/// directed extension: a difference is '+' iff it exceeds `threshold`, and the
/// configuration is balanced iff both signs agree. Configurations with an
/// undefined directed value are skipped.
std::vector<ExtendedTriadLabel> classify_extended(const std::array<std::string, 3>& triad,
                                                  const NormalizedMatrix& nm, Feature f, double threshold);

/// Per-triangle outcome at a single threshold.
struct TriadVerdict {
    Triangle triangle;
    std::size_t balanced_configs = 0;
    std::size_t evaluated_configs = 0; // 0 when a needed value is undefined

    /// Traditional: the one configuration is balanced. Extended: a strict
    /// majority of the evaluated anchor configurations is balanced.
    bool balanced() const { return evaluated_configs > 0 && 2 * balanced_configs > evaluated_configs; }
};

std::vector<TriadVerdict> classify_triads(const InteractionGraph& g, std::span<const Triangle> triangles,
                                          const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                                          double threshold);

/// Thresholds at `count` evenly spaced quantiles (linear interpolation) of the
/// merged values (traditional) or pair differences (extended); duplicates removed.
std::vector<double> auto_sweep(const NormalizedMatrix& nm, Feature f, BalanceMode mode, std::size_t count = 41);

/// One point per threshold: x = fraction of '+' edges (or '+' pair
/// differences), y = fraction of balanced triangles (or anchor
/// configurations), baseline = random-sign expectation at x. Sorted by x.
/// Triangle counting runs in parallel.
CurveSeries balance_curve(const InteractionGraph& g, const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                          std::span<const double> sweep);
/// Builds the graph from the mutual pairs of `nm`.
CurveSeries balance_curve(const NormalizedMatrix& nm, Feature f, BalanceMode mode, std::span<const double> sweep);

namespace serial {
CurveSeries balance_curve(const InteractionGraph& g, const NormalizedMatrix& nm, Feature f, BalanceMode mode,
                          std::span<const double> sweep);
}

void write_curve_csv(std::ostream& out, const CurveSeries& curve);

/// Fraction of balanced configurations among `trials` random ones whose
/// signs are i.i.d. '+' with probability p. Deterministic for a given seed.
double simulate_random_balance(BalanceMode mode, double p, std::size_t trials, std::uint64_t seed);

} // namespace asymnet
