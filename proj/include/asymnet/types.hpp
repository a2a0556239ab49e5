#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace asymnet {

/// The four interactive-language features measured per ordered pair.
enum class Feature { frequency, length, quality, sentiment };

inline constexpr std::array<Feature, 4> kFeatures = {
    Feature::frequency, Feature::length, Feature::quality, Feature::sentiment};

inline constexpr std::size_t index_of(Feature f) { return static_cast<std::size_t>(f); }

std::string_view to_string(Feature f);
std::optional<Feature> parse_feature(std::string_view name);

/// A value that may be undefined (e.g. perplexity of an all-OOV text).
/// Undefined values propagate; they are never replaced by zero.
using Maybe = std::optional<double>;

/// Per-feature values for one cell.
using FeatureValues = std::array<Maybe, 4>;

/// Directed relation I_from -> I_to.
struct OrderedPair {
    std::string from;
    std::string to;

    OrderedPair reversed() const { return {to, from}; }
    auto operator<=>(const OrderedPair&) const = default;
};

/// Undirected relation, stored with a < b.
struct UnorderedPair {
    std::string a;
    std::string b;

    static UnorderedPair of(std::string x, std::string y)
    {
        if (y < x)
            std::swap(x, y);
        return {std::move(x), std::move(y)};
    }
    auto operator<=>(const UnorderedPair&) const = default;
};

// Error hierarchy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A required input (file, directory, lexicon) is missing or unreadable.
struct InputError : Error {
    using Error::Error;
};

/// A configuration file or option value cannot be parsed.
struct ConfigError : Error {
    using Error::Error;
};

/// The analysis has nothing to work on (no pairs, no defined values, ...).
struct EmptyDomainError : Error {
    using Error::Error;
};

/// Malformed record in a data file.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), message(what), line(line)
    {
    }
    std::string message;
    std::size_t line;
};

} // namespace asymnet
