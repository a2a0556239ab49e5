#pragma once

#include <asymnet/langfeat.hpp>
#include <asymnet/types.hpp>

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace asymnet {

/// Guard for the habit denominator: f' = (f - H) / max(|H|, kHabitEpsilon).
inline constexpr double kHabitEpsilon = 1e-6;

struct NormalizedCell {
    Maybe raw;
    Maybe habit;      // habit of the sending individual
    Maybe normalized; // f'

    bool operator==(const NormalizedCell&) const = default;
};

/// Habit-normalized features f'(I, J) for every ordered pair.
class NormalizedMatrix {
public:
    using Row = std::array<NormalizedCell, 4>;

    void set(const OrderedPair& pair, Feature f, NormalizedCell cell);

    const std::map<OrderedPair, Row>& cells() const { return cells_; }
    bool contains(const OrderedPair& pair) const { return cells_.count(pair) != 0; }

    /// f'(pair); nullopt when the pair is unknown or the value undefined.
    Maybe normalized(const OrderedPair& pair, Feature f) const;

    /// Sorted list of every individual appearing as sender or receiver.
    std::vector<std::string> individuals() const;

    /// Unordered pairs whose both directions are present, sorted.
    std::vector<UnorderedPair> mutual_pairs() const;

    /// Individuals J such that both I->J and J->I are present, sorted.
    std::vector<std::string> partners(const std::string& individual) const;

private:
    std::map<OrderedPair, Row> cells_;
};

/// Mean of I's defined outgoing raw values; nullopt when there are none.
Maybe habit(const FeatureMatrix& fm, const std::string& individual, Feature f);

/// f' = (f - H_f(I)) / max(|H_f(I)|, ε) for every cell. Undefined raw values
/// stay undefined.
NormalizedMatrix normalize_feature(const FeatureMatrix& fm);

/// |f'(a, b) - f'(b, a)|; nullopt if either direction is undefined.
Maybe edge_asymmetry(const NormalizedMatrix& nm, const UnorderedPair& pair, Feature f);

/// Defined edge asymmetries of one feature over all mutual pairs.
std::map<UnorderedPair, double> edge_asymmetries(const NormalizedMatrix& nm, Feature f);

/// Mean edge asymmetry over I's partners with a defined value; nullopt if none.
Maybe vertex_avg_asymmetry(const NormalizedMatrix& nm, const std::string& individual, Feature f);

void write_normalized_csv(std::ostream& out, const NormalizedMatrix& nm);
void write_edge_asymmetry_csv(std::ostream& out, const NormalizedMatrix& nm);
NormalizedMatrix read_normalized_csv(std::istream& in);
NormalizedMatrix read_normalized_csv(const std::filesystem::path& path);

} // namespace asymnet
