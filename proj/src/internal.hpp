#pragma once

// Helpers shared by the parallel kernels and their serial references.

#include <asymnet/corpus.hpp>

#include <string_view>
#include <unordered_map>
#include <vector>

namespace asymnet::detail {

using MessageLookup = std::unordered_map<std::string_view, const Message*>;

MessageLookup index_messages(std::span<const Message> corpus);

/// Messages of one ordered pair, in PairStats order.
std::vector<const Message*> pair_messages(const MessageLookup& lookup, const PairStats& stats);

} // namespace asymnet::detail
