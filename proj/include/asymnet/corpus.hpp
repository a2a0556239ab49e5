#pragma once

#include <asymnet/types.hpp>

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asymnet {

using Timestamp = std::chrono::sys_seconds;

struct Message {
    std::string id;
    std::string sender;
    std::vector<std::string> recipients;
    Timestamp timestamp{};
    std::string body;

    bool operator==(const Message&) const = default;
};

/// Why one input record (line or file) was skipped.
struct SkipRecord {
    std::string source; // "line 7" or a file path
    std::string reason;
};

struct ParseResult {
    std::vector<Message> messages;
    std::vector<SkipRecord> skipped;
};

enum class ParseMode { lenient, strict };

// "YYYY-MM-DDThh:mm:ssZ"
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

/// RFC 2822 date, e.g. "Mon, 14 May 2001 16:39:00 -0700 (PDT)", converted to UTC.
std::optional<Timestamp> parse_rfc2822_date(std::string_view text);

/// Lowercases, trims and strips a display name ("Jane <J@X.com>" -> "j@x.com").
std::string normalize_address(std::string_view raw);

/// Splits an address-list header value on top-level commas and normalizes
/// each entry. Empty entries are dropped.
std::vector<std::string> parse_address_list(std::string_view header_value);

/// One Message per valid line, input order preserved. In strict mode the
/// first malformed line throws ParseError; otherwise it is recorded and skipped.
ParseResult parse_jsonl(std::istream& in, ParseMode mode = ParseMode::lenient);
ParseResult read_jsonl_file(const std::filesystem::path& path, ParseMode mode = ParseMode::lenient);

void write_jsonl(std::ostream& out, std::span<const Message> messages);

/// Parses one RFC-822 style message. Returns nullopt with `reason` set when
/// From, To or Date is missing or unparseable.
std::optional<Message> parse_rfc822(std::string_view text, std::string fallback_id, std::string& reason);

/// Recursively reads every regular file below `root` (files are visited in
/// sorted path order; parsing runs in parallel). Throws InputError if `root`
/// is not a readable directory.
ParseResult parse_maildir(const std::filesystem::path& root);

struct PairStats {
    std::size_t count = 0;
    Timestamp first{};
    Timestamp last{};
    std::vector<std::string> message_ids;
};

/// Retained ordered pairs. Sorted by (from, to), so iteration is deterministic.
using PairIndex = std::map<OrderedPair, PairStats>;

struct FilterResult {
    std::vector<Message> messages; // sorted by id, recipients reduced to retained ones
    PairIndex pairs;
    std::vector<std::string> warnings;
};

/// Domain filter, self-loop removal, duplicate-id resolution (last wins) and
/// the mutual-volume rule: {A,B} is kept iff both A->B and B->A carry at least
/// `min_each_direction` messages. An empty suffix disables the domain filter.
FilterResult filter_corpus(std::span<const Message> messages, std::string_view domain_suffix,
                           std::size_t min_each_direction);

/// Mutual pairs of an already-filtered corpus (threshold 1, no domain filter).
inline PairIndex index_pairs(std::span<const Message> messages)
{
    return filter_corpus(messages, "", 1).pairs;
}

} // namespace asymnet
