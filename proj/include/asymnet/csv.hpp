#pragma once

#include <asymnet/types.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC-4180 style CSV helpers shared by every artifact writer/reader.
// Doubles are written in shortest round-trip form so that reading an
// artifact back reproduces the in-memory value bit for bit.

namespace asymnet::csv {

inline constexpr std::string_view kMissing = "NA";

std::string format_double(double v);
std::string format_maybe(const Maybe& v);

double parse_double(std::string_view s, std::size_t line);
Maybe parse_maybe(std::string_view s, std::size_t line);
std::size_t parse_count(std::string_view s, std::size_t line);

std::string quote(std::string_view field);

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

/// Reads a whole CSV stream. The first row must equal `expected_header`.
class Table {
public:
    static Table read(std::istream& in, const std::vector<std::string>& expected_header);
    static Table read_file(const std::filesystem::path& path,
                           const std::vector<std::string>& expected_header);

    struct Row {
        std::size_t line;
        std::vector<std::string> fields;
    };

    const std::vector<Row>& rows() const { return rows_; }

private:
    std::vector<Row> rows_;
};

std::vector<std::string> split_line(std::string_view line, std::size_t line_no);

} // namespace asymnet::csv
