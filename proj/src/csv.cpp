#include <asymnet/csv.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace asymnet {

std::string_view to_string(Feature f)
{
    switch (f) {
    case Feature::frequency:
        return "frequency";
    case Feature::length:
        return "length";
    case Feature::quality:
        return "quality";
    case Feature::sentiment:
        return "sentiment";
    }
    return "?";
}

std::optional<Feature> parse_feature(std::string_view name)
{
    for (Feature f : kFeatures)
        if (to_string(f) == name)
            return f;
    return std::nullopt;
}

} // namespace asymnet

namespace asymnet::csv {

std::string format_double(double v)
{
    if (v == 0.0)
        return "0"; // folds -0.0
    if (!std::isfinite(v))
        throw Error("non-finite value cannot be written");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{})
        throw Error("cannot format double");
    return std::string(buf, end);
}

std::string format_maybe(const Maybe& v)
{
    return v ? format_double(*v) : std::string(kMissing);
}

double parse_double(std::string_view s, std::size_t line)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParseError("invalid number '" + std::string(s) + "'", line);
    return v;
}

Maybe parse_maybe(std::string_view s, std::size_t line)
{
    if (s == kMissing)
        return std::nullopt;
    return parse_double(s, line);
}

std::size_t parse_count(std::string_view s, std::size_t line)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("invalid count '" + std::string(s) + "'", line);
    return v;
}

std::string quote(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void Writer::row(const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << quote(fields[i]);
    }
    out_ << '\n';
}

std::vector<std::string> split_line(std::string_view line, std::size_t line_no)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw ParseError("unterminated quoted field", line_no);
    fields.push_back(std::move(cur));
    return fields;
}

Table Table::read(std::istream& in, const std::vector<std::string>& expected_header)
{
    Table t;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split_line(line, line_no);
        if (!header_seen) {
            if (fields != expected_header)
                throw ParseError("unexpected CSV header '" + line + "'", line_no);
            header_seen = true;
            continue;
        }
        if (fields.size() != expected_header.size())
            throw ParseError("expected " + std::to_string(expected_header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        t.rows_.push_back({line_no, std::move(fields)});
    }
    if (!header_seen)
        throw ParseError("missing CSV header", line_no);
    return t;
}

Table Table::read_file(const std::filesystem::path& path,
                       const std::vector<std::string>& expected_header)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    try {
        return read(in, expected_header);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.message, e.line);
    }
}

} // namespace asymnet::csv
