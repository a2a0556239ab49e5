// RFC-822 message files laid out as a directory tree (CMU Enron "maildir").

#include <asymnet/corpus.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <system_error>

namespace asymnet {

namespace {

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

std::vector<std::string_view> words(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ','))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<int> number(std::string_view s)
{
    if (s.empty() || s.size() > 9)
        return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

std::optional<int> month_number(std::string_view s)
{
    static constexpr std::array<std::string_view, 12> names = {"jan", "feb", "mar", "apr", "may", "jun",
                                                               "jul", "aug", "sep", "oct", "nov", "dec"};
    if (s.size() < 3)
        return std::nullopt;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (iequals(s.substr(0, 3), names[i]))
            return static_cast<int>(i + 1);
    return std::nullopt;
}

// Offset from UTC in minutes.
std::optional<int> zone_offset(std::string_view z)
{
    if (z.size() == 5 && (z[0] == '+' || z[0] == '-')) {
        auto hh = number(z.substr(1, 2)), mm = number(z.substr(3, 2));
        if (!hh || !mm)
            return std::nullopt;
        int off = *hh * 60 + *mm;
        return z[0] == '-' ? -off : off;
    }
    struct Named {
        std::string_view name;
        int hours;
    };
    static constexpr std::array<Named, 12> named = {{{"UT", 0}, {"UTC", 0}, {"GMT", 0}, {"Z", 0},
                                                      {"EST", -5}, {"EDT", -4}, {"CST", -6}, {"CDT", -5},
                                                      {"MST", -7}, {"MDT", -6}, {"PST", -8}, {"PDT", -7}}};
    for (const auto& n : named)
        if (iequals(z, n.name))
            return n.hours * 60;
    return std::nullopt;
}

} // namespace

std::optional<Timestamp> parse_rfc2822_date(std::string_view text)
{
    auto w = words(text);
    std::size_t i = 0;
    // Optional day-of-week ("Mon," -- the comma is swallowed by words()).
    if (i < w.size() && !number(w[i]))
        ++i;
    if (w.size() < i + 4)
        return std::nullopt;
    auto day = number(w[i]);
    auto month = month_number(w[i + 1]);
    auto year = number(w[i + 2]);
    if (!day || !month || !year)
        return std::nullopt;
    int y = *year;
    if (w[i + 2].size() <= 2)
        y += y < 50 ? 2000 : 1900;

    auto clock = w[i + 3];
    int hms[3] = {0, 0, 0};
    int parts = 0;
    std::size_t start = 0;
    while (parts < 3) {
        auto colon = clock.find(':', start);
        auto v = number(clock.substr(start, colon == std::string_view::npos ? std::string_view::npos
                                                                            : colon - start));
        if (!v)
            return std::nullopt;
        hms[parts++] = *v;
        if (colon == std::string_view::npos)
            break;
        start = colon + 1;
    }
    if (parts < 2 || hms[0] > 23 || hms[1] > 59 || hms[2] > 60)
        return std::nullopt;

    int offset = 0;
    if (w.size() > i + 4) {
        auto off = zone_offset(w[i + 4]);
        if (!off)
            return std::nullopt;
        offset = *off;
    }

    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(*month)},
                                    std::chrono::day{static_cast<unsigned>(*day)}};
    if (!ymd.ok())
        return std::nullopt;
    return std::chrono::sys_days{ymd} + std::chrono::hours{hms[0]} + std::chrono::minutes{hms[1]} +
           std::chrono::seconds{hms[2]} - std::chrono::minutes{offset};
}

std::optional<Message> parse_rfc822(std::string_view text, std::string fallback_id, std::string& reason)
{
    std::vector<std::pair<std::string, std::string>> headers;
    std::size_t pos = 0;
    std::size_t body_start = text.size();
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        std::size_t next = eol == std::string_view::npos ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty()) {
            body_start = next;
            break;
        }
        if ((line.front() == ' ' || line.front() == '\t') && !headers.empty()) {
            headers.back().second += ' ';
            headers.back().second += line;
        } else if (auto colon = line.find(':'); colon != std::string_view::npos) {
            headers.emplace_back(std::string(line.substr(0, colon)), std::string(line.substr(colon + 1)));
        }
        pos = next;
    }

    auto header = [&](std::string_view name) -> const std::string* {
        for (const auto& [k, v] : headers)
            if (iequals(k, name))
                return &v;
        return nullptr;
    };

    Message m;
    const auto* from = header("From");
    const auto* to = header("To");
    const auto* date = header("Date");
    if (!from || !to || !date) {
        reason = !from ? "missing From header" : !to ? "missing To header" : "missing Date header";
        return std::nullopt;
    }
    auto senders = parse_address_list(*from);
    if (senders.empty()) {
        reason = "unparseable From header";
        return std::nullopt;
    }
    m.sender = senders.front();
    m.recipients = parse_address_list(*to);
    if (m.recipients.empty()) {
        reason = "unparseable To header";
        return std::nullopt;
    }
    auto ts = parse_rfc2822_date(*date);
    if (!ts) {
        reason = "unparseable Date header";
        return std::nullopt;
    }
    m.timestamp = *ts;

    m.id = std::move(fallback_id);
    if (const auto* mid = header("Message-ID")) {
        std::string_view v = *mid;
        while (!v.empty() && (std::isspace(static_cast<unsigned char>(v.front())) || v.front() == '<'))
            v.remove_prefix(1);
        while (!v.empty() && (std::isspace(static_cast<unsigned char>(v.back())) || v.back() == '>'))
            v.remove_suffix(1);
        if (!v.empty())
            m.id = std::string(v);
    }

    std::string body(text.substr(body_start));
    std::erase(body, '\r');
    m.body = std::move(body);
    return m;
}

ParseResult parse_maildir(const std::filesystem::path& root)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw InputError("not a readable directory: " + root.string());

    std::vector<fs::path> files;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec)
        throw InputError("cannot read directory " + root.string() + ": " + ec.message());
    for (const auto& entry : it)
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    const auto n = static_cast<std::ptrdiff_t>(files.size());
    std::vector<std::optional<Message>> parsed(files.size());
    std::vector<std::string> reasons(files.size());

#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        std::ifstream in(files[i], std::ios::binary);
        if (!in) {
            reasons[i] = "unreadable file";
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        auto rel = files[i].lexically_relative(root).generic_string();
        parsed[i] = parse_rfc822(buf.str(), rel, reasons[i]);
    }

    ParseResult result;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (parsed[i])
            result.messages.push_back(std::move(*parsed[i]));
        else
            result.skipped.push_back({files[i].string(), reasons[i]});
    }
    std::stable_sort(result.messages.begin(), result.messages.end(),
                     [](const Message& a, const Message& b) { return a.id < b.id; });
    return result;
}

} // namespace asymnet
