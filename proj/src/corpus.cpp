#include <asymnet/corpus.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

namespace asymnet {

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

int to_int(std::string_view s)
{
    int v = 0;
    for (char c : s)
        v = v * 10 + (c - '0');
    return v;
}

std::string_view trim(std::string_view s)
{
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

std::optional<Timestamp> parse_timestamp(std::string_view t)
{
    // 0123456789012345678 9
    // YYYY-MM-DDThh:mm:ss Z
    if (t.size() != 20 || t[4] != '-' || t[7] != '-' || t[10] != 'T' || t[13] != ':' ||
        t[16] != ':' || t[19] != 'Z')
        return std::nullopt;
    auto y = t.substr(0, 4), mo = t.substr(5, 2), d = t.substr(8, 2);
    auto h = t.substr(11, 2), mi = t.substr(14, 2), s = t.substr(17, 2);
    for (auto part : {y, mo, d, h, mi, s})
        if (!all_digits(part))
            return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{to_int(y)},
                                    std::chrono::month{static_cast<unsigned>(to_int(mo))},
                                    std::chrono::day{static_cast<unsigned>(to_int(d))}};
    if (!ymd.ok() || to_int(h) > 23 || to_int(mi) > 59 || to_int(s) > 60)
        return std::nullopt;
    return std::chrono::sys_days{ymd} + std::chrono::hours{to_int(h)} +
           std::chrono::minutes{to_int(mi)} + std::chrono::seconds{to_int(s)};
}

std::string format_timestamp(Timestamp t)
{
    auto days = std::chrono::floor<std::chrono::days>(t);
    std::chrono::year_month_day ymd{days};
    std::chrono::hh_mm_ss hms{t - days};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()));
    return buf;
}

std::string normalize_address(std::string_view raw)
{
    auto s = trim(raw);
    auto open = s.rfind('<');
    if (open != std::string_view::npos) {
        auto close = s.find('>', open);
        s = s.substr(open + 1, close == std::string_view::npos ? std::string_view::npos : close - open - 1);
    } else if (auto paren = s.find('('); paren != std::string_view::npos) {
        // "addr (Display Name)"
        s = s.substr(0, paren);
    }
    s = trim(s);
    while (!s.empty() && (s.front() == '"' || s.front() == '\''))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == '"' || s.back() == '\''))
        s.remove_suffix(1);
    return lower(trim(s));
}

std::vector<std::string> parse_address_list(std::string_view value)
{
    std::vector<std::string> out;
    bool in_quotes = false;
    int angle = 0;
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        auto addr = normalize_address(value.substr(start, end - start));
        if (!addr.empty())
            out.push_back(std::move(addr));
    };
    for (std::size_t i = 0; i < value.size(); ++i) {
        char c = value[i];
        if (c == '"')
            in_quotes = !in_quotes;
        else if (!in_quotes && c == '<')
            ++angle;
        else if (!in_quotes && c == '>' && angle > 0)
            --angle;
        else if (!in_quotes && angle == 0 && (c == ',' || c == ';')) {
            flush(i);
            start = i + 1;
        }
    }
    flush(value.size());
    return out;
}

namespace {

Message message_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("not a JSON object");
    for (const char* key : {"id", "from", "to", "timestamp", "body"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("missing key '") + key + "'");

    Message m;
    m.id = j.at("id").get<std::string>();
    m.sender = normalize_address(j.at("from").get<std::string>());
    const auto& to = j.at("to");
    if (to.is_string()) {
        m.recipients = parse_address_list(to.get<std::string>());
    } else {
        for (const auto& r : to) {
            auto addr = normalize_address(r.get<std::string>());
            if (!addr.empty())
                m.recipients.push_back(std::move(addr));
        }
    }
    auto ts = parse_timestamp(j.at("timestamp").get<std::string>());
    if (!ts)
        throw std::invalid_argument("bad timestamp '" + j.at("timestamp").get<std::string>() + "'");
    m.timestamp = *ts;
    m.body = j.at("body").get<std::string>();

    if (m.id.empty())
        throw std::invalid_argument("empty id");
    if (m.sender.empty())
        throw std::invalid_argument("empty sender");
    if (m.recipients.empty())
        throw std::invalid_argument("no recipients");
    return m;
}

} // namespace

ParseResult parse_jsonl(std::istream& in, ParseMode mode)
{
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        try {
            result.messages.push_back(message_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            if (mode == ParseMode::strict)
                throw ParseError(std::string("malformed message: ") + e.what(), line_no);
            result.skipped.push_back({"line " + std::to_string(line_no), e.what()});
        }
    }
    return result;
}

ParseResult read_jsonl_file(const std::filesystem::path& path, ParseMode mode)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open corpus " + path.string());
    return parse_jsonl(in, mode);
}

void write_jsonl(std::ostream& out, std::span<const Message> messages)
{
    for (const auto& m : messages) {
        nlohmann::ordered_json j;
        j["id"] = m.id;
        j["from"] = m.sender;
        j["to"] = m.recipients;
        j["timestamp"] = format_timestamp(m.timestamp);
        j["body"] = m.body;
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

FilterResult filter_corpus(std::span<const Message> messages, std::string_view domain_suffix,
                           std::size_t min_each_direction)
{
    if (min_each_direction < 1)
        throw std::invalid_argument("min_each_direction must be >= 1");

    FilterResult result;
    const std::string suffix = lower(domain_suffix);
    auto in_domain = [&](const std::string& addr) {
        return suffix.empty() || (addr.size() >= suffix.size() &&
                                  addr.compare(addr.size() - suffix.size(), suffix.size(), suffix) == 0);
    };

    // Last occurrence of an id wins.
    std::unordered_map<std::string_view, std::size_t> last_of;
    for (std::size_t i = 0; i < messages.size(); ++i)
        last_of[messages[i].id] = i;
    if (last_of.size() != messages.size())
        result.warnings.push_back(std::to_string(messages.size() - last_of.size()) +
                                  " duplicate message id(s); last occurrence kept");

    std::vector<Message> candidates;
    std::map<OrderedPair, std::size_t> counts;
    for (std::size_t i = 0; i < messages.size(); ++i) {
        const auto& m = messages[i];
        if (last_of[m.id] != i || !in_domain(m.sender))
            continue;
        Message kept = m;
        kept.recipients.clear();
        std::set<std::string> seen;
        for (const auto& r : m.recipients)
            if (r != m.sender && in_domain(r) && seen.insert(r).second)
                kept.recipients.push_back(r);
        if (kept.recipients.empty())
            continue;
        for (const auto& r : kept.recipients)
            ++counts[{kept.sender, r}];
        candidates.push_back(std::move(kept));
    }

    auto retained = [&](const std::string& from, const std::string& to) {
        auto fwd = counts.find({from, to});
        auto bwd = counts.find({to, from});
        return fwd != counts.end() && bwd != counts.end() && fwd->second >= min_each_direction &&
               bwd->second >= min_each_direction;
    };

    for (auto& m : candidates) {
        std::erase_if(m.recipients, [&](const std::string& r) { return !retained(m.sender, r); });
        if (!m.recipients.empty())
            result.messages.push_back(std::move(m));
    }
    std::sort(result.messages.begin(), result.messages.end(),
              [](const Message& a, const Message& b) { return a.id < b.id; });

    for (const auto& m : result.messages) {
        for (const auto& r : m.recipients) {
            auto& st = result.pairs[{m.sender, r}];
            if (st.count == 0) {
                st.first = st.last = m.timestamp;
            } else {
                st.first = std::min(st.first, m.timestamp);
                st.last = std::max(st.last, m.timestamp);
            }
            ++st.count;
            st.message_ids.push_back(m.id);
        }
    }

    if (result.pairs.empty())
        result.warnings.push_back("no pairs survive filtering");
    return result;
}

} // namespace asymnet
