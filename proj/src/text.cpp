#include <asymnet/text.hpp>

#include <algorithm>

namespace asymnet::text {

std::vector<std::string> tokenize(std::string_view body)
{
    std::vector<std::string> out;
    for_each_token(body, [&](std::string_view t) { out.emplace_back(t); });
    return out;
}

std::size_t count_tokens(std::string_view body)
{
    std::size_t n = 0;
    for_each_token(body, [&](std::string_view) { ++n; });
    return n;
}

std::vector<std::string_view> split_sentences(std::string_view body)
{
    std::vector<std::string_view> out;
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i < body.size() && body[i] != '.' && body[i] != '!' && body[i] != '?' && body[i] != '\n')
            continue;
        auto seg = body.substr(start, i - start);
        if (!std::all_of(seg.begin(), seg.end(), is_space))
            out.push_back(seg);
        start = i + 1;
    }
    return out;
}

std::size_t count_sentences(std::string_view body)
{
    return split_sentences(body).size();
}

} // namespace asymnet::text
