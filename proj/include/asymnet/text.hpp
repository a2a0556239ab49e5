#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace asymnet::text {

/// Calls `fn(token)` for every maximal run of ASCII letters/digits, lowercased.
/// Any other byte (punctuation, whitespace, non-ASCII) separates tokens.
template <class Fn>
void for_each_token(std::string_view body, Fn&& fn)
{
    std::string tok;
    for (char ch : body) {
        auto c = static_cast<unsigned char>(ch);
        if (c < 0x80 && std::isalnum(c)) {
            tok += static_cast<char>(std::tolower(c));
        } else if (!tok.empty()) {
            fn(std::string_view(tok));
            tok.clear();
        }
    }
    if (!tok.empty())
        fn(std::string_view(tok));
}

std::vector<std::string> tokenize(std::string_view body);
std::size_t count_tokens(std::string_view body);

/// Segments split on '.', '!', '?' and newline; whitespace-only segments are dropped.
std::vector<std::string_view> split_sentences(std::string_view body);
std::size_t count_sentences(std::string_view body);

} // namespace asymnet::text
