#pragma once

#include <asymnet/corpus.hpp>

#include <chrono>
#include <string>
#include <vector>

namespace fixture {

inline asymnet::Timestamp day(double d)
{
    return asymnet::Timestamp{std::chrono::seconds{static_cast<long long>(d * 86400.0)}} +
           std::chrono::sys_days{std::chrono::year{2001} / 1 / 1}.time_since_epoch();
}

inline asymnet::Message msg(std::string id, std::string from, std::vector<std::string> to, double d,
                            std::string body = "x")
{
    return {std::move(id), std::move(from), std::move(to), day(d), std::move(body)};
}

inline std::vector<const asymnet::Message*> ptrs(const std::vector<asymnet::Message>& ms)
{
    std::vector<const asymnet::Message*> out;
    for (const auto& m : ms)
        out.push_back(&m);
    return out;
}

// `n` messages from -> to, spread one per day from day `start`.
inline void add_stream(std::vector<asymnet::Message>& out, const std::string& from, const std::string& to,
                       int n, double start = 0, const std::string& body = "x")
{
    for (int i = 0; i < n; ++i)
        out.push_back(msg(from + ">" + to + "#" + std::to_string(out.size()), from, {to}, start + i, body));
}

} // namespace fixture
