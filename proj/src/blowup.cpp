#include "torusfill/blowup.hpp"

#include "torusfill/sl2z.hpp"

#include <numeric>
#include <string>

namespace torusfill {

Seq blowup_at(const Seq& s, std::size_t i)
{
    if (s.size() < 2 || i < 1 || i >= s.size())
        throw DomainError("blowup_at: index " + std::to_string(i) + " out of range for length " +
                          std::to_string(s.size()));
    Seq out;
    out.reserve(s.size() + 1);
    out.insert(out.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i));
    out.back() = checked::add(out.back(), 1);
    out.push_back(1);
    out.push_back(checked::add(s[i], 1));
    out.insert(out.end(), s.begin() + static_cast<std::ptrdiff_t>(i) + 1, s.end());
    return out;
}

bool dominates(const Seq& s, const Seq& c)
{
    if (s.size() != c.size())
        return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] > c[i])
            return false;
    return true;
}

std::set<Seq> enumerate_blowups(std::size_t length, std::size_t limit)
{
    if (length < 2)
        throw DomainError("enumerate_blowups: length must be at least 2");
    if (length > limit)
        throw ResourceError("enumerate_blowups: length " + std::to_string(length) + " exceeds limit " +
                            std::to_string(limit));
    std::set<Seq> level{{0, 0}};
    for (std::size_t l = 2; l < length; ++l) {
        std::set<Seq> next;
        for (const auto& s : level)
            for (std::size_t i = 1; i < s.size(); ++i)
                next.insert(blowup_at(s, i));
        level = std::move(next);
    }
    return level;
}

namespace {

bool path_search(const Seq& s, std::vector<std::size_t>& path, std::set<Seq>& dead)
{
    if (s == Seq{0, 0})
        return true;
    if (s.size() <= 2 || dead.contains(s))
        return false;
    // undo a blowup: an interior 1 whose neighbours are both positive
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
        if (s[j] != 1 || s[j - 1] < 1 || s[j + 1] < 1)
            continue;
        Seq down(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(j));
        down.back() -= 1;
        down.push_back(s[j + 1] - 1);
        down.insert(down.end(), s.begin() + static_cast<std::ptrdiff_t>(j) + 2, s.end());
        if (path_search(down, path, dead)) {
            path.push_back(j);
            return true;
        }
    }
    dead.insert(s);
    return false;
}

/// Necessary condition for s to grow into a sequence dominated by c: entries only grow,
/// the ends stay ends, and the interior keeps its order.
bool can_grow_into(const Seq& s, const Seq& c, Int c_sum)
{
    const std::size_t k = s.size(), l = c.size();
    if (k > l || s.front() > c.front() || s.back() > c.back())
        return false;
    Int s_sum = std::accumulate(s.begin(), s.end(), Int{0});
    if (s_sum + 3 * static_cast<Int>(l - k) > c_sum)
        return false;
    std::size_t pos = 1;
    for (std::size_t i = 1; i + 1 < k; ++i) {
        while (pos + 1 < l && s[i] > c[pos])
            ++pos;
        if (pos + 1 >= l)
            return false;
        ++pos;
    }
    return true;
}

} // namespace

std::optional<std::vector<std::size_t>> blowup_path(const Seq& s)
{
    if (s.size() < 2)
        return std::nullopt;
    for (Int x : s)
        if (x < 0)
            return std::nullopt;
    std::vector<std::size_t> path;
    std::set<Seq> dead;
    if (!path_search(s, path, dead))
        return std::nullopt;
    return path;
}

bool is_blowup_of_origin(const Seq& s)
{
    return blowup_path(s).has_value();
}

std::vector<Seq> dominated_blowups(const Seq& c, std::size_t limit)
{
    if (c.size() < 2)
        return {};
    if (c.size() > limit)
        throw ResourceError("dominated_blowups: length " + std::to_string(c.size()) + " exceeds limit " +
                            std::to_string(limit));
    const Int c_sum = std::accumulate(c.begin(), c.end(), Int{0});
    std::set<Seq> found;
    std::set<Seq> visited;
    std::vector<Seq> stack;
    if (can_grow_into({0, 0}, c, c_sum))
        stack.push_back({0, 0});
    while (!stack.empty()) {
        Seq s = std::move(stack.back());
        stack.pop_back();
        if (!visited.insert(s).second)
            continue;
        if (s.size() == c.size()) {
            if (dominates(s, c))
                found.insert(s);
            continue;
        }
        for (std::size_t i = 1; i < s.size(); ++i) {
            Seq t = blowup_at(s, i);
            if (!visited.contains(t) && can_grow_into(t, c, c_sum))
                stack.push_back(std::move(t));
        }
    }
    return {found.begin(), found.end()};
}

std::vector<EmbeddingWitness> embedding_witnesses(const Seq& d, std::size_t limit)
{
    const Seq base = rho(d);
    std::vector<EmbeddingWitness> out;
    if (base.size() < 2)
        return out;
    for (std::size_t k = 0; k < base.size(); ++k) {
        Seq target = rotate(base, k);
        for (auto& s : dominated_blowups(target, limit))
            out.push_back({std::move(s), target, k});
    }
    return out;
}

std::optional<EmbeddingWitness> is_embeddable(const Seq& d, std::size_t limit)
{
    const Seq base = rho(d);
    if (base.size() < 2)
        return std::nullopt;
    for (std::size_t k = 0; k < base.size(); ++k) {
        Seq target = rotate(base, k);
        auto found = dominated_blowups(target, limit);
        if (!found.empty())
            return EmbeddingWitness{found.front(), target, k};
    }
    return std::nullopt;
}

} // namespace torusfill
