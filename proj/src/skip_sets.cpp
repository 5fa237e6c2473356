#include "kaccess/skip_sets.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "kaccess/tree.hpp" // SizeCapError

namespace kaccess {

namespace {

constexpr std::uint64_t kEnumerationCap = 1'000'000;

void require_args(int l, int k)
{
    if (l < 1)
        throw std::invalid_argument("depth l must be >= 1");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
}

} // namespace

std::uint64_t count_skip_sets(int l, int k)
{
    require_args(l, k);
    const int m = l - 1;
    if (m < k)
    {
        if (m >= 64)
            throw std::overflow_error("skip set count exceeds 2^64-1");
        return std::uint64_t{1} << m;
    }
    // c[i] for i = 0..m; m >= k here so the recurrence window is full.
    std::vector<std::uint64_t> c(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i < k; ++i)
        c[i] = std::uint64_t{1} << i;
    for (int i = k; i <= m; ++i)
    {
        unsigned __int128 sum = 0;
        for (int j = 0; j < k; ++j)
            sum += c[i - 1 - j];
        if (sum > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("skip set count exceeds 2^64-1");
        c[i] = static_cast<std::uint64_t>(sum);
    }
    return c[m];
}

std::vector<SkipSet> enumerate_skip_sets(int l, int k)
{
    require_args(l, k);
    const std::uint64_t total = count_skip_sets(l, k);
    if (total > kEnumerationCap)
        throw SizeCapError("skip set enumeration for l=" + std::to_string(l) + ", k=" + std::to_string(k) +
                           " would produce " + std::to_string(total) + " sets (cap " +
                           std::to_string(kEnumerationCap) + ")");

    std::vector<SkipSet> out;
    out.reserve(total);
    SkipSet current;
    // Depth-first extension by larger elements emits lexicographic order.
    // run = length of the consecutive run ending at current.back().
    auto extend = [&](auto&& self, int run) -> void {
        out.push_back(current);
        const int next_min = current.empty() ? 1 : current.back() + 1;
        for (int e = next_min; e <= l - 1; ++e)
        {
            const int new_run = (!current.empty() && e == current.back() + 1) ? run + 1 : 1;
            if (new_run > k - 1)
                continue;
            current.push_back(e);
            self(self, new_run);
            current.pop_back();
        }
    };
    extend(extend, 0);
    return out;
}

} // namespace kaccess
