#include "kaccess/hk.hpp"

#include <stdexcept>
#include <string>

namespace kaccess {

namespace {

// n^j, clamped to cap+1 so callers can compare against a cap without
// overflow.
std::uint64_t pow_clamped(std::uint64_t n, int j, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (int i = 0; i < j; ++i)
    {
        if (r > cap / n)
            return cap + 1;
        r *= n;
    }
    return r;
}

} // namespace

std::size_t HkTree::expected_degree(int vertex) const
{
    const int d = h - t_depth[vertex];
    std::uint64_t total = 0;
    for (int j = 1; j <= std::min(k, d); ++j)
        total += pow_clamped(static_cast<std::uint64_t>(n), j, std::uint64_t{1} << 62);
    return static_cast<std::size_t>(total);
}

HkTree build_hk(int n, int h, int k, std::size_t vertex_cap, int truncate_depth)
{
    if (n < 1)
        throw std::invalid_argument("arity must be >= 1");
    if (h < 0)
        throw std::invalid_argument("height must be >= 0");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (vertex_cap < 1)
        throw std::invalid_argument("vertex cap must be >= 1");

    HkTree out;
    out.n = n;
    out.h = h;
    out.k = k;

    std::vector<int> parents{-1};
    out.t_depth.push_back(0);
    out.skip_sets.push_back({});

    // Expansion depth of a vertex is l - |s|, and every son sits exactly one
    // deeper, so the queue walk below is a level-order walk.
    for (std::size_t head = 0; head < parents.size(); ++head)
    {
        const int l = out.t_depth[head];
        if (l == h)
            continue; // underlying T-leaf
        const int exp_depth = l - static_cast<int>(out.skip_sets[head].size());
        if (truncate_depth >= 0 && exp_depth == truncate_depth)
            continue;
        for (int j = 1; j <= std::min(k, h - l); ++j)
        {
            // s gains the j-1 skipped depths l+1 .. l+j-1; s's elements are
            // all <= l-1, so no run of k consecutive skips can form.
            SkipSet son_set = out.skip_sets[head];
            for (int d = l + 1; d <= l + j - 1; ++d)
                son_set.push_back(d);

            const std::uint64_t fanout = pow_clamped(static_cast<std::uint64_t>(n), j, vertex_cap);
            if (fanout > vertex_cap - parents.size())
                throw SizeCapError("expansion would exceed " + std::to_string(vertex_cap) + " vertices");
            for (std::uint64_t w = 0; w < fanout; ++w)
            {
                parents.push_back(static_cast<int>(head));
                out.t_depth.push_back(l + j);
                out.skip_sets.push_back(son_set);
            }
        }
    }

    out.tree = RootedTree::from_parents(std::move(parents));
    return out;
}

} // namespace kaccess
