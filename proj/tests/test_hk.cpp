#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "kaccess/hk.hpp"
#include "kaccess/skip_sets.hpp"

using namespace kaccess;

namespace {

std::uint64_t formula_vertex_count(int n, int h, int k)
{
    // sum over underlying depth l of n^l * |A_l|, with |A_0| = 1.
    std::uint64_t total = 1;
    std::uint64_t pw = 1;
    for (int l = 1; l <= h; ++l)
    {
        pw *= static_cast<std::uint64_t>(n);
        total += pw * count_skip_sets(l, k);
    }
    return total;
}

} // namespace

TEST_CASE("expansion of the 2-path with k=2")
{
    const auto hk = build_hk(1, 2, 2, 1000);
    REQUIRE(hk.tree.vertex_count() == 4);
    // Root 0 = (depth 0, {}); sons in order: (1, {}) then (2, {1}); then
    // (1, {})'s son (2, {}).
    CHECK(hk.tree.children(0) == std::vector<int>{1, 2});
    CHECK(hk.tree.children(1) == std::vector<int>{3});
    CHECK(hk.t_depth == std::vector<int>{0, 1, 2, 2});
    CHECK(hk.skip_sets[0].empty());
    CHECK(hk.skip_sets[1].empty());
    CHECK(hk.skip_sets[2] == SkipSet{1});
    CHECK(hk.skip_sets[3].empty());
    CHECK(hk.tree.height() == 2);
}

TEST_CASE("expansion of the 3-path with k=2 has three leaves")
{
    const auto hk = build_hk(1, 3, 2, 1000);
    int leaves = 0;
    for (int v = 0; v < hk.tree.vertex_count(); ++v)
        if (hk.tree.is_leaf(v))
            ++leaves;
    CHECK(leaves == 3);
    for (int v = 0; v < hk.tree.vertex_count(); ++v)
        CHECK(hk.tree.is_leaf(v) == (hk.t_depth[v] == 3));
}

TEST_CASE("root degree of the binary height-2 expansion is 6")
{
    const auto hk = build_hk(2, 2, 2, 1000);
    REQUIRE(hk.tree.children(0).size() == 6);
    CHECK(hk.expected_degree(0) == 6);
    // Order: the two distance-1 sons first, then the four distance-2 ones.
    CHECK(hk.t_depth[hk.tree.children(0)[0]] == 1);
    CHECK(hk.t_depth[hk.tree.children(0)[1]] == 1);
    for (int i = 2; i < 6; ++i)
    {
        const int son = hk.tree.children(0)[i];
        CHECK(hk.t_depth[son] == 2);
        CHECK(hk.skip_sets[son] == SkipSet{1});
    }
}

TEST_CASE("vertex counts match the closed-form sum")
{
    CHECK(build_hk(2, 4, 2, 100000).tree.vertex_count() == 115);
    CHECK(build_hk(3, 3, 2, 100000).tree.vertex_count() == 103);
    CHECK(build_hk(2, 6, 3, 100000).tree.vertex_count() == 2107);

    for (int n = 1; n <= 3; ++n)
        for (int h = 0; h <= 5; ++h)
            for (int k = 1; k <= 3; ++k)
                REQUIRE(static_cast<std::uint64_t>(build_hk(n, h, k, 1u << 20).tree.vertex_count()) ==
                        formula_vertex_count(n, h, k));
}

TEST_CASE("every internal vertex has the formula degree")
{
    const struct
    {
        int n, h, k;
    } shapes[] = {{2, 4, 2}, {3, 3, 2}, {2, 6, 3}};
    for (const auto& s : shapes)
    {
        const auto hk = build_hk(s.n, s.h, s.k, 1u << 20);
        for (int v = 0; v < hk.tree.vertex_count(); ++v)
        {
            REQUIRE(hk.tree.children(v).size() == hk.expected_degree(v));
            if (hk.t_depth[v] == s.h)
                REQUIRE(hk.tree.is_leaf(v));
        }
    }
}

TEST_CASE("expansion depth equals underlying depth minus skip count")
{
    const auto hk = build_hk(2, 5, 3, 1u << 20);
    for (int v = 0; v < hk.tree.vertex_count(); ++v)
    {
        REQUIRE(hk.tree.depth(v) == hk.t_depth[v] - static_cast<int>(hk.skip_sets[v].size()));
        // Skip sets never contain k consecutive depths.
        int run = 0, prev = -10;
        for (int e : hk.skip_sets[v])
        {
            run = (e == prev + 1) ? run + 1 : 1;
            REQUIRE(run <= hk.k - 1);
            prev = e;
        }
    }
}

TEST_CASE("k=1 expansion is the tree itself")
{
    const auto hk = build_hk(2, 4, 1, 1u << 20);
    CHECK(hk.tree.vertex_count() == 31);
    for (int v = 0; v < 31; ++v)
        CHECK(hk.skip_sets[v].empty());
}

TEST_CASE("height-0 expansion is a single vertex")
{
    const auto hk = build_hk(3, 0, 2, 10);
    CHECK(hk.tree.vertex_count() == 1);
    CHECK(hk.tree.is_leaf(0));
}

TEST_CASE("truncation keeps a depth prefix")
{
    const auto full = build_hk(1, 4, 2, 1u << 20);
    const auto cut = build_hk(1, 4, 2, 1u << 20, 2);
    std::size_t expected = 0;
    for (int v = 0; v < full.tree.vertex_count(); ++v)
        if (full.tree.depth(v) <= 2)
            ++expected;
    REQUIRE(static_cast<std::size_t>(cut.tree.vertex_count()) == expected);
    for (int v = 0; v < cut.tree.vertex_count(); ++v)
        REQUIRE(cut.tree.depth(v) <= 2);
}

TEST_CASE("vertex cap and argument validation")
{
    CHECK_THROWS_AS(build_hk(2, 6, 3, 100), SizeCapError);
    CHECK_THROWS_AS(build_hk(0, 2, 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(build_hk(2, -1, 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(build_hk(2, 2, 0, 100), std::invalid_argument);
    CHECK_THROWS_AS(build_hk(2, 2, 2, 0), std::invalid_argument);
}
