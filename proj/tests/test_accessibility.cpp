#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "kaccess/accessibility.hpp"
#include "kaccess/rng.hpp"
#include "kaccess/tree.hpp"
#include "test_util.hpp"

using namespace kaccess;

namespace {

std::vector<double> to_doubles(const std::vector<int>& v)
{
    return {v.begin(), v.end()};
}

// Explicit complete n-ary tree labeled exactly as the lazy labeler would
// label it, for lazy-vs-explicit agreement checks.
Labeling lazy_labeling_on_explicit(const RootedTree& tree, int n, const LazyLabeler& labeler)
{
    std::vector<double> values(tree.vertex_count());
    for (int v = 0; v < tree.vertex_count(); ++v)
        values[v] = labeler.label(testutil::heap_path(v, n));
    return ranks_from_values(values);
}

} // namespace

TEST_CASE("check_path decides fixed label sequences")
{
    CHECK(check_path(to_doubles({53, 99, 68, 4, 71}), 2));
    CHECK(!check_path(to_doubles({53, 99, 68, 4, 71}), 1));
    CHECK(check_path(to_doubles({53, 65, 13, 78, 26, 91}), 2));
    CHECK(check_path(to_doubles({1, 2}), 1));
    CHECK(!check_path(to_doubles({2, 1}), 1));
    CHECK(check_path(to_doubles({5}), 1));
    CHECK(check_path(to_doubles({5}), 3));

    const auto w1 = check_path_witness(to_doubles({53, 99, 68, 4, 71}), 2);
    REQUIRE(w1.has_value());
    CHECK(*w1 == std::vector<int>{0, 2, 4});

    const auto w2 = check_path_witness(to_doubles({53, 65, 13, 78, 26, 91}), 2);
    REQUIRE(w2.has_value());
    CHECK(*w2 == std::vector<int>{0, 1, 3, 5});
}

TEST_CASE("check_path rejects bad input")
{
    CHECK_THROWS_AS(check_path({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_path(to_doubles({1, 2}), 0), std::invalid_argument);
    CHECK_THROWS_AS(check_path(to_doubles({3, 1, 3}), 2), std::invalid_argument);
}

TEST_CASE("gap rule and window rule accept exactly the same subsequences")
{
    SplitMix64 rng(11);
    for (int len = 2; len <= 12; ++len)
    {
        std::vector<int> labels(len);
        for (int& x : labels)
            x = static_cast<int>(rng.next_below(1000000));
        for (int k = 1; k <= 4; ++k)
            for (std::uint32_t mask = 0; mask < (1u << len); ++mask)
                REQUIRE(testutil::subset_ok_gap(labels, mask, k) ==
                        testutil::subset_ok_window(labels, mask, k));
    }
}

TEST_CASE("check_path agrees with exhaustive subsequence search")
{
    SplitMix64 rng(12);
    for (int round = 0; round < 300; ++round)
    {
        const int len = 1 + static_cast<int>(rng.next_below(12));
        std::vector<int> labels(len);
        for (int& x : labels)
            x = static_cast<int>(rng.next_below(1000)) * 2 + (round & 1);
        std::sort(labels.begin(), labels.end());
        // ensure distinct by construction: re-draw until unique
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
            continue;
        std::vector<int> shuffled = labels;
        for (int i = len - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        for (int k = 1; k <= 4; ++k)
            REQUIRE(check_path(to_doubles(shuffled), k) ==
                    testutil::path_accessible_bruteforce(shuffled, k));
    }
}

TEST_CASE("tree search agrees with the exhaustive oracle and yields valid witnesses")
{
    SplitMix64 rng(21);
    for (int round = 0; round < 200; ++round)
    {
        const int n = 1 + static_cast<int>(rng.next_below(12));
        const auto tree = testutil::random_tree(n, rng);
        const auto labeling = sample_labeling(tree, rng.next());
        for (int k = 1; k <= 3; ++k)
        {
            const auto outcome = is_k_accessible(tree, labeling, k);
            REQUIRE(outcome.verdict != Verdict::Undecided);
            const bool expected = testutil::tree_accessible_bruteforce(tree, labeling, k);
            REQUIRE((outcome.verdict == Verdict::Accessible) == expected);
            if (expected)
            {
                REQUIRE(outcome.witness.has_value());
                REQUIRE(validate_witness(tree, labeling, k, *outcome.witness));
            }
            else
            {
                REQUIRE(!outcome.witness.has_value());
            }
        }
    }
}

TEST_CASE("single-vertex tree is always accessible")
{
    const auto tree = build_nary_tree(1, 0);
    const auto outcome = is_k_accessible(tree, Labeling{{1}}, 1);
    CHECK(outcome.verdict == Verdict::Accessible);
    REQUIRE(outcome.witness.has_value());
    CHECK(outcome.witness->selected == std::vector<int>{0});
}

TEST_CASE("accessibility is monotone in k")
{
    SplitMix64 rng(31);
    for (int round = 0; round < 100; ++round)
    {
        const auto tree = testutil::random_tree(2 + static_cast<int>(rng.next_below(10)), rng);
        const auto labeling = sample_labeling(tree, rng.next());
        bool prev = false;
        for (int k = 1; k <= 5; ++k)
        {
            const bool acc = is_k_accessible(tree, labeling, k).verdict == Verdict::Accessible;
            if (prev)
                REQUIRE(acc);
            prev = acc;
        }
    }
}

TEST_CASE("attaching a subtree off the witness leaf preserves accessibility")
{
    // Note the restriction: grafting new vertices below the witness's own
    // leaf can destroy the witness (the leaf stops being a leaf), so the
    // attachment point is any OTHER vertex.
    SplitMix64 rng(41);
    int exercised = 0;
    while (exercised < 60)
    {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        const auto tree = testutil::random_tree(n, rng);
        const auto labeling = sample_labeling(tree, rng.next());
        const int k = 1 + static_cast<int>(rng.next_below(3));
        const auto outcome = is_k_accessible(tree, labeling, k);
        if (outcome.verdict != Verdict::Accessible)
            continue;
        const int witness_leaf = outcome.witness->selected.back();
        const int attach = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        if (attach == witness_leaf)
            continue;
        ++exercised;

        auto parents = tree.parents();
        const int extra = 1 + static_cast<int>(rng.next_below(3));
        auto ranks = labeling.ranks;
        int at = attach;
        for (int i = 0; i < extra; ++i)
        {
            parents.push_back(at);
            at = static_cast<int>(parents.size()) - 1;
            ranks.push_back(n + i + 1); // new ranks above all old ones
        }
        const auto grown = RootedTree::from_parents(std::move(parents));
        REQUIRE(is_k_accessible(grown, Labeling{std::move(ranks)}, k).verdict == Verdict::Accessible);
    }
}

TEST_CASE("lazy and explicit searches agree on complete trees")
{
    const struct
    {
        int n, h, k;
    } shapes[] = {{2, 3, 1}, {2, 3, 2}, {3, 3, 2}, {2, 4, 3}};
    for (const auto& s : shapes)
    {
        const auto tree = build_nary_tree(s.n, s.h);
        for (std::uint64_t seed = 0; seed < 100; ++seed)
        {
            LazyLabeler labeler(seed * 977 + 13);
            const auto labeling = lazy_labeling_on_explicit(tree, s.n, labeler);
            const auto explicit_outcome = is_k_accessible(tree, labeling, s.k);
            const auto lazy_outcome = lazy_is_k_accessible(s.n, s.h, s.k, labeler);
            REQUIRE(lazy_outcome.verdict == explicit_outcome.verdict);
            if (lazy_outcome.verdict == Verdict::Accessible)
            {
                REQUIRE(lazy_outcome.witness.has_value());
                const auto& w = *lazy_outcome.witness;
                REQUIRE(static_cast<int>(w.leaf_path.size()) == s.h);
                REQUIRE(w.selected_depths.front() == 0);
                REQUIRE(w.selected_depths.back() == s.h);
                // Re-derive the branch labels and check the selection.
                std::vector<double> branch;
                for (int d = 0; d <= s.h; ++d)
                {
                    std::span<const std::uint32_t> prefix(w.leaf_path.data(),
                                                          static_cast<std::size_t>(d));
                    branch.push_back(labeler.label(prefix));
                }
                for (std::size_t i = 1; i < w.selected_depths.size(); ++i)
                {
                    const int a = w.selected_depths[i - 1];
                    const int b = w.selected_depths[i];
                    REQUIRE(b - a <= s.k);
                    REQUIRE(b - a >= 1);
                    REQUIRE(branch[a] < branch[b]);
                }
            }
        }
    }
}

TEST_CASE("budget semantics: undecided means the budget was spent exactly")
{
    LazyLabeler labeler(123);
    const auto full = lazy_is_k_accessible(2, 12, 1, labeler);
    REQUIRE(full.verdict != Verdict::Undecided);

    Verdict decided = Verdict::Undecided;
    std::uint64_t decided_at = 0;
    for (std::uint64_t budget = 1; budget <= full.nodes_visited + 5; ++budget)
    {
        const auto out = lazy_is_k_accessible(2, 12, 1, labeler, budget);
        REQUIRE(out.nodes_visited <= budget);
        if (out.verdict == Verdict::Undecided)
        {
            REQUIRE(out.nodes_visited == budget);
            REQUIRE(decided == Verdict::Undecided); // more budget never un-decides
        }
        else
        {
            if (decided == Verdict::Undecided)
            {
                decided = out.verdict;
                decided_at = out.nodes_visited;
            }
            // Once decided, verdict and cost are stable.
            REQUIRE(out.verdict == decided);
            REQUIRE(out.nodes_visited == decided_at);
        }
    }
    REQUIRE(decided == full.verdict);
    REQUIRE(decided_at == full.nodes_visited);
}

TEST_CASE("lazy search validates parameters")
{
    LazyLabeler labeler(1);
    CHECK_THROWS_AS(lazy_is_k_accessible(0, 3, 1, labeler), std::invalid_argument);
    CHECK_THROWS_AS(lazy_is_k_accessible(2, -1, 1, labeler), std::invalid_argument);
    CHECK_THROWS_AS(lazy_is_k_accessible(2, 3, 0, labeler), std::invalid_argument);
    CHECK_THROWS_AS(lazy_is_k_accessible(2, 3, 1, labeler, 0), std::invalid_argument);
}

TEST_CASE("lazy search on height 0 is accessible at the root")
{
    LazyLabeler labeler(9);
    const auto out = lazy_is_k_accessible(5, 0, 2, labeler, 1);
    CHECK(out.verdict == Verdict::Accessible);
    CHECK(out.nodes_visited == 1);
    REQUIRE(out.witness.has_value());
    CHECK(out.witness->selected_depths == std::vector<int>{0});
    CHECK(out.witness->leaf_path.empty());
}

TEST_CASE("explicit search handles a deep path iteratively")
{
    const int len = 100000;
    std::vector<int> parents(len);
    std::vector<int> ranks(len);
    parents[0] = -1;
    for (int v = 0; v < len; ++v)
    {
        if (v)
            parents[v] = v - 1;
        ranks[v] = v + 1; // increasing along the path
    }
    const auto tree = RootedTree::from_parents(std::move(parents));
    const auto out = is_k_accessible(tree, Labeling{std::move(ranks)}, 1);
    CHECK(out.verdict == Verdict::Accessible);
    REQUIRE(out.witness.has_value());
    CHECK(static_cast<int>(out.witness->selected.size()) == len);
}

TEST_CASE("validate_witness rejects malformed witnesses without throwing")
{
    const auto tree = RootedTree::from_parents({-1, 0, 1, 2});
    const Labeling labeling{{1, 2, 3, 4}};
    Witness good;
    good.selected = {0, 1, 2, 3};
    CHECK(validate_witness(tree, labeling, 1, good));

    Witness skips{{0, 2, 3}, {}, {}};
    CHECK(!validate_witness(tree, labeling, 1, skips)); // gap 2 with k=1
    CHECK(validate_witness(tree, labeling, 2, skips));

    CHECK(!validate_witness(tree, labeling, 1, Witness{{}, {}, {}}));
    CHECK(!validate_witness(tree, labeling, 1, Witness{{0, 1, 2}, {}, {}}));   // ends off-leaf
    CHECK(!validate_witness(tree, labeling, 1, Witness{{1, 2, 3}, {}, {}}));   // starts off-root
    CHECK(!validate_witness(tree, labeling, 1, Witness{{0, 9, 3}, {}, {}}));   // out of range
    CHECK(!validate_witness(tree, labeling, 0, good));                         // bad k
    CHECK(!validate_witness(tree, labeling, 1, Witness{{0, 1, 2, 3}, {0, 1, 1, 3}, {}}));
    const Labeling decreasing{{4, 3, 2, 1}};
    CHECK(!validate_witness(tree, decreasing, 1, good));
}
