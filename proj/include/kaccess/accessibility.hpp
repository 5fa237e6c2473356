#pragma once

// k-accessibility of root-to-leaf paths.
//
// A root-to-leaf path P = v_0 .. v_h is k-accessible under a labeling w if
// some subsequence S of P satisfies all of:
//   * v_0 in S and v_h in S,
//   * labels strictly increase along S,
//   * consecutive vertices of S are at most k apart on P.
// The depth-gap form above is equivalent to requiring every window of k
// consecutive vertices of P to contain a vertex of S (the equivalence is
// exercised exhaustively in the tests). A tree is k-accessible when at
// least one of its root-to-leaf paths is.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "tree.hpp"

namespace kaccess {

enum class Verdict
{
    Accessible,
    Blocked,
    Undecided
};

std::string to_string(Verdict v);

// Selected vertices of a witness subsequence, root first, leaf last.
// For explicit trees `selected` holds vertex ids. For implicit trees a
// vertex's identity is its child-index path, so the witness is reported as
// the full root-to-leaf child path plus the depths that were selected.
struct Witness
{
    std::vector<int> selected;
    std::vector<int> selected_depths;
    std::vector<std::uint32_t> leaf_path;
};

inline constexpr std::uint64_t kUnboundedBudget = std::numeric_limits<std::uint64_t>::max();

struct AccessOutcome
{
    Verdict verdict = Verdict::Undecided;
    std::optional<Witness> witness;
    // Label evaluations performed; one per first visit of a vertex.
    std::uint64_t nodes_visited = 0;
    std::uint64_t budget = kUnboundedBudget;
};

// Decides k-accessibility of a bare label sequence (a path graph read root
// to leaf). Labels must be pairwise distinct; duplicates throw
// std::invalid_argument. O(len * k).
bool check_path(std::span<const double> labels, int k);

// As check_path, but returns the selected positions (ascending, starting at
// 0 and ending at len-1) when accessible.
std::optional<std::vector<int>> check_path_witness(std::span<const double> labels, int k);

// Exhaustive decision on an explicit labeled tree. Never returns Undecided.
// Depth-first in child-index order; the first witness found is returned.
AccessOutcome is_k_accessible(const RootedTree& tree, const Labeling& labeling, int k);

// Budgeted search over the implicit complete n-ary tree of the given
// height, labels drawn from `labeler`. The budget caps label evaluations;
// when it is hit the verdict is Undecided and nodes_visited == budget.
// Children of an expanded vertex are explored in ascending order of their
// entry threshold (deterministic; ties by child index), which keeps witness
// search affordable on deep supercritical instances where index order would
// exhaust the budget on doomed subtrees.
AccessOutcome lazy_is_k_accessible(int n,
                                   int height,
                                   int k,
                                   const LazyLabeler& labeler,
                                   std::uint64_t budget = kUnboundedBudget);

// Independent structural check of a claimed witness: starts at the root,
// ends at a leaf, labels strictly increase, and consecutive selected
// vertices are ancestor/descendant at distance 1..k. Never throws on
// malformed input; returns false instead.
bool validate_witness(const RootedTree& tree, const Labeling& labeling, int k, const Witness& witness);

namespace detail {

// Reusable buffers for the verdict-only search, for callers that decide the
// same tree under many labelings (exact enumeration).
struct SearchScratch
{
    struct Frame
    {
        int vertex;
        std::size_t child_pos;
    };
    std::vector<Frame> stack;
    std::vector<int> frontier;
};

// Verdict-only equivalent of is_k_accessible: no witness, no validation, no
// allocation beyond the scratch. `ranks` must hold distinct values not
// exceeding vertex_count, and k >= 1.
bool k_accessible_verdict(const RootedTree& tree,
                          const std::vector<int>& ranks,
                          int k,
                          SearchScratch& scratch);

} // namespace detail

} // namespace kaccess
