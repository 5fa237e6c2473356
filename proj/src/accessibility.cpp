#include "kaccess/accessibility.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

// Both searches below run the same dynamic program. Walking down a path,
// the live search states at a vertex are (threshold = label of the last
// selected vertex, s = skips still allowed before the next selection).
// A state (t, s) is dominated by (t', s') when t' <= t and s' >= s, so per
// vertex it suffices to keep, for each s in 0..k-1, the minimal threshold
// reaching it: a frontier of k numbers. Merging states this way visits
// every vertex at most once, which is also what the budget counts.
//
// Transitions into a child with label w:
//   select: some slot s has threshold < w  ->  slot k-1 gets w
//   skip:   slot s (s >= 1)                ->  slot s-1 keeps its threshold
// A leaf must be selected, so only the select transition applies there.

namespace kaccess {

std::string to_string(Verdict v)
{
    switch (v)
    {
        case Verdict::Accessible: return "accessible";
        case Verdict::Blocked: return "blocked";
        case Verdict::Undecided: return "undecided";
    }
    return "undecided";
}

namespace {

// Positions of one minimal increasing chain over `labels` that starts at 0,
// ends at the last index, and has index gaps <= k. nullopt if none exists.
template <typename L>
std::optional<std::vector<int>> cover_positions(std::span<const L> labels, int k)
{
    const int m = static_cast<int>(labels.size());
    std::vector<int> pred(m, -1);
    std::vector<char> ok(m, 0);
    ok[0] = 1;
    for (int i = 1; i < m; ++i)
    {
        for (int j = std::max(0, i - k); j < i; ++j)
        {
            if (ok[j] && labels[j] < labels[i])
            {
                ok[i] = 1;
                pred[i] = j;
                break;
            }
        }
    }
    if (!ok[m - 1])
        return std::nullopt;
    std::vector<int> positions;
    for (int i = m - 1; i != -1; i = pred[i])
        positions.push_back(i);
    std::reverse(positions.begin(), positions.end());
    return positions;
}

} // namespace

bool check_path(std::span<const double> labels, int k)
{
    return check_path_witness(labels, k).has_value();
}

std::optional<std::vector<int>> check_path_witness(std::span<const double> labels, int k)
{
    if (labels.empty())
        throw std::invalid_argument("label sequence is empty");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    std::vector<double> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate label value (ties are outside the model)");
    return cover_positions(labels, k);
}

namespace detail {

bool k_accessible_verdict(const RootedTree& tree,
                          const std::vector<int>& ranks,
                          int k,
                          SearchScratch& scratch)
{
    const int root = tree.root();
    if (tree.is_leaf(root))
        return true;

    const int keff = std::min(k, std::max(1, tree.height()));
    const int inf = tree.vertex_count() + 1;

    auto& stack = scratch.stack;
    auto& fbuf = scratch.frontier;
    stack.clear();
    fbuf.clear();

    stack.push_back({root, 0});
    fbuf.assign(keff, inf);
    fbuf[keff - 1] = ranks[root];

    while (!stack.empty())
    {
        auto& [vertex, child_pos] = stack.back();
        const auto& kids = tree.children(vertex);
        if (child_pos == kids.size())
        {
            stack.pop_back();
            fbuf.resize(fbuf.size() - keff);
            continue;
        }
        const int c = kids[child_pos++];
        const int w = ranks[c];
        const std::size_t base = (stack.size() - 1) * keff;

        bool can_select = false;
        for (int s = 0; s < keff; ++s)
        {
            if (fbuf[base + s] < w)
            {
                can_select = true;
                break;
            }
        }

        if (tree.is_leaf(c))
        {
            if (can_select)
                return true;
            continue;
        }

        const std::size_t nb = fbuf.size();
        fbuf.resize(nb + keff, inf);
        bool nonempty = false;
        for (int s = 1; s < keff; ++s)
        {
            if (fbuf[base + s] < inf)
            {
                fbuf[nb + s - 1] = fbuf[base + s];
                nonempty = true;
            }
        }
        if (can_select)
        {
            fbuf[nb + keff - 1] = std::min(fbuf[nb + keff - 1], w);
            nonempty = true;
        }
        if (nonempty)
            stack.push_back({c, 0});
        else
            fbuf.resize(nb);
    }
    return false;
}

} // namespace detail

AccessOutcome is_k_accessible(const RootedTree& tree, const Labeling& labeling, int k)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    validate_labeling(tree, labeling);
    const auto& ranks = labeling.ranks;

    AccessOutcome out;
    out.budget = kUnboundedBudget;
    out.nodes_visited = 1;

    const int root = tree.root();
    if (tree.is_leaf(root))
    {
        out.verdict = Verdict::Accessible;
        out.witness = Witness{{root}, {0}, {}};
        return out;
    }

    const int keff = std::min(k, std::max(1, tree.height()));
    const int inf = tree.vertex_count() + 1;

    struct Frame
    {
        int vertex;
        std::size_t child_pos;
    };
    std::vector<Frame> stack{{root, 0}};
    std::vector<int> fbuf(keff, inf);
    std::vector<int> path{root}; // vertices of the branch the DFS sits on
    fbuf[keff - 1] = ranks[root];

    while (!stack.empty())
    {
        auto& fr = stack.back();
        const auto& kids = tree.children(fr.vertex);
        if (fr.child_pos == kids.size())
        {
            stack.pop_back();
            path.pop_back();
            fbuf.resize(fbuf.size() - keff);
            continue;
        }
        const int c = kids[fr.child_pos++];
        const int w = ranks[c];
        ++out.nodes_visited;
        const std::size_t base = (stack.size() - 1) * keff;

        bool can_select = false;
        for (int s = 0; s < keff; ++s)
        {
            if (fbuf[base + s] < w)
            {
                can_select = true;
                break;
            }
        }

        if (tree.is_leaf(c))
        {
            if (!can_select)
                continue;
            // The frontier tracked exactly the chain DP along this branch,
            // so re-running the DP on the branch labels must succeed.
            path.push_back(c);
            std::vector<int> branch_ranks(path.size());
            for (std::size_t i = 0; i < path.size(); ++i)
                branch_ranks[i] = ranks[path[i]];
            auto positions = cover_positions(std::span<const int>(branch_ranks), k);
            if (!positions)
                throw std::logic_error("frontier/DP mismatch while extracting a witness");
            Witness wit;
            for (int pos : *positions)
            {
                wit.selected.push_back(path[pos]);
                wit.selected_depths.push_back(pos);
            }
            out.witness = std::move(wit);
            out.verdict = Verdict::Accessible;
            return out;
        }

        const std::size_t nb = fbuf.size();
        fbuf.resize(nb + keff, inf);
        bool nonempty = false;
        for (int s = 1; s < keff; ++s)
        {
            if (fbuf[base + s] < inf)
            {
                fbuf[nb + s - 1] = fbuf[base + s];
                nonempty = true;
            }
        }
        if (can_select)
        {
            fbuf[nb + keff - 1] = std::min(fbuf[nb + keff - 1], w);
            nonempty = true;
        }
        if (nonempty)
        {
            stack.push_back({c, 0});
            path.push_back(c);
        }
        else
        {
            fbuf.resize(nb);
        }
    }
    out.verdict = Verdict::Blocked;
    return out;
}

AccessOutcome lazy_is_k_accessible(int n,
                                   int height,
                                   int k,
                                   const LazyLabeler& labeler,
                                   std::uint64_t budget)
{
    if (n < 1)
        throw std::invalid_argument("arity must be >= 1");
    if (height < 0)
        throw std::invalid_argument("height must be >= 0");
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (budget < 1)
        throw std::invalid_argument("budget must be >= 1");

    AccessOutcome out;
    out.budget = budget;

    const std::uint64_t root_state = labeler.root_state();
    const double root_label = LazyLabeler::label_of_state(root_state);
    out.nodes_visited = 1;

    if (height == 0)
    {
        out.verdict = Verdict::Accessible;
        out.witness = Witness{{}, {0}, {}};
        return out;
    }

    const int keff = std::min(k, height);
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto nc = static_cast<std::uint32_t>(n);

    // Children of an expanded vertex are explored in ascending order of the
    // lowest label the chain could select next by going through them: the
    // child's own label when it is selectable, or (when skips allow going
    // deeper first) the smallest grandchild label that clears the child's
    // entry threshold. Ties break by child index, so exploration stays
    // deterministic. The one-level lookahead is what keeps deep witness
    // searches with k >= 2 affordable: the next selection is drawn from the
    // child AND grandchild pool, and ordering blind to grandchildren strands
    // the search in subtrees whose cheap continuations are one level down.
    // Grandchild labels fetched for ordering are cached and reused when that
    // child is expanded (or its leaves scanned), so each vertex still costs
    // exactly one label evaluation, charged when first generated.
    struct ChildRef
    {
        double key;
        double label;
        std::uint32_t ci;
        std::uint32_t batch;
    };
    struct Frame
    {
        std::uint64_t state;
        std::uint32_t order_base;
        std::uint32_t order_count;
        std::uint32_t next_idx;
        std::uint32_t cbatch_mark;
    };
    constexpr std::uint32_t kNoBatch = std::numeric_limits<std::uint32_t>::max();
    const bool look = height >= 2;
    std::vector<ChildRef> corder;
    std::vector<double> cbatch; // cached child batches, n labels each
    std::vector<Frame> stack;
    std::vector<double> fbuf(keff, inf);
    std::vector<double> branch_labels{root_label};
    std::vector<std::uint32_t> child_path;
    std::vector<double> labels_scratch;
    fbuf[keff - 1] = root_label;

    // Scans the leaf children of the vertex at `base` for a selectable label;
    // 1 success (branch_labels/child_path extended), 0 none, -1 budget.
    // `cached` points at the batch pre-generated by the parent's ordering
    // pass, in which case the labels are already paid for.
    const auto scan_leaves = [&](std::uint64_t state, std::size_t base, std::uint32_t cached) -> int {
        double parent_min = inf;
        for (int s = 0; s < keff; ++s)
            parent_min = std::min(parent_min, fbuf[base + s]);
        for (std::uint32_t ci = 0; ci < nc; ++ci)
        {
            double w;
            if (cached != kNoBatch)
                w = cbatch[cached + ci];
            else
            {
                if (out.nodes_visited == budget)
                    return -1;
                w = LazyLabeler::label_of_state(LazyLabeler::child_state(state, ci));
                ++out.nodes_visited;
            }
            if (parent_min < w)
            {
                branch_labels.push_back(w);
                child_path.push_back(ci);
                return 1;
            }
        }
        return 0;
    };

    // Expands the vertex whose frontier starts at depth*keff: materializes its
    // children (from `cached` when the parent already generated them), keeps
    // the live ones ordered by key, and pushes a frame. Returns 2 pushed,
    // 1 leaf witness completed, 0 dead end, -1 budget exhausted.
    const auto enter = [&](std::uint64_t state, int depth, std::uint32_t cached) -> int {
        const std::size_t base = static_cast<std::size_t>(depth) * keff;
        if (depth + 1 == height)
            return scan_leaves(state, base, cached);

        double parent_min = inf;
        double skip_min = inf;
        for (int s = 0; s < keff; ++s)
            parent_min = std::min(parent_min, fbuf[base + s]);
        for (int s = 1; s < keff; ++s)
            skip_min = std::min(skip_min, fbuf[base + s]);

        labels_scratch.clear();
        if (cached != kNoBatch)
            labels_scratch.assign(cbatch.begin() + cached, cbatch.begin() + cached + nc);
        else
            for (std::uint32_t ci = 0; ci < nc; ++ci)
            {
                if (out.nodes_visited == budget)
                    return -1;
                labels_scratch.push_back(
                    LazyLabeler::label_of_state(LazyLabeler::child_state(state, ci)));
                ++out.nodes_visited;
            }

        const auto mark = static_cast<std::uint32_t>(cbatch.size());
        const std::size_t start = corder.size();
        for (std::uint32_t ci = 0; ci < nc; ++ci)
        {
            const double w = labels_scratch[ci];
            const bool selectable = parent_min < w;
            if (skip_min == inf && !selectable)
                continue;
            // keff == 1 forces a selection at every level, so a child is only
            // as good as the best grandchild it can continue through (none
            // means the subtree is dead and sorts last). With skips the
            // child's own label also competes, and the bar a grandchild must
            // clear is the entry threshold: the best slot the child's own
            // children will see.
            double key = (keff >= 2 && selectable) ? w : inf;
            std::uint32_t b = kNoBatch;
            if (look)
            {
                const double cut = keff >= 2 ? std::min(skip_min, key) : w;
                b = static_cast<std::uint32_t>(cbatch.size());
                const std::uint64_t cstate = LazyLabeler::child_state(state, ci);
                for (std::uint32_t cj = 0; cj < nc; ++cj)
                {
                    if (out.nodes_visited == budget)
                        return -1;
                    const double g =
                        LazyLabeler::label_of_state(LazyLabeler::child_state(cstate, cj));
                    ++out.nodes_visited;
                    cbatch.push_back(g);
                    if (g > cut)
                        key = std::min(key, g);
                }
            }
            corder.push_back({key, w, ci, b});
        }
        if (corder.size() == start)
        {
            cbatch.resize(mark);
            return 0;
        }
        std::sort(corder.begin() + start, corder.end(), [](const ChildRef& a, const ChildRef& b) {
            return a.key != b.key ? a.key < b.key : a.ci < b.ci;
        });
        stack.push_back({state, static_cast<std::uint32_t>(start),
                         static_cast<std::uint32_t>(corder.size() - start), 0, mark});
        return 2;
    };

    int entered = enter(root_state, 0, kNoBatch);
    while (entered == 2 && !stack.empty())
    {
        auto& fr = stack.back();
        const int depth = static_cast<int>(stack.size()) - 1;
        if (fr.next_idx == fr.order_count)
        {
            cbatch.resize(fr.cbatch_mark);
            corder.resize(fr.order_base);
            stack.pop_back();
            if (!stack.empty())
            {
                branch_labels.pop_back();
                child_path.pop_back();
                fbuf.resize(fbuf.size() - keff);
            }
            continue;
        }
        const ChildRef child = corder[fr.order_base + fr.next_idx++];
        const std::size_t base = static_cast<std::size_t>(depth) * keff;

        const std::size_t nb = fbuf.size();
        fbuf.resize(nb + keff, inf);
        for (int s = 1; s < keff; ++s)
            fbuf[nb + s - 1] = fbuf[base + s];
        double parent_min = inf;
        for (int s = 0; s < keff; ++s)
            parent_min = std::min(parent_min, fbuf[base + s]);
        if (parent_min < child.label)
            fbuf[nb + keff - 1] = std::min(fbuf[nb + keff - 1], child.label);

        branch_labels.push_back(child.label);
        child_path.push_back(child.ci);
        entered = enter(LazyLabeler::child_state(fr.state, child.ci), depth + 1, child.batch);
        if (entered == 0 || entered == 2)
        {
            if (entered == 0)
            {
                branch_labels.pop_back();
                child_path.pop_back();
                fbuf.resize(nb);
            }
            entered = 2;
            continue;
        }
        break;
    }

    if (entered == -1)
    {
        out.verdict = Verdict::Undecided;
        return out;
    }
    if (entered == 1)
    {
        auto positions = cover_positions(std::span<const double>(branch_labels), k);
        if (!positions)
            throw std::logic_error("frontier/DP mismatch while extracting a witness");
        Witness wit;
        wit.selected_depths = std::move(*positions);
        wit.leaf_path = child_path;
        out.witness = std::move(wit);
        out.verdict = Verdict::Accessible;
        return out;
    }
    out.verdict = Verdict::Blocked;
    return out;
}

bool validate_witness(const RootedTree& tree, const Labeling& labeling, int k, const Witness& witness)
{
    if (k < 1)
        return false;
    const int n = tree.vertex_count();
    if (static_cast<int>(labeling.ranks.size()) != n)
        return false;
    const auto& sel = witness.selected;
    if (sel.empty())
        return false;
    for (int v : sel)
        if (v < 0 || v >= n)
            return false;
    if (sel.front() != tree.root() || !tree.is_leaf(sel.back()))
        return false;
    if (!witness.selected_depths.empty())
    {
        if (witness.selected_depths.size() != sel.size())
            return false;
        for (std::size_t i = 0; i < sel.size(); ++i)
            if (witness.selected_depths[i] != tree.depth(sel[i]))
                return false;
    }
    for (std::size_t i = 1; i < sel.size(); ++i)
    {
        if (labeling.ranks[sel[i - 1]] >= labeling.ranks[sel[i]])
            return false;
        // sel[i] must be a descendant of sel[i-1] at distance 1..k.
        int v = sel[i];
        bool found = false;
        for (int step = 0; step < k; ++step)
        {
            v = tree.parent(v);
            if (v == -1)
                break;
            if (v == sel[i - 1])
            {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

} // namespace kaccess
