#include "kaccess/closure.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kaccess {

void MonotoneDag::validate() const
{
    const int n = vertex_count();
    if (n < 1)
        throw std::invalid_argument("dag has no vertices");
    if (source < 0 || source >= n)
        throw std::invalid_argument("source out of range");

    std::vector<int> indeg(n, 0);
    for (int u = 0; u < n; ++u)
    {
        const auto& out = adjacency[u];
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            const int v = out[i];
            if (v < 0 || v >= n)
                throw std::invalid_argument("edge target out of range from vertex " + std::to_string(u));
            if (v == u)
                throw std::invalid_argument("self loop at vertex " + std::to_string(u));
            if (i > 0 && out[i - 1] >= v)
                throw std::invalid_argument("out-edges of vertex " + std::to_string(u) + " not strictly ascending");
            ++indeg[v];
        }
    }

    for (int v = 0; v < n; ++v)
    {
        if (indeg[v] == 0 && v != source)
            throw std::invalid_argument("vertex " + std::to_string(v) + " has no in-edges but is not the source");
    }
    if (indeg[source] != 0)
        throw std::invalid_argument("source has an in-edge");

    std::vector<int> expected_sinks;
    for (int v = 0; v < n; ++v)
        if (adjacency[v].empty())
            expected_sinks.push_back(v);
    if (sinks != expected_sinks)
        throw std::invalid_argument("sink list does not match the out-degree-0 vertices");

    // Kahn's algorithm; a leftover vertex means a cycle.
    std::vector<int> degree = indeg;
    std::vector<int> queue{source};
    std::size_t head = 0;
    while (head < queue.size())
    {
        const int u = queue[head++];
        for (int v : adjacency[u])
            if (--degree[v] == 0)
                queue.push_back(v);
    }
    if (static_cast<int>(queue.size()) != n)
        throw std::invalid_argument("dag contains a cycle");
}

MonotoneDag k_transitive_closure(const RootedTree& tree, int k)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    const int n = tree.vertex_count();

    MonotoneDag dag;
    dag.source = tree.root();
    dag.adjacency.resize(n);

    std::size_t total_edges = 0;
    std::vector<std::pair<int, int>> stack; // (vertex, distance from u)
    for (int u = 0; u < n; ++u)
    {
        auto& out = dag.adjacency[u];
        stack.clear();
        stack.emplace_back(u, 0);
        while (!stack.empty())
        {
            auto [v, dist] = stack.back();
            stack.pop_back();
            if (dist > 0)
                out.push_back(v);
            if (dist < k)
                for (int c : tree.children(v))
                    stack.emplace_back(c, dist + 1);
        }
        std::sort(out.begin(), out.end());
        total_edges += out.size();
        if (total_edges > kMaxClosureEdges)
            throw SizeCapError("closure would exceed " + std::to_string(kMaxClosureEdges) + " edges");
        if (out.empty())
            dag.sinks.push_back(u);
    }
    return dag;
}

namespace detail {

DagPlan DagPlan::build(const MonotoneDag& dag)
{
    const int n = dag.vertex_count();
    std::vector<int> indeg(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : dag.adjacency[u])
            ++indeg[v];

    DagPlan plan;
    plan.topo.reserve(n);
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0)
            plan.topo.push_back(v);
    for (std::size_t head = 0; head < plan.topo.size(); ++head)
        for (int v : dag.adjacency[plan.topo[head]])
            if (--indeg[v] == 0)
                plan.topo.push_back(v);
    if (static_cast<int>(plan.topo.size()) != n)
        throw std::invalid_argument("dag contains a cycle");
    plan.reach.resize(n);
    return plan;
}

bool dag_accessible_verdict(const MonotoneDag& dag, const std::vector<int>& ranks, DagPlan& plan)
{
    std::fill(plan.reach.begin(), plan.reach.end(), 0);
    plan.reach[dag.source] = 1;
    for (int u : plan.topo)
    {
        if (!plan.reach[u])
            continue;
        const int ru = ranks[u];
        for (int v : dag.adjacency[u])
            if (ru < ranks[v])
                plan.reach[v] = 1;
    }
    for (int s : dag.sinks)
        if (plan.reach[s])
            return true;
    return false;
}

} // namespace detail

bool is_1_accessible_dag(const MonotoneDag& dag, const Labeling& labeling)
{
    if (static_cast<int>(labeling.ranks.size()) != dag.vertex_count())
        throw std::invalid_argument("labeling size does not match the dag");
    auto plan = detail::DagPlan::build(dag);
    return detail::dag_accessible_verdict(dag, labeling.ranks, plan);
}

RootedTree level_subsample(const RootedTree& tree, int k)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    const int n = tree.vertex_count();

    std::vector<int> new_id(n, -1);
    int kept = 0;
    for (int v = 0; v < n; ++v)
        if (tree.depth(v) % k == 0)
            new_id[v] = kept++;

    std::vector<int> parents(kept, -1);
    for (int v = 0; v < n; ++v)
    {
        if (new_id[v] == -1 || v == tree.root())
            continue;
        int a = v;
        for (int step = 0; step < k; ++step)
            a = tree.parent(a);
        parents[new_id[v]] = new_id[a];
    }
    return RootedTree::from_parents(std::move(parents));
}

} // namespace kaccess
