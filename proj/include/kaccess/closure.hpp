#pragma once

// Graph reductions: the k-step transitive closure of a tree, 1-accessibility
// on monotone DAGs, and the every-k-th-level subsample. Together these give
// an independent route to the same verdicts as the direct tree search:
// a tree is k-accessible iff its k-closure has a source-to-sink path with
// strictly increasing labels.

#include <cstddef>
#include <vector>

#include "tree.hpp"

namespace kaccess {

inline constexpr std::size_t kMaxClosureEdges = 10'000'000;

// Single-source DAG whose maximal paths all run source -> sink.
// For closures of trees, vertex ids coincide with the tree's.
struct MonotoneDag
{
    int source = 0;
    std::vector<std::vector<int>> adjacency; // out-edges, ascending
    std::vector<int> sinks;                  // == the out-degree-0 vertices, ascending

    int vertex_count() const { return static_cast<int>(adjacency.size()); }

    // Checks acyclicity, that the unique in-degree-0 vertex is `source`,
    // and that `sinks` is exactly the out-degree-0 set. Throws
    // std::invalid_argument on violation.
    void validate() const;
};

// Adds an edge u -> v whenever the tree has a downward path of length
// 1..k from u to v. Sinks are the leaves. Throws SizeCapError when the
// edge count would exceed kMaxClosureEdges.
MonotoneDag k_transitive_closure(const RootedTree& tree, int k);

// True iff some source-to-sink path has strictly increasing labels.
// Dynamic program over a topological order: a vertex is reachable iff it
// is the source or has a reachable predecessor with a smaller label.
bool is_1_accessible_dag(const MonotoneDag& dag, const Labeling& labeling);

// Restriction of the k-closure to depths 0, k, 2k, ...: keeps exactly the
// vertices at those depths, with u -> v when v is a depth-(+k) descendant
// of u. Returns a tree of height floor(height/k); kept vertices are
// renumbered in ascending original-id order.
RootedTree level_subsample(const RootedTree& tree, int k);

namespace detail {

// Precomputed topological order plus a reach buffer, for deciding the same
// DAG under many labelings (exact enumeration).
struct DagPlan
{
    std::vector<int> topo;
    std::vector<char> reach;

    static DagPlan build(const MonotoneDag& dag);
};

// Verdict-only equivalent of is_1_accessible_dag using the plan's buffers.
bool dag_accessible_verdict(const MonotoneDag& dag, const std::vector<int>& ranks, DagPlan& plan);

} // namespace detail

} // namespace kaccess
