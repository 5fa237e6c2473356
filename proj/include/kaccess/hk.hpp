#pragma once

// Skip-annotated expansion of the complete n-ary tree T of height h.
//
// Vertices are pairs (v, s): v a vertex of T at depth l, s a skip set for
// depth l. Sons of (v, s):
//   * (w, s)                         for each son w of v in T, and
//   * (w, s + {l+1, .., l+j-1})      for each descendant w of v at distance
//                                    j, 1 < j <= k.
// Root-to-leaf paths of the expansion correspond one-to-one with candidate
// witness paths of the k-closure of T, so a 1-accessibility computation on
// the expansion upper-bounds the tree's k-accessibility probability.

#include <cstddef>
#include <vector>

#include "skip_sets.hpp"
#include "tree.hpp"

namespace kaccess {

struct HkTree
{
    int n = 1;
    int h = 0;
    int k = 1;
    RootedTree tree = RootedTree::from_parents({-1});
    std::vector<int> t_depth;       // depth l of the underlying T-vertex
    std::vector<SkipSet> skip_sets; // per expansion vertex

    // Internal vertices with residual depth d = h - l have degree
    // sum_{j=1..min(k,d)} n^j.
    std::size_t expected_degree(int vertex) const;
};

// Breadth-first construction. Throws SizeCapError past `vertex_cap`.
// `truncate_depth` >= 0 keeps only expansion vertices at depth up to that
// bound (the proof-oriented truncation at floor(h/k)); -1 disables it.
HkTree build_hk(int n, int h, int k, std::size_t vertex_cap, int truncate_depth = -1);

} // namespace kaccess
