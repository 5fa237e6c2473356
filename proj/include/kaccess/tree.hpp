#pragma once

// Rooted trees with ordered children, and rank labelings on them.
//
// Text format (one tree per file):
//   line 1: parent array "[-1,0,0]"; entry i is the parent of vertex i,
//           root has -1; children are implied in index order
//   line 2 (optional): ranks "[2,1,3]", a permutation of 1..vertex_count
//
// Explicit trees are capped at 10^7 vertices; anything larger must go
// through the implicit LazyLabeler interface.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kaccess {

inline constexpr std::size_t kMaxExplicitVertices = 10'000'000;

// Raised when a requested explicit structure exceeds its size cap.
struct SizeCapError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Malformed tree text or structurally invalid parent array.
struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

class RootedTree
{
  public:
    // Validates: exactly one root, parents in range, no cycles/orphans.
    // Error messages name the offending vertex.
    static RootedTree from_parents(std::vector<int> parents);

    int vertex_count() const { return static_cast<int>(parent_.size()); }
    int root() const { return root_; }
    int parent(int v) const { return parent_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    int depth(int v) const { return depth_[v]; }
    int height() const { return height_; }
    bool is_leaf(int v) const { return children_[v].empty(); }
    const std::vector<int>& parents() const { return parent_; }

  private:
    RootedTree() = default;

    int root_ = 0;
    int height_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_;
};

// Complete n-ary tree of the given height in breadth-first vertex order:
// root 0, the c-th child of v is n*v + c + 1. Throws SizeCapError when the
// vertex count would exceed kMaxExplicitVertices.
RootedTree build_nary_tree(int n, int height);

// Ranks are a permutation of 1..vertex_count; ranks[v] is the label of v.
struct Labeling
{
    std::vector<int> ranks;
};

void validate_labeling(const RootedTree& tree, const Labeling& labeling);

// Uniform random rank permutation via seeded Fisher-Yates. Same seed, same
// labeling, on every platform.
Labeling sample_labeling(const RootedTree& tree, std::uint64_t seed);

// Parsing / serialization of the text format above.
RootedTree parse_tree(const std::string& parent_line);
std::string serialize_tree(const RootedTree& tree);

struct LabeledTree
{
    RootedTree tree;
    std::optional<Labeling> labeling;
};

// Parses a whole file body (1 or 2 lines).
LabeledTree parse_tree_file(const std::string& text);
std::string serialize_labeling(const Labeling& labeling);

// Order-preserving ranks for an arbitrary sequence of distinct values
// (value sequence -> permutation of 1..n). Throws on duplicates.
Labeling ranks_from_values(const std::vector<double>& values);

} // namespace kaccess
