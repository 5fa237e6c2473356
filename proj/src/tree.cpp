#include "kaccess/tree.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "kaccess/rng.hpp"

namespace kaccess {

RootedTree RootedTree::from_parents(std::vector<int> parents)
{
    const int n = static_cast<int>(parents.size());
    if (n == 0)
        throw ParseError("tree must have at least one vertex");
    if (static_cast<std::size_t>(n) > kMaxExplicitVertices)
        throw SizeCapError("explicit tree exceeds " + std::to_string(kMaxExplicitVertices)
                           + " vertices; use the implicit interface");

    RootedTree t;
    t.parent_ = std::move(parents);
    t.children_.assign(n, {});

    int root = -1;
    for (int v = 0; v < n; ++v)
    {
        int p = t.parent_[v];
        if (p == -1)
        {
            if (root != -1)
                throw ParseError("multiple roots: vertices " + std::to_string(root) + " and "
                                 + std::to_string(v));
            root = v;
            continue;
        }
        if (p < 0 || p >= n)
            throw ParseError("vertex " + std::to_string(v) + ": parent index " + std::to_string(p)
                             + " out of range");
        if (p == v)
            throw ParseError("vertex " + std::to_string(v) + " is its own parent");
        t.children_[p].push_back(v);
    }
    if (root == -1)
        throw ParseError("no root (no vertex with parent -1)");
    t.root_ = root;

    // Children are already in index order (vertices were scanned ascending).
    // BFS assigns depths and exposes any vertex unreachable from the root,
    // which with a well-formed parent column can only mean a cycle.
    t.depth_.assign(n, -1);
    t.depth_[root] = 0;
    std::vector<int> queue{root};
    std::size_t head = 0;
    int height = 0;
    while (head < queue.size())
    {
        int v = queue[head++];
        height = std::max(height, t.depth_[v]);
        for (int c : t.children_[v])
        {
            t.depth_[c] = t.depth_[v] + 1;
            queue.push_back(c);
        }
    }
    if (queue.size() != static_cast<std::size_t>(n))
    {
        for (int v = 0; v < n; ++v)
            if (t.depth_[v] == -1)
                throw ParseError("cycle or unreachable component involving vertex "
                                 + std::to_string(v));
    }
    t.height_ = height;
    return t;
}

RootedTree build_nary_tree(int n, int height)
{
    if (n < 1)
        throw std::invalid_argument("arity must be >= 1");
    if (height < 0)
        throw std::invalid_argument("height must be >= 0");

    // Vertex count sum_{d<=height} n^d, with overflow-safe cap check.
    std::uint64_t count = 1;
    std::uint64_t level = 1;
    for (int d = 1; d <= height; ++d)
    {
        level *= static_cast<std::uint64_t>(n);
        count += level;
        if (count > kMaxExplicitVertices || level > kMaxExplicitVertices)
            throw SizeCapError("complete " + std::to_string(n) + "-ary tree of height "
                               + std::to_string(height) + " exceeds the explicit vertex cap; "
                               + "use the implicit interface");
    }

    std::vector<int> parents(count, -1);
    // Breadth-first ids: children of v are n*v + 1 .. n*v + n.
    for (std::uint64_t v = 1; v < count; ++v)
        parents[v] = static_cast<int>((v - 1) / static_cast<std::uint64_t>(n));
    return RootedTree::from_parents(std::move(parents));
}

void validate_labeling(const RootedTree& tree, const Labeling& labeling)
{
    const int n = tree.vertex_count();
    if (static_cast<int>(labeling.ranks.size()) != n)
        throw std::invalid_argument("labeling has " + std::to_string(labeling.ranks.size())
                                    + " ranks for " + std::to_string(n) + " vertices");
    std::vector<char> seen(n + 1, 0);
    for (int r : labeling.ranks)
    {
        if (r < 1 || r > n)
            throw std::invalid_argument("rank " + std::to_string(r) + " outside 1.."
                                        + std::to_string(n));
        if (seen[r]++)
            throw std::invalid_argument("duplicate rank " + std::to_string(r));
    }
}

Labeling sample_labeling(const RootedTree& tree, std::uint64_t seed)
{
    const int n = tree.vertex_count();
    Labeling l;
    l.ranks.resize(n);
    for (int i = 0; i < n; ++i)
        l.ranks[i] = i + 1;
    SplitMix64 rng(seed);
    for (int i = n - 1; i > 0; --i)
    {
        auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(l.ranks[i], l.ranks[j]);
    }
    return l;
}

namespace {

// Parses "[a,b,c]" into ints; whitespace-tolerant.
std::vector<int> parse_int_array(const std::string& line, const char* what)
{
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
    };
    skip_ws();
    if (i == line.size() || line[i] != '[')
        throw ParseError(std::string(what) + ": expected '['");
    ++i;
    std::vector<int> out;
    skip_ws();
    if (i < line.size() && line[i] == ']')
        return out;
    while (true)
    {
        skip_ws();
        bool neg = false;
        if (i < line.size() && (line[i] == '-' || line[i] == '+'))
            neg = (line[i++] == '-');
        if (i == line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
            throw ParseError(std::string(what) + ": expected integer at entry "
                             + std::to_string(out.size()));
        long long value = 0;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
        {
            value = value * 10 + (line[i++] - '0');
            if (value > static_cast<long long>(kMaxExplicitVertices) + 1)
                throw ParseError(std::string(what) + ": entry " + std::to_string(out.size())
                                 + " out of range");
        }
        out.push_back(static_cast<int>(neg ? -value : value));
        skip_ws();
        if (i < line.size() && line[i] == ',')
        {
            ++i;
            continue;
        }
        if (i < line.size() && line[i] == ']')
            break;
        throw ParseError(std::string(what) + ": expected ',' or ']' after entry "
                         + std::to_string(out.size() - 1));
    }
    return out;
}

std::string serialize_int_array(const std::vector<int>& values)
{
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (i)
            out += ',';
        out += std::to_string(values[i]);
    }
    out += ']';
    return out;
}

} // namespace

RootedTree parse_tree(const std::string& parent_line)
{
    return RootedTree::from_parents(parse_int_array(parent_line, "parent array"));
}

std::string serialize_tree(const RootedTree& tree)
{
    return serialize_int_array(tree.parents());
}

LabeledTree parse_tree_file(const std::string& text)
{
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size())
    {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos)
            end = text.size();
        std::string line = text.substr(start, end - start);
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            lines.push_back(line);
        start = end + 1;
    }
    if (lines.empty())
        throw ParseError("empty tree file");
    if (lines.size() > 2)
        throw ParseError("tree file has more than two non-blank lines");

    LabeledTree result{parse_tree(lines[0]), std::nullopt};
    if (lines.size() == 2)
    {
        Labeling l{parse_int_array(lines[1], "rank array")};
        validate_labeling(result.tree, l);
        result.labeling = std::move(l);
    }
    return result;
}

std::string serialize_labeling(const Labeling& labeling)
{
    return serialize_int_array(labeling.ranks);
}

Labeling ranks_from_values(const std::vector<double>& values)
{
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    for (int i = 1; i < n; ++i)
        if (values[order[i - 1]] == values[order[i]])
            throw std::invalid_argument("duplicate label value");
    Labeling l;
    l.ranks.resize(n);
    for (int i = 0; i < n; ++i)
        l.ranks[order[i]] = i + 1;
    return l;
}

} // namespace kaccess
