// Tree-orders stored by parent pointers. The order itself is the derived
// reflexive-transitive ancestor relation; ancestors are smaller, the root is
// the minimum and leaves are the maximal elements.
#pragma once

#include "mw/common.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mw {

struct TreeOrder {
    std::vector<std::string> nodes;              // sorted, unique
    std::map<std::string, std::string> parent;   // absent for the root

    bool operator==(const TreeOrder&) const = default;
    bool has_node(const std::string& x) const
    {
        return std::binary_search(nodes.begin(), nodes.end(), x);
    }
};

inline TreeOrder make_tree_order(std::vector<std::string> nodes,
                                 std::map<std::string, std::string> parent)
{
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return TreeOrder{std::move(nodes), std::move(parent)};
}

inline Report validate_tree_order(const TreeOrder& t)
{
    if (t.nodes.empty()) return Report::fail("no nodes");
    for (const auto& [c, p] : t.parent) {
        if (!t.has_node(c)) return Report::fail("parent entry for unknown node " + c);
        if (!t.has_node(p)) return Report::fail("unknown parent " + p + " of node " + c);
        if (c == p) return Report::fail("node " + c + " is its own parent");
    }
    std::vector<std::string> roots;
    for (const auto& x : t.nodes)
        if (!t.parent.count(x)) roots.push_back(x);
    if (roots.empty()) return Report::fail("no root (every node has a parent)");
    if (roots.size() > 1) return Report::fail("two roots: " + roots[0] + " and " + roots[1]);
    // every node must reach the root without revisiting anything
    for (const auto& x : t.nodes) {
        std::set<std::string> seen;
        std::string cur = x;
        while (t.parent.count(cur)) {
            if (!seen.insert(cur).second) return Report::fail("parent cycle through " + cur);
            cur = t.parent.at(cur);
        }
        if (cur != roots[0]) return Report::fail("node " + x + " does not reach the root");
    }
    return Report::pass();
}

enum class Cmp { less, greater, equal, incomparable };

namespace detail {

// Index over a validated tree-order. Throws if the order is invalid.
struct TreeIndex {
    std::vector<std::string> nodes;
    std::map<std::string, int> id;
    std::vector<int> parent; // -1 for the root
    std::vector<int> depth;
    std::vector<std::vector<int>> children;
    int root = -1;

    explicit TreeIndex(const TreeOrder& t)
    {
        if (auto rep = validate_tree_order(t); !rep.ok)
            throw std::invalid_argument("invalid tree-order: " + rep.detail);
        nodes = t.nodes;
        int n = static_cast<int>(nodes.size());
        parent.assign(n, -1);
        children.assign(n, {});
        for (int i = 0; i < n; ++i) id[nodes[i]] = i;
        for (const auto& [c, p] : t.parent) parent[id.at(c)] = id.at(p);
        for (int i = 0; i < n; ++i) {
            if (parent[i] < 0) root = i;
            else children[parent[i]].push_back(i);
        }
        depth.assign(n, -1);
        for (int i = 0; i < n; ++i) {
            if (depth[i] >= 0) continue;
            std::vector<int> path;
            int cur = i;
            while (cur >= 0 && depth[cur] < 0) {
                path.push_back(cur);
                cur = parent[cur];
            }
            int d = cur < 0 ? -1 : depth[cur];
            for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = ++d;
        }
    }

    int at(const std::string& x) const
    {
        auto it = id.find(x);
        if (it == id.end()) throw std::invalid_argument("unknown node '" + x + "'");
        return it->second;
    }

    // a ancestor of (or equal to) d, i.e. a \preceq d
    bool below_or_eq(int a, int d) const
    {
        while (depth[d] > depth[a]) d = parent[d];
        return d == a;
    }

    Cmp compare(int x, int y) const
    {
        if (x == y) return Cmp::equal;
        if (below_or_eq(x, y)) return Cmp::less;
        if (below_or_eq(y, x)) return Cmp::greater;
        return Cmp::incomparable;
    }

    bool is_leaf(int x) const { return children[x].empty(); }

    std::vector<int> leaves() const
    {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (is_leaf(i)) out.push_back(i);
        return out;
    }

    // strict ancestors, nearest first
    std::vector<int> ancestors(int x) const
    {
        std::vector<int> out;
        for (int cur = parent[x]; cur >= 0; cur = parent[cur]) out.push_back(cur);
        return out;
    }

    // x together with every descendant
    std::vector<int> subtree(int x) const
    {
        std::vector<int> out{x}, stack{x};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int c : children[cur]) {
                out.push_back(c);
                stack.push_back(c);
            }
        }
        return out;
    }

    std::vector<int> leaf_descendants(int x) const
    {
        std::vector<int> out;
        for (int y : subtree(x))
            if (is_leaf(y)) out.push_back(y);
        std::sort(out.begin(), out.end());
        return out;
    }
};

} // namespace detail

// less means x strictly closer to the root (x \prec y).
inline Cmp comparable(const TreeOrder& t, const std::string& x, const std::string& y)
{
    detail::TreeIndex ix(t);
    return ix.compare(ix.at(x), ix.at(y));
}

// Pairwise incomparability; with maximal set, additionally every node of the
// order must be comparable to (or a member of) the set.
inline bool is_antichain(const TreeOrder& t, const std::set<std::string>& a, bool maximal)
{
    detail::TreeIndex ix(t);
    std::vector<int> members;
    for (const auto& x : a) members.push_back(ix.at(x));
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            if (ix.compare(members[i], members[j]) != Cmp::incomparable) return false;
    if (maximal) {
        for (int x = 0; x < static_cast<int>(ix.nodes.size()); ++x) {
            bool hit = false;
            for (int m : members)
                if (ix.compare(x, m) != Cmp::incomparable) { hit = true; break; }
            if (!hit) return false;
        }
    }
    return true;
}

} // namespace mw
