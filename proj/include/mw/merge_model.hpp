// Merge-models: the five defining conditions, hats, the interpretation back
// to a structure, skeleton/compactification, looplessness and the
// sequenceability test.
#pragma once

#include "mw/relational.hpp"
#include "mw/tree_order.hpp"

#include <functional>
#include <optional>

namespace mw {

// Reserved symbol names used when a model is exposed as a plain structure.
inline const std::string kOrderSymbol = "prec";

inline bool is_reserved_symbol(const std::string& sym)
{
    return sym == kOrderSymbol || sym.rfind("S__", 0) == 0 || sym.rfind("Z__", 0) == 0;
}

struct MergeModel {
    std::string name = "m";
    Signature base_signature;                                  // sigma
    TreeOrder order;
    std::map<std::pair<std::string, int>, PairSet> s_tuples;   // only non-empty sets

    bool operator==(const MergeModel&) const = default;
    const PairSet& tuples(const std::string& sym, int alpha) const
    {
        static const PairSet empty;
        auto it = s_tuples.find({sym, alpha});
        return it == s_tuples.end() ? empty : it->second;
    }
};

inline MergeModel make_merge_model(std::string name, Signature sig, TreeOrder order,
                                   std::map<std::pair<std::string, int>, PairSet> tuples)
{
    MergeModel m;
    m.name = std::move(name);
    m.base_signature = std::move(sig);
    m.order = std::move(order);
    for (auto& [key, pairs] : tuples) {
        if (!m.base_signature.has(key.first))
            throw std::invalid_argument("tuple for unknown symbol '" + key.first + "'");
        if (key.second != 0 && key.second != 1) throw std::invalid_argument("alpha must be 0 or 1");
        if (!pairs.empty()) m.s_tuples[key] = std::move(pairs);
    }
    return m;
}

namespace detail {

// All S tuples as node-index pairs, plus per-node incidence.
struct ModelIndex {
    TreeIndex tree;
    std::set<std::pair<int, int>> s_all;
    std::vector<std::vector<int>> s_partners; // symmetric closure, deduplicated

    explicit ModelIndex(const MergeModel& m) : tree(m.order)
    {
        for (const auto& [key, pairs] : m.s_tuples)
            for (const auto& [x, y] : pairs) s_all.insert({tree.at(x), tree.at(y)});
        s_partners.assign(tree.nodes.size(), {});
        for (const auto& [x, y] : s_all) {
            s_partners[x].push_back(y);
            if (x != y) s_partners[y].push_back(x);
        }
        for (auto& v : s_partners) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }
};

// Componentwise-maximal S-carrying pair below (u, v); nullopt when the
// candidate set is not a chain with a maximum (invalid model).
inline std::optional<std::pair<int, int>> hat_index(const ModelIndex& ix, int u, int v)
{
    std::vector<int> cu{u}, cv{v};
    for (int a : ix.tree.ancestors(u)) cu.push_back(a);
    for (int a : ix.tree.ancestors(v)) cv.push_back(a);
    std::vector<std::pair<int, int>> found;
    for (int x : cu)
        for (int y : cv)
            if (ix.s_all.count({x, y})) found.push_back({x, y});
    if (found.empty()) return std::nullopt;
    auto deeper = [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
        return std::pair(ix.tree.depth[a.first], ix.tree.depth[a.second])
             < std::pair(ix.tree.depth[b.first], ix.tree.depth[b.second]);
    };
    auto top = *std::max_element(found.begin(), found.end(), deeper);
    for (const auto& [x, y] : found)
        if (!ix.tree.below_or_eq(x, top.first) || !ix.tree.below_or_eq(y, top.second))
            return std::nullopt;
    return top;
}

} // namespace detail

inline Report validate_model(const MergeModel& m)
{
    if (auto rep = validate_tree_order(m.order); !rep.ok)
        return Report::fail("condition (1): " + rep.detail);
    for (const auto& [key, pairs] : m.s_tuples) {
        if (!m.base_signature.has(key.first))
            return Report::fail("tuple for unknown symbol '" + key.first + "'");
        for (const auto& [x, y] : pairs)
            if (!m.order.has_node(x) || !m.order.has_node(y))
                return Report::fail("tuple (" + x + "," + y + ") outside the node set");
    }
    detail::ModelIndex ix(m);
    const auto& nodes = ix.tree.nodes;
    // (2) no distinct comparable endpoints
    for (const auto& [x, y] : ix.s_all)
        if (x != y && ix.tree.compare(x, y) != Cmp::incomparable)
            return Report::fail("condition (2): comparable pair (" + nodes[x] + "," + nodes[y] + ")");
    // (3) no cross: tuples (a,b) and (c,d) with a strictly above c and d
    // strictly above b. Nested same-orientation pairs are legal; only the
    // genuine cross breaks the hat's uniqueness.
    for (const auto& [a, b] : ix.s_all)
        for (const auto& [c, d] : ix.s_all) {
            if (a == c || b == d) continue;
            if (ix.tree.below_or_eq(a, c) && ix.tree.below_or_eq(d, b))
                return Report::fail("condition (3): cross between (" + nodes[a] + "," + nodes[b]
                                    + ") and (" + nodes[c] + "," + nodes[d] + ")");
        }
    // (4) no contradictory defaults
    for (const auto& sym : m.base_signature.symbols)
        for (const auto& p : m.tuples(sym, 0))
            if (m.tuples(sym, 1).count(p))
                return Report::fail("condition (4): both defaults for " + sym + " on ("
                                    + p.first + "," + p.second + ")");
    // (5) every ordered leaf pair covered for every symbol
    auto leaves = ix.tree.leaves();
    for (const auto& sym : m.base_signature.symbols) {
        std::set<std::pair<int, int>> sz;
        for (int alpha : {0, 1})
            for (const auto& [x, y] : m.tuples(sym, alpha))
                sz.insert({ix.tree.at(x), ix.tree.at(y)});
        for (int u : leaves)
            for (int v : leaves) {
                if (u == v) continue;
                bool covered = false;
                for (const auto& [x, y] : sz)
                    if (ix.tree.below_or_eq(x, u) && ix.tree.below_or_eq(y, v)) { covered = true; break; }
                if (!covered)
                    return Report::fail("condition (5): no " + sym + " tuple above ("
                                        + nodes[u] + "," + nodes[v] + ")");
            }
    }
    return Report::pass();
}

// The unique componentwise-maximal S-carrying pair below the leaf pair.
inline Pair hat(const MergeModel& m, const std::string& u, const std::string& v)
{
    if (u == v) throw std::invalid_argument("hat of equal leaves");
    detail::ModelIndex ix(m);
    int ui = ix.tree.at(u), vi = ix.tree.at(v);
    if (!ix.tree.is_leaf(ui) || !ix.tree.is_leaf(vi))
        throw std::invalid_argument("hat arguments must be leaves");
    auto h = detail::hat_index(ix, ui, vi);
    if (!h) throw std::invalid_argument("hat undefined on (" + u + "," + v + "); the model is invalid");
    return {ix.tree.nodes[h->first], ix.tree.nodes[h->second]};
}

// Str: universe = leaves; Z(u,v) iff the hat of (u,v) carries S_{Z,1}.
inline BinaryStructure interpret(const MergeModel& m)
{
    detail::ModelIndex ix(m);
    auto leaves = ix.tree.leaves();
    std::vector<std::string> universe;
    for (int l : leaves) universe.push_back(ix.tree.nodes[l]);
    std::map<std::string, PairSet> rels;
    for (const auto& sym : m.base_signature.symbols) rels[sym];
    for (int u : leaves)
        for (int v : leaves) {
            if (u == v) continue;
            auto h = detail::hat_index(ix, u, v);
            if (!h)
                throw std::invalid_argument("hat undefined on (" + ix.tree.nodes[u] + ","
                                            + ix.tree.nodes[v] + "); the model is invalid");
            Pair hp{ix.tree.nodes[h->first], ix.tree.nodes[h->second]};
            for (const auto& sym : m.base_signature.symbols)
                if (m.tuples(sym, 1).count(hp)) rels[sym].insert({ix.tree.nodes[u], ix.tree.nodes[v]});
        }
    return make_structure(m.name, m.base_signature, std::move(universe), std::move(rels));
}

// Root, leaves and every node occurring in an S tuple (either position).
inline std::set<std::string> skeleton(const MergeModel& m)
{
    detail::ModelIndex ix(m);
    std::set<std::string> out;
    out.insert(ix.tree.nodes[ix.tree.root]);
    for (int l : ix.tree.leaves()) out.insert(ix.tree.nodes[l]);
    for (const auto& [x, y] : ix.s_all) {
        out.insert(ix.tree.nodes[x]);
        out.insert(ix.tree.nodes[y]);
    }
    return out;
}

// Restriction to the skeleton; parents become the nearest skeletal ancestor.
inline MergeModel compactify(const MergeModel& m)
{
    auto keep = skeleton(m);
    detail::TreeIndex tix(m.order);
    std::vector<std::string> nodes(keep.begin(), keep.end());
    std::map<std::string, std::string> parent;
    for (const auto& x : nodes) {
        int cur = tix.parent[tix.at(x)];
        while (cur >= 0 && !keep.count(tix.nodes[cur])) cur = tix.parent[cur];
        if (cur >= 0) parent[x] = tix.nodes[cur];
    }
    return make_merge_model(m.name, m.base_signature, make_tree_order(std::move(nodes), std::move(parent)),
                            m.s_tuples);
}

// Acyclicity of the digraph with an arc u -> u' whenever some strict
// descendant v of u satisfies S(v, u'); cycles are exactly the patterns that
// rule out an interval ranking.
inline bool is_sequenceable(const MergeModel& m)
{
    detail::ModelIndex ix(m);
    int n = static_cast<int>(ix.tree.nodes.size());
    std::vector<std::set<int>> arcs(n);
    for (const auto& [v, u2] : ix.s_all)
        for (int u : ix.tree.ancestors(v)) arcs[u].insert(u2);
    std::vector<int> state(n, 0); // 0 unseen, 1 active, 2 done
    std::function<bool(int)> cyclic = [&](int x) {
        state[x] = 1;
        for (int y : arcs[x]) {
            if (state[y] == 1) return true;
            if (state[y] == 0 && cyclic(y)) return true;
        }
        state[x] = 2;
        return false;
    };
    for (int x = 0; x < n; ++x)
        if (state[x] == 0 && cyclic(x)) return false;
    return true;
}

inline bool is_loopless(const MergeModel& m)
{
    for (const auto& [key, pairs] : m.s_tuples)
        for (const auto& [x, y] : pairs)
            if (x == y) return false;
    return true;
}

// The sigma-part of the model as a structure on all nodes (tree-order
// dropped); its Gaifman graph carries the biclique number.
inline BinaryStructure s_part(const MergeModel& m)
{
    std::vector<std::string> syms;
    std::map<std::string, PairSet> rels;
    for (const auto& sym : m.base_signature.symbols)
        for (int alpha : {0, 1}) {
            std::string name = "S__" + sym + "__" + std::to_string(alpha);
            syms.push_back(name);
            rels[name] = m.tuples(sym, alpha);
        }
    return make_structure(m.name, make_signature(std::move(syms)), m.order.nodes, std::move(rels));
}

inline int bomega(const MergeModel& m, int limit)
{
    return biclique_number(gaifman(s_part(m)), limit);
}

// The model as a plain binary structure over the reserved order symbol
// (strict, transitive) and one symbol per S relation.
inline BinaryStructure as_structure(const MergeModel& m)
{
    detail::TreeIndex tix(m.order);
    BinaryStructure s = s_part(m);
    std::vector<std::string> syms = s.signature.symbols;
    syms.push_back(kOrderSymbol);
    PairSet prec;
    for (const auto& x : m.order.nodes)
        for (int a : tix.ancestors(tix.at(x))) prec.insert({tix.nodes[a], x});
    auto rels = s.relations;
    rels[kOrderSymbol] = std::move(prec);
    return make_structure(m.name, make_signature(std::move(syms)), m.order.nodes, std::move(rels));
}

} // namespace mw
