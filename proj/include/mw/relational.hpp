// Finite binary relational structures: signatures, structures, graphs,
// Gaifman graphs, reducts, biclique numbers and the complement expansion.
#pragma once

#include "mw/common.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mw {

using Pair = std::pair<std::string, std::string>;
using PairSet = std::set<Pair>;

// All symbols are binary; unary symbols are rejected at parse time.
struct Signature {
    std::vector<std::string> symbols; // sorted, unique

    bool operator==(const Signature&) const = default;
    bool has(const std::string& sym) const
    {
        return std::binary_search(symbols.begin(), symbols.end(), sym);
    }
};

inline Signature make_signature(std::vector<std::string> symbols)
{
    std::sort(symbols.begin(), symbols.end());
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i].empty()) throw std::invalid_argument("empty relation symbol");
        if (i > 0 && symbols[i] == symbols[i - 1])
            throw std::invalid_argument("duplicate relation symbol '" + symbols[i] + "'");
    }
    return Signature{std::move(symbols)};
}

struct BinaryStructure {
    std::string name = "g";
    Signature signature;
    std::vector<std::string> universe;            // sorted, unique, non-empty
    std::map<std::string, PairSet> relations;     // one entry per signature symbol

    bool operator==(const BinaryStructure&) const = default;
    bool has_element(const std::string& e) const
    {
        return std::binary_search(universe.begin(), universe.end(), e);
    }
    const PairSet& rel(const std::string& sym) const
    {
        auto it = relations.find(sym);
        if (it == relations.end()) throw std::invalid_argument("unknown symbol '" + sym + "'");
        return it->second;
    }
};

inline BinaryStructure make_structure(std::string name, Signature sig,
                                      std::vector<std::string> universe,
                                      std::map<std::string, PairSet> relations = {})
{
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if (universe.empty()) throw std::invalid_argument("empty universe");
    BinaryStructure s;
    s.name = std::move(name);
    s.signature = std::move(sig);
    s.universe = std::move(universe);
    for (const auto& sym : s.signature.symbols) s.relations[sym]; // ensure key
    for (auto& [sym, pairs] : relations) {
        if (!s.signature.has(sym)) throw std::invalid_argument("relation for unknown symbol '" + sym + "'");
        for (const auto& [u, v] : pairs) {
            if (!s.has_element(u) || !s.has_element(v))
                throw std::invalid_argument("pair (" + u + "," + v + ") outside the universe");
        }
        s.relations[sym] = std::move(pairs);
    }
    return s;
}

// Invariant view of a BinaryStructure: signature {E}, E symmetric irreflexive.
struct Graph {
    BinaryStructure s;

    bool operator==(const Graph&) const = default;
    const std::vector<std::string>& vertices() const { return s.universe; }
    bool adjacent(const std::string& u, const std::string& v) const
    {
        return s.rel("E").count({u, v}) > 0;
    }
};

inline Graph as_graph(const BinaryStructure& s)
{
    if (s.signature.symbols != std::vector<std::string>{"E"})
        throw std::invalid_argument("graph view requires signature {E}");
    for (const auto& [u, v] : s.rel("E")) {
        if (u == v) throw std::invalid_argument("graph with loop at " + u);
        if (!s.rel("E").count({v, u}))
            throw std::invalid_argument("graph edge (" + u + "," + v + ") missing its reverse");
    }
    return Graph{s};
}

inline Graph make_graph(std::string name, std::vector<std::string> vertices,
                        const std::vector<Pair>& edges)
{
    PairSet e;
    for (const auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("graph with loop at " + u);
        e.insert({u, v});
        e.insert({v, u});
    }
    return Graph{make_structure(std::move(name), make_signature({"E"}), std::move(vertices),
                                {{"E", std::move(e)}})};
}

// Distinct u,v are adjacent iff they share a tuple of some relation; loops
// never produce edges.
inline Graph gaifman(const BinaryStructure& s)
{
    PairSet e;
    for (const auto& [sym, pairs] : s.relations) {
        for (const auto& [u, v] : pairs) {
            if (u == v) continue;
            e.insert({u, v});
            e.insert({v, u});
        }
    }
    return Graph{make_structure(s.name, make_signature({"E"}), s.universe, {{"E", std::move(e)}})};
}

inline BinaryStructure reduct(const BinaryStructure& s, const std::set<std::string>& keep)
{
    std::vector<std::string> syms;
    for (const auto& sym : keep) {
        if (!s.signature.has(sym)) throw std::invalid_argument("unknown symbol '" + sym + "'");
        syms.push_back(sym);
    }
    std::map<std::string, PairSet> rels;
    for (const auto& sym : syms) rels[sym] = s.rel(sym);
    return make_structure(s.name, make_signature(std::move(syms)), s.universe, std::move(rels));
}

namespace detail {

struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(int n = 0) : w((n + 63) / 64, 0) {}
    void set(int i) { w[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(int i) const { return (w[i / 64] >> (i % 64)) & 1; }
    int count() const
    {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }
    Bits& operator&=(const Bits& o)
    {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
        return *this;
    }
    Bits& operator-=(const Bits& o)
    {
        for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
        return *this;
    }
};

// Branch and bound for one target size t: grow A along increasing vertex
// indices, keeping the common neighborhood; succeed when |A| = t and at
// least t common neighbors lie outside A.
inline bool biclique_extend(const std::vector<Bits>& adj, int n, int t,
                            std::vector<int>& a, const Bits& common, int next)
{
    if (static_cast<int>(a.size()) == t) {
        Bits b = common;
        Bits members(n);
        for (int v : a) members.set(v);
        b -= members;
        return b.count() >= t;
    }
    if (common.count() < t) return false;
    int missing = t - static_cast<int>(a.size());
    for (int v = next; v + missing <= n; ++v) {
        Bits c = common;
        c &= adj[v];
        if (c.count() < t) continue;
        a.push_back(v);
        if (biclique_extend(adj, n, t, a, c, v + 1)) return true;
        a.pop_back();
    }
    return false;
}

} // namespace detail

// Largest t with K_{t,t} as a (not necessarily induced) subgraph; 0 for
// edgeless graphs. The search is exponential, hence the limit guard.
inline int biclique_number(const Graph& g, int limit)
{
    int n = static_cast<int>(g.vertices().size());
    if (n > limit)
        throw LimitError("biclique search limit exceeded: " + std::to_string(n) + " > " + std::to_string(limit));
    std::vector<detail::Bits> adj(n, detail::Bits(n));
    std::map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[g.vertices()[i]] = i;
    bool any_edge = false;
    for (const auto& [u, v] : g.s.rel("E")) {
        adj[idx.at(u)].set(idx.at(v));
        any_edge = true;
    }
    if (!any_edge) return 0;
    int best = 1;
    detail::Bits all(n);
    for (int i = 0; i < n; ++i) all.set(i);
    for (int t = 2; 2 * t <= n; ++t) {
        std::vector<int> a;
        if (!detail::biclique_extend(adj, n, t, a, all, 0)) break;
        best = t;
    }
    return best;
}

// Signature {E,F}: E copied, F holds every ordered pair of distinct
// non-adjacent vertices, so E and F partition the distinct pairs.
inline BinaryStructure complement_expand(const Graph& g)
{
    PairSet f;
    for (const auto& u : g.vertices())
        for (const auto& v : g.vertices()) {
            if (u == v) continue;
            if (!g.adjacent(u, v)) f.insert({u, v});
        }
    return make_structure(g.s.name, make_signature({"E", "F"}), g.s.universe,
                          {{"E", g.s.rel("E")}, {"F", std::move(f)}});
}

inline BinaryStructure without_loops(const BinaryStructure& s)
{
    BinaryStructure out = s;
    for (auto& [sym, pairs] : out.relations)
        for (auto it = pairs.begin(); it != pairs.end();)
            it = it->first == it->second ? pairs.erase(it) : std::next(it);
    return out;
}

// True iff f is a bijection of universes, signatures are equal and every
// relation maps exactly. Any mismatch (including a non-total f) yields false.
inline bool matches_via(const BinaryStructure& a, const BinaryStructure& b,
                        const std::map<std::string, std::string>& f)
{
    if (a.signature != b.signature) return false;
    if (a.universe.size() != b.universe.size()) return false;
    std::set<std::string> image;
    for (const auto& u : a.universe) {
        auto it = f.find(u);
        if (it == f.end() || !b.has_element(it->second)) return false;
        if (!image.insert(it->second).second) return false;
    }
    for (const auto& sym : a.signature.symbols) {
        PairSet mapped;
        for (const auto& [u, v] : a.rel(sym)) mapped.insert({f.at(u), f.at(v)});
        if (mapped != b.rel(sym)) return false;
    }
    return true;
}

} // namespace mw
