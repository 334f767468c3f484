// Lift a compact clean ranked merge-model M to a merge-model N of M itself:
// the leaves of N encode the nodes of M, default false loops sit at the fresh
// root, and the interpretation of N recovers M's full structure (strict
// tree-order included). The ranked width at most doubles.
#pragma once

#include "mw/ranked_model.hpp"

namespace mw {

namespace detail {

inline std::string lift_leaf_name(const std::string& u, bool leaf_of_m)
{
    return u + (leaf_of_m ? "@-1" : "@1");
}

} // namespace detail

inline RankedMergeModel lift_model(const RankedMergeModel& rm)
{
    if (auto rep = validate_model(rm.model); !rep.ok)
        throw std::invalid_argument("lift of an invalid model: " + rep.detail);
    auto rrep = validate_ranking(rm);
    if (!rrep.ok) throw std::invalid_argument("lift of an invalid ranking: " + rrep.detail);
    if (!rrep.clean) throw std::invalid_argument("lift requires a clean model: " + rrep.clean_detail);
    if (skeleton(rm.model).size() != rm.model.order.nodes.size())
        throw std::invalid_argument("lift requires a compact model");

    const MergeModel& m = rm.model;
    detail::TreeIndex tix(m.order);
    const std::string root_n = "@root";
    const std::string& root_m = tix.nodes[tix.root];
    Rat mval = rm.interval(root_m).lo;

    auto enc = [&](const std::string& u) {
        return detail::lift_leaf_name(u, tix.is_leaf(tix.at(u)));
    };

    std::vector<std::string> nodes{root_n};
    std::map<std::string, std::string> parent;
    std::map<std::string, Interval> ranking;
    ranking[root_n] = Interval{mval + Rat(1), mval + Rat(1)};

    for (const auto& u : m.order.nodes) {
        int ui = tix.at(u);
        std::string up = tix.parent[ui] < 0 ? root_n : tix.nodes[tix.parent[ui]] + "@0";
        if (tix.is_leaf(ui)) {
            nodes.push_back(u + "@-1");
            parent[u + "@-1"] = up;
            ranking[u + "@-1"] = rm.interval(u);
        } else {
            nodes.push_back(u + "@0");
            parent[u + "@0"] = up;
            ranking[u + "@0"] = rm.interval(u);
            nodes.push_back(u + "@1");
            parent[u + "@1"] = up;
            ranking[u + "@1"] = Interval{Rat(1), rm.interval(u).hi};
        }
    }

    BinaryStructure sigma_full = as_structure(m); // defines the lifted base signature
    std::map<std::pair<std::string, int>, PairSet> tuples;
    for (const auto& sym : sigma_full.signature.symbols) tuples[{sym, 0}].insert({root_n, root_n});
    for (const auto& u : m.order.nodes)
        if (!tix.is_leaf(tix.at(u))) tuples[{kOrderSymbol, 1}].insert({u + "@1", u + "@0"});
    for (const auto& [key, pairs] : m.s_tuples) {
        std::string sym = "S__" + key.first + "__" + std::to_string(key.second);
        for (const auto& [a, b] : pairs) tuples[{sym, 1}].insert({enc(a), enc(b)});
    }

    MergeModel lifted = make_merge_model(m.name, sigma_full.signature,
                                         make_tree_order(std::move(nodes), std::move(parent)),
                                         std::move(tuples));
    return RankedMergeModel{std::move(lifted), std::move(ranking)};
}

// The leaf bijection of the lift: encoded leaf name -> original node.
inline std::map<std::string, std::string> lift_leaf_map(const MergeModel& m)
{
    detail::TreeIndex tix(m.order);
    std::map<std::string, std::string> f;
    for (const auto& u : m.order.nodes)
        f[detail::lift_leaf_name(u, tix.is_leaf(tix.at(u)))] = u;
    return f;
}

} // namespace mw
