// Interval rankings, clean models, cleaning, the sequence <-> ranked-model
// conversions, tau-bounded merge-walks, the ranked width and ranked
// compactification.
#pragma once

#include "mw/merge_model.hpp"
#include "mw/merge_sequence.hpp"
#include "mw/rational.hpp"

namespace mw {

struct RankedMergeModel {
    MergeModel model;
    std::map<std::string, Interval> ranking;

    bool operator==(const RankedMergeModel&) const = default;
    const Interval& interval(const std::string& x) const
    {
        auto it = ranking.find(x);
        if (it == ranking.end()) throw std::invalid_argument("no interval for node '" + x + "'");
        return it->second;
    }
};

struct RankingReport {
    bool ok = true;
    std::string detail;
    bool clean = false;
    std::string clean_detail;
};

namespace detail {

inline const Interval& iv(const RankedMergeModel& rm, const std::string& x) { return rm.interval(x); }

} // namespace detail

inline RankingReport validate_ranking(const RankedMergeModel& rm)
{
    RankingReport out;
    auto fail = [&](std::string d) {
        out.ok = false;
        out.detail = std::move(d);
        return out;
    };
    for (const auto& x : rm.model.order.nodes)
        if (!rm.ranking.count(x)) return fail("node " + x + " has no interval");
    for (const auto& [x, itv] : rm.ranking) {
        if (!rm.model.order.has_node(x)) return fail("interval for unknown node " + x);
        if (!(itv.lo <= itv.hi)) return fail("empty interval on " + x);
    }
    detail::TreeIndex tix(rm.model.order);
    // (1) children lie strictly left of their parents (transitively sufficient)
    for (const auto& x : rm.model.order.nodes) {
        int xi = tix.at(x);
        if (tix.parent[xi] < 0) continue;
        const std::string& p = tix.nodes[tix.parent[xi]];
        if (!(rm.interval(x).hi < rm.interval(p).lo))
            return fail("clause (1): interval of " + x + " not left of its parent " + p);
    }
    // (2) S-related nodes overlap
    for (const auto& [key, pairs] : rm.model.s_tuples)
        for (const auto& [x, y] : pairs)
            if (!intersects(rm.interval(x), rm.interval(y)))
                return fail("clause (2): disjoint intervals on S pair (" + x + "," + y + ")");
    out.ok = true;
    // clean test, reported separately
    const std::string& root = tix.nodes[tix.root];
    Rat m = rm.interval(root).lo;
    auto not_clean = [&](std::string why) {
        out.clean = false;
        out.clean_detail = std::move(why);
        return out;
    };
    if (!m.is_integer() || m.num < 1) return not_clean("root left endpoint is not a positive integer");
    std::set<long long> los;
    for (const auto& x : rm.model.order.nodes) {
        const Interval& i = rm.interval(x);
        if (!i.lo.is_integer()) return not_clean("left endpoint of " + x + " is not an integer");
        los.insert(i.lo.num);
    }
    for (long long k = 1; k <= m.num; ++k)
        if (!los.count(k)) return not_clean("no interval starts at " + std::to_string(k));
    if (static_cast<long long>(los.size()) != m.num) return not_clean("left endpoints exceed the root value");
    for (int l : tix.leaves())
        if (!(rm.interval(tix.nodes[l]).lo == Rat(1)))
            return not_clean("leaf " + tix.nodes[l] + " does not start at 1");
    if (!(rm.interval(root) == Interval{m, m})) return not_clean("root interval is not a point");
    for (const auto& x : rm.model.order.nodes) {
        int xi = tix.at(x);
        if (tix.parent[xi] < 0) continue;
        const std::string& p = tix.nodes[tix.parent[xi]];
        if (!(rm.interval(x).hi == rm.interval(p).lo - Rat(1)))
            return not_clean("interval of " + x + " does not end one before its parent starts");
    }
    out.clean = true;
    return out;
}

inline bool is_clean(const RankedMergeModel& rm)
{
    auto rep = validate_ranking(rm);
    return rep.ok && rep.clean;
}

// Collapse every leaf to the global minimum leaf start, rank the distinct
// start values, and stretch every interval up to just before its parent.
inline RankedMergeModel cleaning(const RankedMergeModel& rm)
{
    if (auto rep = validate_ranking(rm); !rep.ok)
        throw std::invalid_argument("cleaning of an invalid ranking: " + rep.detail);
    detail::TreeIndex tix(rm.model.order);
    std::optional<Rat> min_leaf;
    for (int l : tix.leaves()) {
        Rat lo = rm.interval(tix.nodes[l]).lo;
        if (!min_leaf || lo < *min_leaf) min_leaf = lo;
    }
    std::map<std::string, Rat> f;
    for (const auto& x : rm.model.order.nodes)
        f[x] = tix.is_leaf(tix.at(x)) ? *min_leaf : rm.interval(x).lo;
    std::set<Rat> values;
    for (const auto& [x, val] : f) values.insert(val);
    std::map<std::string, Rat> g;
    for (const auto& [x, val] : f) {
        long long rank = 0;
        for (const auto& v : values)
            if (v <= val) ++rank;
        g[x] = Rat(rank);
    }
    std::map<std::string, Interval> cleaned;
    for (const auto& x : rm.model.order.nodes) {
        int xi = tix.at(x);
        if (tix.parent[xi] < 0) cleaned[x] = Interval{g.at(x), g.at(x)};
        else cleaned[x] = Interval{g.at(x), g.at(tix.nodes[tix.parent[xi]]) - Rat(1)};
    }
    return RankedMergeModel{rm.model, std::move(cleaned)};
}

namespace detail {

inline std::string part_node_name(const std::vector<std::string>& part)
{
    std::string out;
    for (size_t i = 0; i < part.size(); ++i) {
        if (i) out += "+";
        out += part[i];
    }
    return out;
}

} // namespace detail

// Model of a merge sequence: nodes are the distinct parts (named by joining
// their sorted elements with '+'), the order is reverse inclusion, a default
// S_{Z,alpha}(P,Q) records a uniform reveal batch between P and Q, and the
// occurrence-interval ranking is normalized by cleaning.
inline RankedMergeModel model_of_sequence(const MergeSequence& seq, const BinaryStructure& g)
{
    if (auto rep = validate_sequence(seq, g); !rep.ok)
        throw std::invalid_argument("invalid merge sequence: " + rep.detail);
    for (const auto& e : g.universe)
        if (e.find('+') != std::string::npos)
            throw std::invalid_argument("element name '" + e + "' contains '+', which part nodes reserve");

    detail::SeqDense d(g);
    auto steps = detail::from_sequence(d, seq);
    int m = static_cast<int>(steps.size());

    auto name_of = [&](const std::vector<int>& block) {
        std::vector<std::string> part;
        for (int e : block) part.push_back(g.universe[e]);
        return detail::part_node_name(part);
    };

    // distinct parts with their occurrence intervals
    std::map<std::string, std::vector<int>> part_elems;
    std::map<std::string, std::pair<int, int>> occurrence;
    std::vector<std::vector<std::string>> level_names(m);
    for (int i = 0; i < m; ++i)
        for (const auto& b : steps[i].parts) {
            std::string id = name_of(b);
            level_names[i].push_back(id);
            if (!part_elems.count(id)) {
                part_elems[id] = b;
                occurrence[id] = {i + 1, i + 1};
            } else {
                occurrence[id].second = i + 1;
            }
        }
    std::vector<std::string> nodes;
    for (const auto& [id, _] : part_elems) nodes.push_back(id);
    std::map<std::string, std::string> parent;
    for (const auto& [id, elems] : part_elems) {
        const std::string* best = nullptr;
        size_t best_size = SIZE_MAX;
        for (const auto& [cand, celems] : part_elems) {
            if (cand == id || celems.size() <= elems.size()) continue;
            if (!std::includes(celems.begin(), celems.end(), elems.begin(), elems.end())) continue;
            if (celems.size() < best_size) {
                best = &cand;
                best_size = celems.size();
            }
        }
        if (best) parent[id] = *best;
    }

    std::map<std::pair<std::string, int>, PairSet> tuples;
    for (int i = 0; i + 1 < m; ++i) {
        const auto& delta = steps[i + 1].delta;
        if (delta.empty()) continue;
        detail::Bits batch(d.n * d.n);
        for (int pid : delta) batch.set(pid);
        const auto& parts = steps[i].parts;
        for (size_t a = 0; a < parts.size(); ++a)
            for (size_t b = 0; b < parts.size(); ++b) {
                std::vector<int> touched;
                for (int u : parts[a])
                    for (int v : parts[b]) {
                        if (u == v) continue;
                        if (batch.test(d.pair_id(u, v))) touched.push_back(d.pair_id(u, v));
                    }
                if (touched.empty()) continue;
                Pair nodep{level_names[i][a], level_names[i][b]};
                int bit = 0;
                for (const auto& sym : g.signature.symbols) {
                    bool in0 = false, in1 = false;
                    for (int pid : touched)
                        ((d.type[pid] >> bit) & 1 ? in1 : in0) = true;
                    if (in0 && in1)
                        throw std::invalid_argument("mixed reveal batch despite a valid sequence");
                    tuples[{sym, in1 ? 1 : 0}].insert(nodep);
                    ++bit;
                }
            }
    }

    MergeModel model = make_merge_model(g.name, g.signature,
                                        make_tree_order(std::move(nodes), std::move(parent)),
                                        std::move(tuples));
    std::map<std::string, Interval> ranking;
    for (const auto& [id, occ] : occurrence)
        ranking[id] = Interval{Rat(occ.first), Rat(occ.second)};
    return cleaning(RankedMergeModel{std::move(model), std::move(ranking)});
}

// Layered sequence of a clean ranked model. Layer i holds the nodes whose
// interval contains i; parts are their leaf-descendant sets; a pair is
// revealed at step i once some covering S pair stopped overlapping before i.
// A final full-reveal step is appended only when pairs are left over.
inline MergeSequence sequence_of_model(const RankedMergeModel& rm)
{
    auto rep = validate_ranking(rm);
    if (!rep.ok) throw std::invalid_argument("invalid ranking: " + rep.detail);
    if (!rep.clean) throw std::invalid_argument("sequence of a non-clean model: " + rep.clean_detail);

    detail::ModelIndex ix(rm.model);
    const auto& nodes = ix.tree.nodes;
    long long m = rm.interval(nodes[ix.tree.root]).lo.num;
    auto leaves = ix.tree.leaves();

    // earliest step at which each ordered leaf pair counts as revealed
    std::map<std::pair<int, int>, long long> reveal_at;
    for (const auto& [x, y] : ix.s_all) {
        Rat overlap = min(rm.interval(nodes[x]).hi, rm.interval(nodes[y]).hi);
        long long first_step = overlap.num + 1; // integral on clean models
        for (int u : ix.tree.leaf_descendants(x))
            for (int v : ix.tree.leaf_descendants(y)) {
                if (u == v) continue;
                auto key = std::pair(u, v);
                auto it = reveal_at.find(key);
                if (it == reveal_at.end() || first_step < it->second) reveal_at[key] = first_step;
            }
    }

    MergeSequence seq;
    seq.structure_ref = rm.model.name;
    PairSet done;
    for (long long i = 1; i <= m; ++i) {
        MergeStep st;
        for (const auto& x : nodes) {
            if (!rm.interval(x).contains(Rat(i))) continue;
            std::vector<std::string> part;
            for (int l : ix.tree.leaf_descendants(ix.tree.at(x))) part.push_back(nodes[l]);
            st.parts.push_back(std::move(part));
        }
        std::sort(st.parts.begin(), st.parts.end());
        for (const auto& [key, at] : reveal_at) {
            if (at > i) continue;
            Pair p{nodes[key.first], nodes[key.second]};
            if (done.insert(p).second) st.reveals.insert(p);
        }
        seq.steps.push_back(std::move(st));
    }
    size_t total = leaves.size() * (leaves.size() - 1);
    if (done.size() != total) {
        MergeStep st;
        st.parts = seq.steps.back().parts;
        for (int u : leaves)
            for (int v : leaves) {
                if (u == v) continue;
                Pair p{nodes[u], nodes[v]};
                if (done.insert(p).second) st.reveals.insert(p);
            }
        seq.steps.push_back(std::move(st));
    }
    return seq;
}

// Nodes reachable from a leaf by a tau-bounded merge-walk of order <= radius:
// alternate comparability moves with S steps (either orientation) whose
// interval overlap ends by tau, and stop at a node whose chain interval
// contains tau.
inline std::set<std::string> merge_walk_reach(const RankedMergeModel& rm, const std::string& leaf,
                                              const Rat& tau, int radius)
{
    if (radius < 0) throw std::invalid_argument("radius must be non-negative");
    detail::ModelIndex ix(rm.model);
    const auto& nodes = ix.tree.nodes;
    const std::string& root = nodes[ix.tree.root];
    if (!(tau < rm.interval(root).lo)) throw std::invalid_argument("tau out of range");
    int start = ix.tree.at(leaf);
    if (!ix.tree.is_leaf(start)) throw std::invalid_argument("walks start at a leaf");

    auto endpoint_ok = [&](int v) {
        if (ix.tree.parent[v] < 0) return false; // the root never qualifies
        return rm.interval(nodes[v]).lo <= tau && tau < rm.interval(nodes[ix.tree.parent[v]]).lo;
    };
    auto overlap_ok = [&](int a, int b) {
        return min(rm.interval(nodes[a]).hi, rm.interval(nodes[b]).hi) <= tau;
    };

    std::set<std::string> out;
    std::vector<int> visited(nodes.size(), -1);
    std::vector<std::pair<int, int>> queue{{start, 0}};
    visited[start] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [u, used] = queue[qi];
        std::vector<int> comparable{u};
        for (int a : ix.tree.ancestors(u)) comparable.push_back(a);
        for (int s : ix.tree.subtree(u))
            if (s != u) comparable.push_back(s);
        for (int v : comparable) {
            if (endpoint_ok(v)) out.insert(nodes[v]);
            if (used >= radius) continue;
            for (int w : ix.s_partners[v]) {
                if (!overlap_ok(v, w)) continue;
                if (visited[w] < 0) {
                    visited[w] = used + 1;
                    queue.push_back({w, used + 1});
                }
            }
        }
    }
    return out;
}

// max over leaves and admissible tau of the merge-walk reach size. Walk
// feasibility regions are half-open intervals whose ends are interval
// endpoints, so scanning endpoint values below the root start is exact.
inline int ranked_width(const RankedMergeModel& rm, int radius)
{
    if (radius < 1) throw std::invalid_argument("radius must be positive");
    detail::ModelIndex ix(rm.model);
    const std::string& root = ix.tree.nodes[ix.tree.root];
    Rat root_lo = rm.interval(root).lo;
    std::set<Rat> taus;
    for (const auto& [x, itv] : rm.ranking) {
        if (itv.lo < root_lo) taus.insert(itv.lo);
        if (itv.hi < root_lo) taus.insert(itv.hi);
    }
    int best = 0;
    for (const auto& tau : taus)
        for (int l : ix.tree.leaves())
            best = std::max(best,
                            static_cast<int>(merge_walk_reach(rm, ix.tree.nodes[l], tau, radius).size()));
    return best;
}

// Restrict the model and its ranking to the skeleton, then clean.
inline RankedMergeModel compactify_ranked(const RankedMergeModel& rm)
{
    if (auto rep = validate_ranking(rm); !rep.ok)
        throw std::invalid_argument("invalid ranking: " + rep.detail);
    MergeModel compacted = compactify(rm.model);
    std::map<std::string, Interval> restricted;
    for (const auto& x : compacted.order.nodes) restricted[x] = rm.interval(x);
    return cleaning(RankedMergeModel{std::move(compacted), std::move(restricted)});
}

inline bool is_compact(const RankedMergeModel& rm)
{
    return is_clean(rm) && skeleton(rm.model).size() == rm.model.order.nodes.size();
}

} // namespace mw
