// Merge sequences: validation against a structure, radius-r width, a greedy
// builder, the exact brute-force width oracle and an unreduced cross-check
// enumerator.
#pragma once

#include "mw/relational.hpp"

#include <climits>
#include <functional>
#include <optional>

namespace mw {

struct MergeStep {
    std::vector<std::vector<std::string>> parts; // canonical: parts sorted by first element
    PairSet reveals;                             // pairs added at this step

    bool operator==(const MergeStep&) const = default;
};

struct MergeSequence {
    std::string structure_ref;
    std::vector<MergeStep> steps;

    bool operator==(const MergeSequence&) const = default;
};

namespace detail {

using Partition = std::vector<std::vector<int>>;

inline Partition canonical_partition(Partition p)
{
    for (auto& b : p) std::sort(b.begin(), b.end());
    std::sort(p.begin(), p.end());
    return p;
}

inline Partition singleton_partition(int n)
{
    Partition p;
    for (int i = 0; i < n; ++i) p.push_back({i});
    return p;
}

inline bool is_top(const Partition& p) { return p.size() == 1; }

// Indexed view of a structure for the sequence machinery. type(u,v) is the
// membership bitmask of the ordered pair over the signature symbols.
struct SeqDense {
    const BinaryStructure* s;
    int n = 0;
    std::map<std::string, int> eidx;
    std::vector<std::uint32_t> type;

    explicit SeqDense(const BinaryStructure& g) : s(&g)
    {
        n = static_cast<int>(g.universe.size());
        if (g.signature.symbols.size() > 31)
            throw LimitError("too many relation symbols for the sequence machinery");
        for (int i = 0; i < n; ++i) eidx[g.universe[i]] = i;
        type.assign(static_cast<size_t>(n) * n, 0);
        int bit = 0;
        for (const auto& sym : g.signature.symbols) {
            for (const auto& [u, v] : g.rel(sym)) {
                if (u == v) continue;
                type[static_cast<size_t>(eidx.at(u)) * n + eidx.at(v)] |= (1u << bit);
            }
            ++bit;
        }
    }

    int pair_id(int u, int v) const { return u * n + v; }
    int pair_count() const { return n * (n - 1); }
};

struct DenseStep {
    Partition parts;
    std::vector<int> delta; // revealed pair ids, sorted
};

inline MergeSequence to_sequence(const SeqDense& d, const std::vector<DenseStep>& steps,
                                 std::string ref)
{
    MergeSequence seq;
    seq.structure_ref = std::move(ref);
    for (const auto& st : steps) {
        MergeStep out;
        for (const auto& b : st.parts) {
            std::vector<std::string> part;
            for (int e : b) part.push_back(d.s->universe[e]);
            out.parts.push_back(std::move(part));
        }
        std::sort(out.parts.begin(), out.parts.end());
        for (int pid : st.delta)
            out.reveals.insert({d.s->universe[pid / d.n], d.s->universe[pid % d.n]});
        seq.steps.push_back(std::move(out));
    }
    return seq;
}

// Parts of prev within distance <= r of v in the symmetrized revealed graph.
inline int reach_count(const SeqDense& d, const Partition& prev, const Bits& revealed,
                       int v, int r, std::vector<int>* out_parts = nullptr)
{
    std::vector<int> part_of(d.n, -1);
    for (int b = 0; b < static_cast<int>(prev.size()); ++b)
        for (int e : prev[b]) part_of[e] = b;
    std::vector<int> dist(d.n, -1);
    std::vector<int> queue{v};
    dist[v] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        if (dist[u] == r) continue;
        for (int w = 0; w < d.n; ++w) {
            if (w == u || dist[w] >= 0) continue;
            if (revealed.test(d.pair_id(u, w)) || revealed.test(d.pair_id(w, u))) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    std::set<int> hit;
    for (int u : queue) hit.insert(part_of[u]);
    if (out_parts) out_parts->assign(hit.begin(), hit.end());
    return static_cast<int>(hit.size());
}

inline int max_reach(const SeqDense& d, const Partition& prev, const Bits& revealed, int r)
{
    int best = 0;
    for (int v = 0; v < d.n; ++v) best = std::max(best, reach_count(d, prev, revealed, v, r));
    return best;
}

// Unrevealed pairs of the ordered block pair (A,B), grouped by type.
inline std::map<std::uint32_t, std::vector<int>> unrevealed_by_type(const SeqDense& d,
                                                                    const std::vector<int>& a,
                                                                    const std::vector<int>& b,
                                                                    const Bits& revealed)
{
    std::map<std::uint32_t, std::vector<int>> groups;
    for (int u : a)
        for (int v : b) {
            if (u == v) continue;
            int pid = d.pair_id(u, v);
            if (!revealed.test(pid)) groups[d.type[pid]].push_back(pid);
        }
    return groups;
}

// Uniform-off-revealed test for one partition; returns the first mixed
// ordered block pair together with a mixed symbol bit.
struct MixedWitness {
    int block_a, block_b, symbol_bit;
};

inline std::optional<MixedWitness> first_mixed(const SeqDense& d, const Partition& p,
                                               const Bits& revealed)
{
    for (int a = 0; a < static_cast<int>(p.size()); ++a)
        for (int b = 0; b < static_cast<int>(p.size()); ++b) {
            auto groups = unrevealed_by_type(d, p[a], p[b], revealed);
            if (groups.size() < 2) continue;
            std::uint32_t first = groups.begin()->first;
            std::uint32_t second = std::next(groups.begin())->first;
            std::uint32_t diff = first ^ second;
            int bit = __builtin_ctz(diff);
            return MixedWitness{a, b, bit};
        }
    return std::nullopt;
}

inline std::string block_to_string(const BinaryStructure& s, const std::vector<int>& b)
{
    std::string out = "{";
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) out += ",";
        out += s.universe[b[i]];
    }
    return out + "}";
}

inline std::vector<DenseStep> from_sequence(const SeqDense& d, const MergeSequence& seq)
{
    std::vector<DenseStep> out;
    for (const auto& st : seq.steps) {
        DenseStep ds;
        for (const auto& part : st.parts) {
            std::vector<int> b;
            for (const auto& e : part) b.push_back(d.eidx.at(e));
            ds.parts.push_back(std::move(b));
        }
        ds.parts = canonical_partition(ds.parts);
        for (const auto& [u, v] : st.reveals)
            ds.delta.push_back(d.pair_id(d.eidx.at(u), d.eidx.at(v)));
        std::sort(ds.delta.begin(), ds.delta.end());
        out.push_back(std::move(ds));
    }
    return out;
}

// Every partition strictly coarser than p (any number of block merges),
// canonical and deterministically ordered.
inline std::vector<Partition> strict_coarsenings(const Partition& p)
{
    int k = static_cast<int>(p.size());
    std::vector<Partition> out;
    std::vector<int> group(k, 0);
    // enumerate set partitions of block indices via restricted growth strings
    std::function<void(int, int)> rec = [&](int i, int maxg) {
        if (i == k) {
            int groups = maxg + 1;
            if (groups == k) return; // identity
            Partition q(groups);
            for (int b = 0; b < k; ++b)
                q[group[b]].insert(q[group[b]].end(), p[b].begin(), p[b].end());
            out.push_back(canonical_partition(q));
            return;
        }
        for (int g = 0; g <= maxg + 1; ++g) {
            group[i] = g;
            rec(i + 1, std::max(maxg, g));
        }
    };
    if (k > 1) rec(1, 0); // block 0 stays in group 0
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

inline Report validate_sequence(const MergeSequence& seq, const BinaryStructure& g)
{
    if (seq.steps.empty()) return Report::fail("no steps");
    detail::SeqDense d(g);
    // element-name checks
    for (size_t i = 0; i < seq.steps.size(); ++i) {
        for (const auto& part : seq.steps[i].parts)
            for (const auto& e : part)
                if (!g.has_element(e))
                    return Report::fail("step " + std::to_string(i + 1) + ": unknown element '" + e + "'");
        for (const auto& [u, v] : seq.steps[i].reveals) {
            if (!g.has_element(u) || !g.has_element(v))
                return Report::fail("step " + std::to_string(i + 1) + ": reveal outside the universe");
            if (u == v)
                return Report::fail("step " + std::to_string(i + 1) + ": reveal with equal endpoints " + u);
        }
    }
    auto steps = detail::from_sequence(d, seq);
    // each step partitions the whole universe
    for (size_t i = 0; i < steps.size(); ++i) {
        std::vector<int> seen(d.n, 0);
        for (const auto& b : steps[i].parts) {
            if (b.empty()) return Report::fail("step " + std::to_string(i + 1) + ": empty part");
            for (int e : b) seen[e]++;
        }
        for (int e = 0; e < d.n; ++e)
            if (seen[e] != 1)
                return Report::fail("step " + std::to_string(i + 1) + ": element " + g.universe[e]
                                    + (seen[e] ? " repeated" : " missing"));
    }
    if (steps.front().parts != detail::singleton_partition(d.n))
        return Report::fail("step 1 is not the singleton partition");
    if (!detail::is_top(steps.back().parts))
        return Report::fail("final step is not the one-part partition");
    // refinement along the chain
    for (size_t i = 1; i < steps.size(); ++i) {
        for (const auto& b : steps[i - 1].parts) {
            bool inside = false;
            for (const auto& c : steps[i].parts)
                if (std::includes(c.begin(), c.end(), b.begin(), b.end())) { inside = true; break; }
            if (!inside)
                return Report::fail("step " + std::to_string(i + 1) + ": part "
                                    + detail::block_to_string(g, b) + " of the previous step is split");
        }
    }
    // cumulative reveals and condition (3)
    detail::Bits revealed(d.n * d.n);
    for (size_t i = 0; i < steps.size(); ++i) {
        for (int pid : steps[i].delta) {
            if (revealed.test(pid))
                return Report::fail("step " + std::to_string(i + 1) + ": pair revealed twice");
            revealed.set(pid);
        }
        if (auto mixed = detail::first_mixed(d, steps[i].parts, revealed)) {
            const auto& p = steps[i].parts;
            std::string msg = "step " + std::to_string(i + 1) + ": parts "
                + detail::block_to_string(g, p[mixed->block_a]) + " and "
                + detail::block_to_string(g, p[mixed->block_b]) + " mixed in "
                + g.signature.symbols[mixed->symbol_bit] + " off the revealed set";
            if (mixed->block_a == mixed->block_b)
                msg += " (the P = Q case is included by convention)";
            return Report::fail(msg);
        }
    }
    if (revealed.count() != d.pair_count())
        return Report::fail("final revealed set is not the full set of distinct pairs");
    return Report::pass();
}

// Parts of P_{i-1} within distance r of v in the graph revealed by step i.
inline std::vector<std::vector<std::string>> reach(const MergeSequence& seq,
                                                   const BinaryStructure& g,
                                                   const std::string& v, int step_index, int radius)
{
    int m = static_cast<int>(seq.steps.size());
    if (step_index < 2 || step_index > m)
        throw std::out_of_range("step index " + std::to_string(step_index) + " out of range");
    if (radius < 1) throw std::invalid_argument("radius must be positive");
    detail::SeqDense d(g);
    auto steps = detail::from_sequence(d, seq);
    detail::Bits revealed(d.n * d.n);
    for (int i = 0; i < step_index; ++i)
        for (int pid : steps[i].delta) revealed.set(pid);
    std::vector<int> hit;
    detail::reach_count(d, steps[step_index - 2].parts, revealed, d.eidx.at(v), radius, &hit);
    std::vector<std::vector<std::string>> out;
    for (int b : hit) {
        std::vector<std::string> part;
        for (int e : steps[step_index - 2].parts[b]) part.push_back(g.universe[e]);
        out.push_back(std::move(part));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// max over steps i >= 2 and vertices v of |reach(v, P_{i-1}, R_i)|;
// 0 for one-step sequences. The sequence is assumed valid for g.
inline int width(const MergeSequence& seq, const BinaryStructure& g, int radius)
{
    if (radius < 1) throw std::invalid_argument("radius must be positive");
    detail::SeqDense d(g);
    auto steps = detail::from_sequence(d, seq);
    detail::Bits revealed(d.n * d.n);
    for (int pid : steps[0].delta) revealed.set(pid);
    int w = 0;
    for (size_t i = 1; i < steps.size(); ++i) {
        for (int pid : steps[i].delta) revealed.set(pid);
        w = std::max(w, detail::max_reach(d, steps[i - 1].parts, revealed, radius));
    }
    return w;
}

namespace detail {

// Shared driver for the canonical enumeration: strictly coarsening chains,
// reveals only where the uniformity condition forces them (branching over the
// kept type class per mixed ordered block pair), one appended full-reveal
// step when pairs are left. With best-pruning it is the exact oracle; with a
// callback it enumerates every canonical sequence.
struct CanonicalSearch {
    const SeqDense& d;
    int radius;
    int best = INT_MAX;
    std::vector<DenseStep> best_steps;
    std::function<void(const std::vector<DenseStep>&, int)> callback; // disables pruning

    void run()
    {
        std::vector<DenseStep> steps{{singleton_partition(d.n), {}}};
        Bits revealed(d.n * d.n);
        if (is_top(steps[0].parts)) {
            finish(steps, revealed, 0);
            return;
        }
        descend(steps, revealed, 0);
    }

    void finish(std::vector<DenseStep>& steps, const Bits& revealed, int w)
    {
        if (revealed.count() != d.pair_count()) {
            DenseStep extra{steps.back().parts, {}};
            for (int u = 0; u < d.n; ++u)
                for (int v = 0; v < d.n; ++v)
                    if (u != v && !revealed.test(d.pair_id(u, v))) extra.delta.push_back(d.pair_id(u, v));
            steps.push_back(std::move(extra));
            w = std::max(w, 1);
            record(steps, w);
            steps.pop_back();
        } else {
            record(steps, w);
        }
    }

    void record(const std::vector<DenseStep>& steps, int w)
    {
        if (callback) {
            callback(steps, w);
            return;
        }
        if (w < best) {
            best = w;
            best_steps = steps;
        }
    }

    void descend(std::vector<DenseStep>& steps, const Bits& revealed, int w)
    {
        const Partition cur = steps.back().parts;
        for (const auto& next : strict_coarsenings(cur)) {
            std::vector<std::pair<int, int>> mixed; // ordered block pairs with >= 2 type classes
            for (int a = 0; a < static_cast<int>(next.size()); ++a)
                for (int b = 0; b < static_cast<int>(next.size()); ++b)
                    if (unrevealed_by_type(d, next[a], next[b], revealed).size() >= 2)
                        mixed.push_back({a, b});
            std::vector<int> adds;
            resolve(steps, revealed, w, next, mixed, 0, adds);
        }
    }

    void resolve(std::vector<DenseStep>& steps, const Bits& revealed, int w, const Partition& next,
                 const std::vector<std::pair<int, int>>& mixed, size_t k, std::vector<int>& adds)
    {
        if (k == mixed.size()) {
            Bits r2 = revealed;
            for (int pid : adds) r2.set(pid);
            int contribution = max_reach(d, steps.back().parts, r2, radius);
            int w2 = std::max(w, contribution);
            if (!callback && w2 >= best) return;
            std::vector<int> delta = adds;
            std::sort(delta.begin(), delta.end());
            steps.push_back({next, std::move(delta)});
            if (is_top(next)) finish(steps, r2, w2);
            else descend(steps, r2, w2);
            steps.pop_back();
            return;
        }
        auto [a, b] = mixed[k];
        auto groups = unrevealed_by_type(d, next[a], next[b], revealed);
        for (const auto& [kept, _] : groups) {
            size_t before = adds.size();
            for (const auto& [ty, pids] : groups)
                if (ty != kept) adds.insert(adds.end(), pids.begin(), pids.end());
            resolve(steps, revealed, w, next, mixed, k + 1, adds);
            adds.resize(before);
        }
    }
};

} // namespace detail

struct MwResult {
    int value = 0;
    MergeSequence witness;
};

// Exact radius-r merge-width with a witness sequence attaining it.
inline MwResult mw_exact(const BinaryStructure& g, int radius, int nmax = 5)
{
    if (radius < 1) throw std::invalid_argument("radius must be positive");
    int n = static_cast<int>(g.universe.size());
    if (n > nmax)
        throw LimitError("mw search limit exceeded: " + std::to_string(n) + " > " + std::to_string(nmax));
    detail::SeqDense d(g);
    detail::CanonicalSearch search{d, radius};
    search.run();
    return {search.best, detail::to_sequence(d, search.best_steps, g.name)};
}

// Every canonical sequence, for exhaustive minimum checks on small inputs.
inline void enumerate_canonical_sequences(const BinaryStructure& g, int radius,
                                          const std::function<void(const MergeSequence&, int)>& fn,
                                          int nmax = 4)
{
    int n = static_cast<int>(g.universe.size());
    if (n > nmax) throw LimitError("canonical enumeration limited to " + std::to_string(nmax) + " elements");
    detail::SeqDense d(g);
    detail::CanonicalSearch search{d, radius};
    search.callback = [&](const std::vector<detail::DenseStep>& steps, int w) {
        fn(detail::to_sequence(d, steps, g.name), w);
    };
    search.run();
}

// Independent cross-check: raw search over weakly coarsening chains of
// bounded length with arbitrary reveal supersets, no canonical reduction.
inline int mw_exact_unreduced(const BinaryStructure& g, int radius, int max_steps = 6)
{
    if (radius < 1) throw std::invalid_argument("radius must be positive");
    detail::SeqDense d(g);
    if (d.n == 1) return 0;
    if (d.n > 3) throw LimitError("unreduced enumeration limited to 3 elements");
    std::vector<int> all_pairs;
    for (int u = 0; u < d.n; ++u)
        for (int v = 0; v < d.n; ++v)
            if (u != v) all_pairs.push_back(d.pair_id(u, v));
    int best = INT_MAX;

    auto condition3_ok = [&](const detail::Partition& p, const detail::Bits& revealed) {
        return !detail::first_mixed(d, p, revealed).has_value();
    };

    std::function<void(const detail::Partition&, const detail::Bits&, int, int)> dfs =
        [&](const detail::Partition& cur, const detail::Bits& revealed, int step_count, int w) {
            if (step_count >= max_steps) return;
            std::vector<detail::Partition> nexts = detail::strict_coarsenings(cur);
            nexts.insert(nexts.begin(), cur); // repeats allowed
            std::vector<int> unrevealed;
            for (int pid : all_pairs)
                if (!revealed.test(pid)) unrevealed.push_back(pid);
            for (const auto& next : nexts) {
                for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << unrevealed.size()); ++mask) {
                    detail::Bits r2 = revealed;
                    for (size_t i = 0; i < unrevealed.size(); ++i)
                        if (mask & (std::uint64_t(1) << i)) r2.set(unrevealed[i]);
                    if (!condition3_ok(next, r2)) continue;
                    int w2 = std::max(w, detail::max_reach(d, cur, r2, radius));
                    if (w2 >= best) continue;
                    if (detail::is_top(next) && r2.count() == d.pair_count()) {
                        best = w2;
                        continue;
                    }
                    dfs(next, r2, step_count + 1, w2);
                }
            }
        };

    // step 1: singleton partition with any initial reveal set
    detail::Partition bottom = detail::singleton_partition(d.n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << all_pairs.size()); ++mask) {
        detail::Bits r1(d.n * d.n);
        for (size_t i = 0; i < all_pairs.size(); ++i)
            if (mask & (std::uint64_t(1) << i)) r1.set(all_pairs[i]);
        if (!condition3_ok(bottom, r1)) continue;
        dfs(bottom, r1, 1, 0);
    }
    return best;
}

// Pairwise merges minimizing the number of newly forced reveals, ties by
// element order; reveals keep the largest remaining type class.
inline MergeSequence greedy_sequence(const BinaryStructure& g, [[maybe_unused]] int radius)
{
    detail::SeqDense d(g);
    std::vector<detail::DenseStep> steps{{detail::singleton_partition(d.n), {}}};
    if (d.n == 1) return detail::to_sequence(d, steps, g.name);

    auto forced = [&](const detail::Partition& p, const detail::Bits& revealed, int touched) {
        // reveals needed around the block with index `touched` (or all blocks when < 0)
        std::vector<int> adds;
        for (int a = 0; a < static_cast<int>(p.size()); ++a)
            for (int b = 0; b < static_cast<int>(p.size()); ++b) {
                if (touched >= 0 && a != touched && b != touched) continue;
                auto groups = detail::unrevealed_by_type(d, p[a], p[b], revealed);
                if (groups.size() < 2) continue;
                std::uint32_t keep = groups.begin()->first;
                size_t keep_size = groups.begin()->second.size();
                for (const auto& [ty, pids] : groups)
                    if (pids.size() > keep_size) { keep = ty; keep_size = pids.size(); }
                for (const auto& [ty, pids] : groups)
                    if (ty != keep) adds.insert(adds.end(), pids.begin(), pids.end());
            }
        std::sort(adds.begin(), adds.end());
        return adds;
    };

    detail::Bits revealed(d.n * d.n);
    while (!detail::is_top(steps.back().parts)) {
        const auto& cur = steps.back().parts;
        int best_cost = INT_MAX;
        detail::Partition best_parts;
        std::vector<int> best_adds;
        for (size_t a = 0; a < cur.size(); ++a)
            for (size_t b = a + 1; b < cur.size(); ++b) {
                detail::Partition merged;
                std::vector<int> joint = cur[a];
                joint.insert(joint.end(), cur[b].begin(), cur[b].end());
                std::sort(joint.begin(), joint.end());
                merged.push_back(joint);
                for (size_t c = 0; c < cur.size(); ++c)
                    if (c != a && c != b) merged.push_back(cur[c]);
                merged = detail::canonical_partition(merged);
                int touched = -1;
                for (int i = 0; i < static_cast<int>(merged.size()); ++i)
                    if (merged[i] == joint) touched = i;
                auto adds = forced(merged, revealed, touched);
                if (static_cast<int>(adds.size()) < best_cost) {
                    best_cost = static_cast<int>(adds.size());
                    best_parts = merged;
                    best_adds = adds;
                }
            }
        for (int pid : best_adds) revealed.set(pid);
        steps.push_back({std::move(best_parts), std::move(best_adds)});
    }
    if (revealed.count() != d.pair_count()) {
        detail::DenseStep extra{steps.back().parts, {}};
        for (int u = 0; u < d.n; ++u)
            for (int v = 0; v < d.n; ++v)
                if (u != v && !revealed.test(d.pair_id(u, v))) extra.delta.push_back(d.pair_id(u, v));
        steps.push_back(std::move(extra));
    }
    return detail::to_sequence(d, steps, g.name);
}

} // namespace mw
