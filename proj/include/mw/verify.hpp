// Randomized and exhaustive cross-checking of the structural identities and
// inequalities the library's conversions are designed to satisfy. Every
// check takes concrete objects and returns a failure message (or nothing),
// so the suite driver and the tests can exercise them independently.
#pragma once

#include "mw/io.hpp"
#include "mw/lift.hpp"

#include <random>

namespace mw {

struct TrialConfig {
    std::uint64_t seed = 1;
    int nmax = 5;
    int trials = 50;
    std::vector<int> radii = {1, 2};
};

struct CounterexampleFile {
    std::string filename; // suggested name, including extension
    std::string content;
};

struct LemmaFailure {
    std::string message;
    std::vector<CounterexampleFile> artifacts;
};

struct LemmaReport {
    std::string lemma;
    int trials = 0;
    std::vector<LemmaFailure> failures;

    bool ok() const { return failures.empty(); }
};

// ------------------------------------------------------------ generators --

enum class Profile { sym_E, dir_E, dir_EF };

namespace detail {

inline double next_density(std::mt19937_64& rng)
{
    static const double choices[] = {0.2, 0.5, 0.8};
    return choices[rng() % 3];
}

inline bool coin(std::mt19937_64& rng, double p)
{
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

} // namespace detail

inline BinaryStructure random_structure(std::mt19937_64& rng, int nmax, Profile profile)
{
    int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(nmax));
    std::vector<std::string> elems;
    for (int i = 1; i <= n; ++i) elems.push_back("v" + std::to_string(i));
    double d = detail::next_density(rng);
    std::map<std::string, PairSet> rels;
    auto fill_sym = [&](PairSet& out) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (detail::coin(rng, d)) {
                    out.insert({elems[i], elems[j]});
                    out.insert({elems[j], elems[i]});
                }
    };
    auto fill_dir = [&](PairSet& out) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && detail::coin(rng, d)) out.insert({elems[i], elems[j]});
    };
    std::vector<std::string> syms{"E"};
    switch (profile) {
    case Profile::sym_E: fill_sym(rels["E"]); break;
    case Profile::dir_E: fill_dir(rels["E"]); break;
    case Profile::dir_EF:
        syms.push_back("F");
        fill_dir(rels["E"]);
        fill_dir(rels["F"]);
        break;
    }
    return make_structure("rnd", make_signature(syms), std::move(elems), std::move(rels));
}

inline Graph random_graph(std::mt19937_64& rng, int nmax)
{
    return as_graph(random_structure(rng, nmax, Profile::sym_E));
}

// Top-down shape sampling with label reuse; linear mode keeps every union
// attached to a fresh create.
inline CwExpr random_expression(std::mt19937_64& rng, int tmax, int max_elems, bool linear)
{
    int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(tmax));
    int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_elems));
    std::vector<std::string> symbols{"E"};
    if (detail::coin(rng, 0.3)) symbols.push_back("F");
    int counter = 0;

    auto create = [&]() { return cw_create(1 + static_cast<int>(rng() % t), "e" + std::to_string(++counter)); };
    auto wrap = [&](CwExpr e) {
        int ops = static_cast<int>(rng() % 3);
        for (int i = 0; i < ops; ++i) {
            int a = 1 + static_cast<int>(rng() % t);
            int b = 1 + static_cast<int>(rng() % t);
            if (a == b) {
                if (t == 1) continue;
                b = (a % t) + 1;
            }
            switch (rng() % 3) {
            case 0: e = cw_add(symbols[rng() % symbols.size()], a, b, std::move(e)); break;
            case 1: e = cw_add(symbols[rng() % symbols.size()], a, b, std::move(e), true); break;
            default: e = cw_relabel(a, b, std::move(e)); break;
            }
        }
        return e;
    };

    std::function<CwExpr(int)> gen = [&](int elems) -> CwExpr {
        if (elems == 1) return wrap(create());
        if (linear) return wrap(cw_union(create(), gen(elems - 1)));
        int left = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(elems - 1));
        return wrap(cw_union(gen(left), gen(elems - left)));
    };
    return gen(k);
}

// An n-label linear expression constructing a loopless structure verbatim:
// one label per element, then one add per tuple.
inline CwExpr expression_for_structure(const BinaryStructure& s)
{
    for (const auto& [sym, pairs] : s.relations)
        for (const auto& [u, v] : pairs)
            if (u == v)
                throw std::invalid_argument("clique-width expressions construct loopless structures");
    std::map<std::string, int> label;
    int next = 0;
    for (const auto& e : s.universe) label[e] = ++next;
    CwExpr e = cw_create(label.at(s.universe[0]), s.universe[0]);
    for (size_t i = 1; i < s.universe.size(); ++i)
        e = cw_union(cw_create(label.at(s.universe[i]), s.universe[i]), std::move(e));
    for (const auto& [sym, pairs] : s.relations)
        for (const auto& [u, v] : pairs) e = cw_add(sym, label.at(u), label.at(v), std::move(e));
    return e;
}

// A valid non-clean ranking with the same cleaning: stretch the integer grid
// monotonically, drop leaf starts, and extend interval ends into the gap
// below the parent.
inline RankedMergeModel perturb_ranking(const RankedMergeModel& rm, std::mt19937_64& rng)
{
    detail::TreeIndex tix(rm.model.order);
    long long m = rm.interval(tix.nodes[tix.root]).lo.num;
    std::map<long long, Rat> phi;
    Rat cur(0);
    static const Rat deltas[] = {Rat(1, 3), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
    for (long long k = 1; k <= m; ++k) {
        cur = cur + deltas[rng() % 5];
        phi[k] = cur;
    }
    std::map<std::string, Interval> out;
    for (const auto& x : rm.model.order.nodes) {
        Interval itv{phi.at(rm.interval(x).lo.num), phi.at(rm.interval(x).hi.num)};
        if (tix.is_leaf(tix.at(x)) && detail::coin(rng, 0.5))
            itv.lo = itv.lo - deltas[rng() % 5];
        out[x] = itv;
    }
    for (const auto& x : rm.model.order.nodes) {
        int xi = tix.at(x);
        if (tix.parent[xi] < 0 || !detail::coin(rng, 0.5)) continue;
        Rat bound = out.at(tix.nodes[tix.parent[xi]]).lo;
        Rat gap = bound - out.at(x).hi;
        static const Rat fracs[] = {Rat(1, 4), Rat(1, 2), Rat(3, 4)};
        out[x].hi = out.at(x).hi + gap * fracs[rng() % 3];
    }
    return RankedMergeModel{rm.model, std::move(out)};
}

// ------------------------------------------------------------ the checks --

namespace detail {

inline std::map<std::string, std::string> identity_map(const std::vector<std::string>& universe)
{
    std::map<std::string, std::string> f;
    for (const auto& e : universe) f[e] = e;
    return f;
}

} // namespace detail

inline std::optional<std::string> check_roundtrip(const BinaryStructure& g, const MergeSequence& seq)
{
    try {
        if (auto rep = validate_sequence(seq, g); !rep.ok)
            return "sequence invalid: " + rep.detail;
        RankedMergeModel rm = model_of_sequence(seq, g);
        if (auto rep = validate_model(rm.model); !rep.ok)
            return "derived model invalid: " + rep.detail;
        auto rrep = validate_ranking(rm);
        if (!rrep.ok) return "derived ranking invalid: " + rrep.detail;
        if (!rrep.clean) return "derived ranking not clean: " + rrep.clean_detail;
        if (!matches_via(interpret(rm.model), g, detail::identity_map(g.universe)))
            return "interpretation does not match the input structure";
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_sequence_contraction(const BinaryStructure& g,
                                                             const MergeSequence& seq,
                                                             const std::vector<int>& radii)
{
    try {
        RankedMergeModel rm = model_of_sequence(seq, g);
        MergeSequence seq2 = sequence_of_model(rm);
        BinaryStructure interp = interpret(rm.model);
        if (auto rep = validate_sequence(seq2, interp); !rep.ok)
            return "derived sequence invalid: " + rep.detail;
        for (int r : radii) {
            int before = width(seq, g, r);
            int after = width(seq2, interp, r);
            if (after > before)
                return "width grew from " + std::to_string(before) + " to " + std::to_string(after)
                       + " at radius " + std::to_string(r);
        }
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_width_agreement(const RankedMergeModel& rm,
                                                        const std::vector<int>& radii)
{
    try {
        MergeSequence seq = sequence_of_model(rm);
        BinaryStructure interp = interpret(rm.model);
        if (auto rep = validate_sequence(seq, interp); !rep.ok)
            return "derived sequence invalid: " + rep.detail;
        for (int r : radii) {
            int seq_width = width(seq, interp, r);
            int model_width = ranked_width(rm, r);
            if (seq_width != model_width)
                return "sequence width " + std::to_string(seq_width) + " != ranked width "
                       + std::to_string(model_width) + " at radius " + std::to_string(r);
        }
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_cleaning(const RankedMergeModel& clean_rm,
                                                 std::mt19937_64& rng, const std::vector<int>& radii)
{
    try {
        if (cleaning(clean_rm) != clean_rm) return "cleaning moved a clean ranking";
        RankedMergeModel p1 = perturb_ranking(clean_rm, rng);
        RankedMergeModel p2 = perturb_ranking(clean_rm, rng);
        if (auto rep = validate_ranking(p1); !rep.ok)
            return "perturbed ranking invalid: " + rep.detail;
        RankedMergeModel c1 = cleaning(p1);
        if (c1 != clean_rm) return "cleaning is not invariant under monotone re-ranking";
        if (cleaning(p2) != clean_rm) return "two perturbations cleaned differently";
        if (cleaning(c1) != c1) return "cleaning is not idempotent";
        for (int r : radii)
            if (ranked_width(c1, r) > ranked_width(p1, r))
                return "cleaning increased the ranked width at radius " + std::to_string(r);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_biclique_bound(const RankedMergeModel& rm)
{
    try {
        int b = bomega(rm.model, 64);
        int w1 = ranked_width(rm, 1);
        if (b > w1)
            return "biclique number " + std::to_string(b) + " exceeds radius-1 width "
                   + std::to_string(w1);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_compactification(const RankedMergeModel& rm,
                                                         const std::vector<int>& radii)
{
    try {
        RankedMergeModel crm = compactify_ranked(rm);
        if (auto rep = validate_model(crm.model); !rep.ok)
            return "compactified model invalid: " + rep.detail;
        if (!is_compact(crm)) return "compactification is not compact";
        if (compactify_ranked(crm) != crm) return "compactification is not idempotent";
        if (interpret(crm.model) != interpret(rm.model))
            return "compactification changed the interpretation";
        for (int r : radii)
            if (ranked_width(crm, r) > ranked_width(rm, r))
                return "compactification increased the ranked width at radius " + std::to_string(r);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_lift(const RankedMergeModel& compact_rm,
                                             const std::vector<int>& radii)
{
    try {
        RankedMergeModel lifted = lift_model(compact_rm);
        if (auto rep = validate_model(lifted.model); !rep.ok)
            return "lifted model invalid: " + rep.detail;
        auto rrep = validate_ranking(lifted);
        if (!rrep.ok) return "lifted ranking invalid: " + rrep.detail;
        if (!rrep.clean) return "lifted ranking not clean: " + rrep.clean_detail;
        if (!is_compact(lifted)) return "lifted model not compact";
        // the interpretation is loopless by definition, so the model's loop
        // tuples are compared away
        if (!matches_via(interpret(lifted.model), without_loops(as_structure(compact_rm.model)),
                         lift_leaf_map(compact_rm.model)))
            return "lift interpretation does not recover the input model";
        // a single-node model has ranked width 0 by the empty-maximum
        // convention while its lift has one reachable node, so the doubling
        // bound only applies beyond that degenerate case
        if (compact_rm.model.order.nodes.size() > 1)
            for (int r : radii)
                if (ranked_width(lifted, r) > 2 * ranked_width(compact_rm, r))
                    return "lifted width exceeds twice the input width at radius " + std::to_string(r);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

// Move a few reveals to earlier steps; the enlarged sequence stays valid and
// its width can only grow.
inline std::optional<std::string> check_reveal_monotone(const BinaryStructure& g,
                                                        const MergeSequence& seq,
                                                        std::mt19937_64& rng,
                                                        const std::vector<int>& radii)
{
    try {
        MergeSequence bigger = seq;
        for (size_t i = 1; i < bigger.steps.size(); ++i) {
            std::vector<Pair> movable(bigger.steps[i].reveals.begin(), bigger.steps[i].reveals.end());
            for (const auto& p : movable) {
                if (!detail::coin(rng, 0.3)) continue;
                size_t target = rng() % i;
                bigger.steps[i].reveals.erase(p);
                bigger.steps[target].reveals.insert(p);
            }
        }
        if (auto rep = validate_sequence(bigger, g); !rep.ok)
            return "sequence with earlier reveals invalid: " + rep.detail;
        for (int r : radii)
            if (width(seq, g, r) > width(bigger, g, r))
                return "width decreased when pairs were revealed earlier, radius " + std::to_string(r);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_reduct_monotone(const BinaryStructure& g, int radius, int nmax)
{
    try {
        int full = mw_exact(g, radius, nmax).value;
        std::set<std::string> e_only{"E"};
        int red = mw_exact(reduct(g, e_only), radius, nmax).value;
        int gaif = mw_exact(gaifman(g).s, radius, nmax).value;
        if (red > full) return "reduct width " + std::to_string(red) + " exceeds " + std::to_string(full);
        if (gaif > full)
            return "Gaifman width " + std::to_string(gaif) + " exceeds " + std::to_string(full);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

// The minimum ranked width over models of all canonical sequences matches
// the exact oracle.
inline std::optional<std::string> check_width_minimum(const BinaryStructure& g, int radius)
{
    try {
        int oracle = mw_exact(g, radius, 4).value;
        int best = INT_MAX;
        std::optional<std::string> nested;
        enumerate_canonical_sequences(g, radius, [&](const MergeSequence& seq, int w) {
            if (nested) return;
            RankedMergeModel rm = model_of_sequence(seq, g);
            int rw = ranked_width(rm, radius);
            best = std::min(best, rw);
            if (rw > w)
                nested = "model width " + std::to_string(rw) + " exceeds its sequence width "
                         + std::to_string(w);
        });
        if (nested) return nested;
        if (best != oracle)
            return "minimum model width " + std::to_string(best) + " != oracle value "
                   + std::to_string(oracle);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_expression_model(const CwExpr& expr)
{
    try {
        TwinBuildResult built = twin_model_of_expression(expr);
        if (auto rep = validate_twin_model(built.model); !rep.ok)
            return "built twin-model invalid: " + rep.detail;
        CwEval direct = eval_expression(expr);
        BinaryStructure interp = twin_interpret(built.model);
        if (!matches_via(interp, direct.structure, detail::identity_map(interp.universe)))
            return "twin interpretation differs from the expression value";
        int t = std::max(1, label_count(expr));
        if (twin_bomega(built.model, 64) > 2 * t) return "transversal biclique number exceeds 2t";
        if (label_count(built.witness) > 2 * t) return "witness uses more than 2t labels";
        if (is_linear(expr) && !is_linear(built.witness)) return "witness lost linearity";
        CwEval wit = eval_expression(built.witness);
        BinaryStructure target = twin_as_structure(built.model);
        if (!matches_via(wit.structure, target, detail::identity_map(wit.structure.universe)))
            return "witness does not evaluate to the model";
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

inline std::optional<std::string> check_twin_translation(const Graph& g)
{
    try {
        BinaryStructure expanded = complement_expand(g);
        CwExpr expr = expression_for_structure(expanded);
        TwinBuildResult built = twin_model_of_expression(expr);
        MergeModel merged = merge_model_of_twin(built.model);
        if (!is_loopless(merged)) return "translated model has a loop";
        if (auto rep = validate_model(merged); !rep.ok)
            return "translated model invalid: " + rep.detail;
        BinaryStructure interp = interpret(merged);
        if (!matches_via(interp, g.s, detail::identity_map(interp.universe)))
            return "translated model does not interpret to the original graph";
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- driver --

namespace detail {

inline std::uint64_t lemma_seed(std::uint64_t base, const std::string& name)
{
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

inline Profile profile_cycle(int trial)
{
    switch (trial % 3) {
    case 0: return Profile::sym_E;
    case 1: return Profile::dir_E;
    default: return Profile::dir_EF;
    }
}

inline void add_failure(LemmaReport& report, std::string message,
                        std::vector<CounterexampleFile> artifacts)
{
    report.failures.push_back({std::move(message), std::move(artifacts)});
}

} // namespace detail

// Exhaustive agreement between the canonical oracle and the unreduced
// enumerator over every loopless {E}-structure with at most three elements.
inline LemmaReport oracle_crosscheck(const TrialConfig& cfg)
{
    LemmaReport report{"oracle-crosscheck"};
    int nmax = std::min(cfg.nmax, 3);
    for (int n = 1; n <= nmax; ++n) {
        std::vector<std::string> elems;
        for (int i = 1; i <= n; ++i) elems.push_back("v" + std::to_string(i));
        std::vector<Pair> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) pairs.push_back({elems[i], elems[j]});
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs.size()); ++mask) {
            PairSet rel;
            for (size_t k = 0; k < pairs.size(); ++k)
                if (mask & (std::uint64_t(1) << k)) rel.insert(pairs[k]);
            BinaryStructure g = make_structure("x", make_signature({"E"}), elems, {{"E", rel}});
            ++report.trials;
            for (int r : cfg.radii) {
                auto fast = mw_exact(g, r, 3);
                int slow = mw_exact_unreduced(g, r);
                if (fast.value != slow) {
                    detail::add_failure(report,
                                        "oracle " + std::to_string(fast.value) + " != unreduced "
                                            + std::to_string(slow) + " at radius " + std::to_string(r),
                                        {{"structure.bst", serialize(g)}});
                    break;
                }
                if (auto rep = validate_sequence(fast.witness, g); !rep.ok) {
                    detail::add_failure(report, "oracle witness invalid: " + rep.detail,
                                        {{"structure.bst", serialize(g)},
                                         {"witness.mseq", serialize(fast.witness)}});
                    break;
                }
                if (width(fast.witness, g, r) != fast.value) {
                    detail::add_failure(report, "oracle witness width mismatch",
                                        {{"structure.bst", serialize(g)},
                                         {"witness.mseq", serialize(fast.witness)}});
                    break;
                }
            }
        }
    }
    return report;
}

inline std::vector<LemmaReport> run_lemma_suite(const TrialConfig& cfg,
                                                const std::string& only = "")
{
    std::vector<LemmaReport> out;
    auto wants = [&](const std::string& name) { return only.empty() || only == name; };

    struct PipelineArtifacts {
        BinaryStructure g;
        MergeSequence seq;
        RankedMergeModel rm;
    };
    auto pipeline = [&](std::mt19937_64& rng, int trial) {
        BinaryStructure g = random_structure(rng, cfg.nmax, detail::profile_cycle(trial));
        MergeSequence seq = greedy_sequence(g, cfg.radii.empty() ? 1 : cfg.radii.front());
        RankedMergeModel rm = model_of_sequence(seq, g);
        return PipelineArtifacts{std::move(g), std::move(seq), std::move(rm)};
    };
    auto base_artifacts = [](const PipelineArtifacts& p) {
        return std::vector<CounterexampleFile>{{"structure.bst", serialize(p.g)},
                                               {"sequence.mseq", serialize(p.seq)},
                                               {"model.mmod", serialize(p.rm)}};
    };

    auto run = [&](const std::string& name,
                   const std::function<void(std::mt19937_64&, LemmaReport&)>& body) {
        if (!wants(name)) return;
        LemmaReport report{name};
        std::mt19937_64 rng(detail::lemma_seed(cfg.seed, name));
        body(rng, report);
        out.push_back(std::move(report));
    };

    run("roundtrip-model", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_roundtrip(p.g, p.seq))
                detail::add_failure(report, *bad, base_artifacts(p));
        }
    });

    run("sequence-contraction", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_sequence_contraction(p.g, p.seq, cfg.radii))
                detail::add_failure(report, *bad, base_artifacts(p));
        }
    });

    run("width-agreement", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_width_agreement(p.rm, cfg.radii))
                detail::add_failure(report, *bad, base_artifacts(p));
        }
    });

    run("cleaning-monotone", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_cleaning(p.rm, rng, cfg.radii))
                detail::add_failure(report, *bad, base_artifacts(p));
        }
    });

    run("biclique-bound", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_biclique_bound(p.rm)) {
                detail::add_failure(report, *bad, base_artifacts(p));
                continue;
            }
            RankedMergeModel perturbed = perturb_ranking(p.rm, rng);
            if (auto bad = check_biclique_bound(perturbed))
                detail::add_failure(report, "perturbed: " + *bad,
                                    {{"model.mmod", serialize(perturbed)}});
        }
    });

    run("compactification", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_compactification(p.rm, cfg.radii))
                detail::add_failure(report, *bad, base_artifacts(p));
        }
    });

    run("lift-bound", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            RankedMergeModel compacted = compactify_ranked(p.rm);
            if (auto bad = check_lift(compacted, cfg.radii))
                detail::add_failure(report, *bad, {{"model.mmod", serialize(compacted)}});
        }
    });

    run("reveal-monotone", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            auto p = pipeline(rng, i);
            if (auto bad = check_reveal_monotone(p.g, p.seq, rng, cfg.radii))
                detail::add_failure(report, *bad, base_artifacts(p));
        }
    });

    run("reduct-monotone", [&](std::mt19937_64& rng, LemmaReport& report) {
        int radius = cfg.radii.empty() ? 1 : cfg.radii.front();
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            BinaryStructure g = random_structure(rng, std::min(cfg.nmax, 4), Profile::dir_EF);
            if (auto bad = check_reduct_monotone(g, radius, 4))
                detail::add_failure(report, *bad, {{"structure.bst", serialize(g)}});
        }
    });

    run("width-minimum", [&](std::mt19937_64& rng, LemmaReport& report) {
        int radius = cfg.radii.empty() ? 1 : cfg.radii.front();
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            Profile profile = i % 2 ? Profile::dir_E : Profile::sym_E;
            int nmax = profile == Profile::sym_E ? std::min(cfg.nmax, 4) : std::min(cfg.nmax, 3);
            BinaryStructure g = random_structure(rng, nmax, profile);
            if (auto bad = check_width_minimum(g, radius))
                detail::add_failure(report, *bad, {{"structure.bst", serialize(g)}});
        }
    });

    run("expression-model", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            CwExpr expr = random_expression(rng, 4, 8, i % 2 == 0);
            if (auto bad = check_expression_model(expr))
                detail::add_failure(report, *bad, {{"expression.cwe", serialize(expr)}});
        }
    });

    run("twin-translation", [&](std::mt19937_64& rng, LemmaReport& report) {
        for (int i = 0; i < cfg.trials; ++i) {
            ++report.trials;
            Graph g = random_graph(rng, std::min(cfg.nmax, 6));
            if (auto bad = check_twin_translation(g))
                detail::add_failure(report, *bad, {{"structure.bst", serialize(g.s)}});
        }
    });

    if (wants("oracle-crosscheck")) out.push_back(oracle_crosscheck(cfg));
    return out;
}

} // namespace mw
