// Twin-models: validation, interpretation, the constructive builder that
// replays a clique-width expression over a colored forest (emitting a
// 2t-label witness expression for the model), and the translation of
// twin-models of complement expansions into loopless merge-models.
#pragma once

#include "mw/clique_expression.hpp"
#include "mw/merge_model.hpp"

namespace mw {

struct TwinModel {
    std::string name = "t";
    Signature base_signature;
    TreeOrder order;
    std::map<std::string, PairSet> z_tuples; // only non-empty sets

    bool operator==(const TwinModel&) const = default;
    const PairSet& tuples(const std::string& sym) const
    {
        static const PairSet empty;
        auto it = z_tuples.find(sym);
        return it == z_tuples.end() ? empty : it->second;
    }
};

inline TwinModel make_twin_model(std::string name, Signature sig, TreeOrder order,
                                 std::map<std::string, PairSet> tuples)
{
    TwinModel t;
    t.name = std::move(name);
    t.base_signature = std::move(sig);
    t.order = std::move(order);
    for (auto& [sym, pairs] : tuples) {
        if (!t.base_signature.has(sym))
            throw std::invalid_argument("tuple for unknown symbol '" + sym + "'");
        if (!pairs.empty()) t.z_tuples[sym] = std::move(pairs);
    }
    return t;
}

inline Report validate_twin_model(const TwinModel& t)
{
    if (auto rep = validate_tree_order(t.order); !rep.ok)
        return Report::fail("tree-order: " + rep.detail);
    for (const auto& [sym, pairs] : t.z_tuples)
        for (const auto& [x, y] : pairs)
            if (!t.order.has_node(x) || !t.order.has_node(y))
                return Report::fail("tuple (" + x + "," + y + ") outside the node set");
    detail::TreeIndex tix(t.order);
    const auto& nodes = tix.nodes;
    // no comparable endpoints (equal counts as comparable)
    for (const auto& [sym, pairs] : t.z_tuples)
        for (const auto& [x, y] : pairs)
            if (tix.compare(tix.at(x), tix.at(y)) != Cmp::incomparable)
                return Report::fail("comparable " + sym + " pair (" + x + "," + y + ")");
    // minimality per symbol
    for (const auto& [sym, pairs] : t.z_tuples)
        for (const auto& p : pairs)
            for (const auto& q : pairs) {
                if (p == q) continue;
                if (tix.below_or_eq(tix.at(q.first), tix.at(p.first))
                    && tix.below_or_eq(tix.at(q.second), tix.at(p.second)))
                    return Report::fail("non-minimal " + sym + " pair (" + p.first + "," + p.second
                                        + ") dominated by (" + q.first + "," + q.second + ")");
            }
    // no alternating cycle: arc u -> u' when a strict descendant of u is
    // Z-related (either orientation) to u'
    int n = static_cast<int>(nodes.size());
    std::vector<std::set<int>> arcs(n);
    for (const auto& [sym, pairs] : t.z_tuples)
        for (const auto& [x, y] : pairs) {
            int xi = tix.at(x), yi = tix.at(y);
            for (int u : tix.ancestors(xi)) arcs[u].insert(yi);
            for (int u : tix.ancestors(yi)) arcs[u].insert(xi);
        }
    std::vector<int> state(n, 0);
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
        if (state[x] == 0 && cyclic(x))
            return Report::fail("alternating cycle through " + nodes[x]);
    return Report::pass();
}

// Universe = leaves; R(u,v) iff some ancestor pair lies in Z_R.
inline BinaryStructure twin_interpret(const TwinModel& t)
{
    detail::TreeIndex tix(t.order);
    auto leaves = tix.leaves();
    std::vector<std::string> universe;
    for (int l : leaves) universe.push_back(tix.nodes[l]);
    std::map<std::string, PairSet> rels;
    for (const auto& sym : t.base_signature.symbols) rels[sym];
    for (const auto& sym : t.base_signature.symbols)
        for (const auto& [x, y] : t.tuples(sym))
            for (int u : tix.leaf_descendants(tix.at(x)))
                for (int v : tix.leaf_descendants(tix.at(y))) {
                    if (u == v) continue;
                    rels[sym].insert({tix.nodes[u], tix.nodes[v]});
                }
    return make_structure(t.name, t.base_signature, std::move(universe), std::move(rels));
}

inline BinaryStructure twin_z_part(const TwinModel& t)
{
    std::vector<std::string> syms;
    std::map<std::string, PairSet> rels;
    for (const auto& sym : t.base_signature.symbols) {
        std::string name = "Z__" + sym;
        syms.push_back(name);
        rels[name] = t.tuples(sym);
    }
    return make_structure(t.name, make_signature(std::move(syms)), t.order.nodes, std::move(rels));
}

inline int twin_bomega(const TwinModel& t, int limit)
{
    return biclique_number(gaifman(twin_z_part(t)), limit);
}

// The model as a plain structure: reserved order symbol (strict, transitive)
// plus one Z__<R> symbol per base symbol.
inline BinaryStructure twin_as_structure(const TwinModel& t)
{
    detail::TreeIndex tix(t.order);
    BinaryStructure z = twin_z_part(t);
    std::vector<std::string> syms = z.signature.symbols;
    syms.push_back(kOrderSymbol);
    PairSet prec;
    for (const auto& x : t.order.nodes)
        for (int a : tix.ancestors(tix.at(x))) prec.insert({tix.nodes[a], x});
    auto rels = z.relations;
    rels[kOrderSymbol] = std::move(prec);
    return make_structure(t.name, make_signature(std::move(syms)), t.order.nodes, std::move(rels));
}

struct TwinBuildResult {
    TwinModel model;
    CwExpr witness; // over the reserved order symbol and Z__<R>, <= 2t labels
};

namespace detail {

// Colored forest used while replaying a clique-width expression. Colors are
// 1..t for current class representatives (always forest roots) and t+c for
// retired elements; every tree is a root colored c whose strict descendants
// all carry t+c.
struct ForestBuilder {
    int t;
    std::vector<std::string> names;
    std::vector<int> parent; // -1 = forest root
    std::vector<int> color;
    std::map<std::string, int> byname;
    int fresh = 0;

    explicit ForestBuilder(int labels) : t(labels) {}

    int primed(int c) const { return c > t ? c : c + t; }

    int add_node(const std::string& name, int c)
    {
        if (byname.count(name)) throw std::invalid_argument("duplicate element name '" + name + "'");
        int id = static_cast<int>(names.size());
        names.push_back(name);
        parent.push_back(-1);
        color.push_back(c);
        byname[name] = id;
        return id;
    }

    std::string fresh_name() { return "@" + std::to_string(++fresh); }

    // all class operations are scoped to the sub-expression being replayed;
    // siblings of an enclosing union share colors but must not interact

    bool class_empty(int c, const std::vector<int>& members) const
    {
        for (int i : members)
            if (color[i] == c) return false;
        return true;
    }

    void recolor(int from, int to, const std::vector<int>& members)
    {
        for (int i : members)
            if (color[i] == from) color[i] = to;
    }

    // place a fresh node of color c above every member currently colored
    // t+c; the retired class is a union of complete trees, so only the
    // roots get reparented
    int cap_class(int c, const std::vector<int>& members)
    {
        int id = add_node(fresh_name(), c);
        for (int i : members)
            if (color[i] == primed(c) && parent[i] < 0) parent[i] = id;
        return id;
    }

    // the colored-forest invariant: unprimed elements are exactly the forest
    // roots, and each tree below a root of color c is uniformly colored t+c
    void check_invariant() const
    {
        for (int i = 0; i < static_cast<int>(names.size()); ++i) {
            bool root = parent[i] < 0;
            bool unprimed = color[i] <= t;
            if (root != unprimed)
                throw std::logic_error("colored-forest invariant broken at " + names[i]);
            if (!root) {
                int r = i;
                while (parent[r] >= 0) r = parent[r];
                if (color[i] != primed(color[r]))
                    throw std::logic_error("off-color descendant " + names[i]);
            }
        }
    }
};

} // namespace detail

// Replay an expression over a colored forest: create adds a root, union joins
// forests, add retires both label classes under fresh representatives joined
// by a transversal tuple (skipped entirely when either class is empty), and
// relabel retires i, its retired class and j under a fresh j root. A final
// root is added above everything and dominated transversal tuples are pruned.
// The returned witness expression rebuilds the model (as a structure over the
// reserved order symbol and Z__<R>) with at most 2t labels and stays linear
// when the input is linear.
inline TwinBuildResult twin_model_of_expression(const CwExpr& expr)
{
    {
        std::set<std::string> names;
        detail::check_expression(expr, names);
        for (const auto& n : names)
            if (n[0] == '@')
                throw std::invalid_argument("element names starting with '@' are reserved");
    }
    std::set<std::string> symset;
    detail::collect_symbols(expr, symset);
    for (const auto& sym : symset)
        if (is_reserved_symbol(sym))
            throw std::invalid_argument("expression uses the reserved symbol '" + sym + "'");
    int t = std::max(1, label_count(expr));
    detail::ForestBuilder fb(t);

    auto wprimed = [&](int c) { return c + t; };

    struct TagInfo {
        std::string symbol;
        std::pair<int, int> forward;
        bool symmetric;
    };
    std::map<int, TagInfo> taginfo;
    std::map<std::string, std::vector<std::pair<int, int>>> ztuples; // per symbol, oriented
    int next_tag = 0;

    struct Replayed {
        CwExpr witness;
        std::vector<int> members; // builder node ids of this sub-expression
    };

    std::function<Replayed(const CwExpr&)> run = [&](const CwExpr& node) -> Replayed {
        switch (node.kind) {
        case CwExpr::Kind::create: {
            int id = fb.add_node(node.element, node.label);
            fb.check_invariant();
            return {cw_create(node.label, node.element), {id}};
        }
        case CwExpr::Kind::make_union: {
            Replayed left = run(node.children[0]);
            Replayed right = run(node.children[1]);
            left.members.insert(left.members.end(), right.members.begin(), right.members.end());
            fb.check_invariant();
            return {cw_union(std::move(left.witness), std::move(right.witness)),
                    std::move(left.members)};
        }
        case CwExpr::Kind::add:
        case CwExpr::Kind::add_sym: {
            Replayed sub = run(node.children[0]);
            CwExpr w = std::move(sub.witness);
            int i = node.label, j = node.label_to;
            bool symmetric = node.kind == CwExpr::Kind::add_sym;
            if (fb.class_empty(i, sub.members) || fb.class_empty(j, sub.members)) {
                // no pairs can be added; keep the symbol visible in the witness
                fb.check_invariant();
                return {cw_add("Z__" + node.symbol, i, j, std::move(w), symmetric),
                        std::move(sub.members)};
            }
            fb.recolor(i, wprimed(i), sub.members);
            fb.recolor(j, wprimed(j), sub.members);
            w = cw_relabel(i, wprimed(i), std::move(w));
            w = cw_relabel(j, wprimed(j), std::move(w));
            int x = fb.cap_class(i, sub.members);
            sub.members.push_back(x);
            w = cw_union(cw_create(i, fb.names[x]), std::move(w));
            w = cw_add(kOrderSymbol, i, wprimed(i), std::move(w));
            int y = fb.cap_class(j, sub.members);
            sub.members.push_back(y);
            w = cw_union(cw_create(j, fb.names[y]), std::move(w));
            w = cw_add(kOrderSymbol, j, wprimed(j), std::move(w));
            int tag = ++next_tag;
            taginfo[tag] = TagInfo{node.symbol, {x, y}, symmetric};
            ztuples[node.symbol].push_back({x, y});
            if (symmetric) ztuples[node.symbol].push_back({y, x});
            w = cw_add("Z__" + node.symbol, i, j, std::move(w), symmetric);
            w.tag = tag;
            fb.check_invariant();
            return {std::move(w), std::move(sub.members)};
        }
        case CwExpr::Kind::relabel: {
            Replayed sub = run(node.children[0]);
            CwExpr w = std::move(sub.witness);
            int i = node.label, j = node.label_to;
            fb.recolor(i, wprimed(j), sub.members);
            fb.recolor(wprimed(i), wprimed(j), sub.members);
            fb.recolor(j, wprimed(j), sub.members);
            w = cw_relabel(i, wprimed(j), std::move(w));
            w = cw_relabel(wprimed(i), wprimed(j), std::move(w));
            w = cw_relabel(j, wprimed(j), std::move(w));
            if (!fb.class_empty(wprimed(j), sub.members)) {
                int y = fb.cap_class(j, sub.members);
                sub.members.push_back(y);
                w = cw_union(cw_create(j, fb.names[y]), std::move(w));
                w = cw_add(kOrderSymbol, j, wprimed(j), std::move(w));
            }
            fb.check_invariant();
            return {std::move(w), std::move(sub.members)};
        }
        }
        throw std::logic_error("unreachable");
    };

    Replayed top = run(expr);
    CwExpr witness = std::move(top.witness);

    // finalization: retire everything below one fresh root
    for (int c = 1; c <= 2 * t; ++c) {
        if (c == wprimed(1)) continue;
        fb.recolor(c, wprimed(1), top.members);
        witness = cw_relabel(c, wprimed(1), std::move(witness));
    }
    int rootid = fb.cap_class(1, top.members);
    witness = cw_union(cw_create(1, fb.names[rootid]), std::move(witness));
    witness = cw_add(kOrderSymbol, 1, wprimed(1), std::move(witness));
    fb.check_invariant();

    TreeOrder order;
    {
        std::map<std::string, std::string> parents;
        for (int i = 0; i < static_cast<int>(fb.names.size()); ++i)
            if (fb.parent[i] >= 0) parents[fb.names[i]] = fb.names[fb.parent[i]];
        order = make_tree_order(fb.names, std::move(parents));
    }
    detail::TreeIndex tix(order);
    auto nid = [&](int builder_id) { return tix.at(fb.names[builder_id]); };

    // prune transversal tuples dominated by a componentwise-smaller one
    std::set<std::pair<std::string, std::pair<int, int>>> dead;
    std::map<std::string, PairSet> kept;
    for (const auto& [sym, tuples] : ztuples)
        for (const auto& p : tuples) {
            bool dominated = false;
            for (const auto& q : tuples) {
                if (q == p) continue;
                if (tix.below_or_eq(nid(q.first), nid(p.first))
                    && tix.below_or_eq(nid(q.second), nid(p.second))) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) dead.insert({sym, p});
            else kept[sym].insert({fb.names[p.first], fb.names[p.second]});
        }

    // drop pruned orientations from the witness
    std::function<CwExpr(CwExpr)> rewrite = [&](CwExpr node) -> CwExpr {
        for (auto& c : node.children) c = rewrite(std::move(c));
        if (node.tag == 0) return node;
        const TagInfo& info = taginfo.at(node.tag);
        node.tag = 0;
        bool fwd = !dead.count({info.symbol, info.forward});
        bool rev = info.symmetric
                   && !dead.count({info.symbol, {info.forward.second, info.forward.first}});
        if (node.kind == CwExpr::Kind::add)
            return fwd ? std::move(node) : std::move(node.children[0]);
        if (fwd && rev) return node;
        CwExpr child = std::move(node.children[0]);
        if (fwd) return cw_add(node.symbol, node.label, node.label_to, std::move(child));
        if (rev) return cw_add(node.symbol, node.label_to, node.label, std::move(child));
        return child;
    };
    witness = rewrite(std::move(witness));

    std::vector<std::string> sigsyms(symset.begin(), symset.end());
    TwinModel model = make_twin_model("t", make_signature(std::move(sigsyms)), std::move(order),
                                      std::move(kept));
    return {std::move(model), std::move(witness)};
}

// Twin-models of complement expansions become loopless merge-models over {E}:
// revealed adjacencies turn into S_{E,1}, revealed non-adjacencies into
// S_{E,0}, on the same tree.
inline MergeModel merge_model_of_twin(const TwinModel& t)
{
    if (auto rep = validate_twin_model(t); !rep.ok)
        throw std::invalid_argument("invalid twin-model: " + rep.detail);
    for (const auto& sym : t.base_signature.symbols)
        if (sym != "E" && sym != "F")
            throw std::invalid_argument("translation expects a twin-model over {E,F}");
    BinaryStructure interp = twin_interpret(t);
    auto holds = [&](const char* sym, const std::string& u, const std::string& v) {
        return t.base_signature.has(sym) && interp.rel(sym).count({u, v}) > 0;
    };
    for (const auto& u : interp.universe)
        for (const auto& v : interp.universe) {
            if (u == v) continue;
            if (holds("E", u, v) == holds("F", u, v))
                throw std::invalid_argument("interpretation is not a complement expansion at ("
                                            + u + "," + v + ")");
        }
    MergeModel m = make_merge_model(t.name, make_signature({"E"}), t.order,
                                    {{{"E", 1}, t.tuples("E")}, {{"E", 0}, t.tuples("F")}});
    if (auto rep = validate_model(m); !rep.ok)
        throw std::invalid_argument("translated model fails validation: " + rep.detail);
    return m;
}

} // namespace mw
