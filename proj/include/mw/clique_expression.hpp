// Clique-width expressions: create / union / add / symmetric add / relabel,
// bottom-up evaluation with label tracking, and the linearity predicate.
#pragma once

#include "mw/relational.hpp"

#include <functional>
#include <vector>

namespace mw {

struct CwExpr {
    enum class Kind { create, make_union, add, add_sym, relabel };

    Kind kind = Kind::create;
    int label = 0;         // create: the label; add/add_sym/relabel: i
    int label_to = 0;      // add/add_sym/relabel: j
    std::string symbol;    // add/add_sym
    std::string element;   // create
    std::vector<CwExpr> children;
    int tag = 0;           // internal correlation id, not serialized

    bool operator==(const CwExpr&) const = default;
};

inline CwExpr cw_create(int label, std::string element)
{
    CwExpr e;
    e.kind = CwExpr::Kind::create;
    e.label = label;
    e.element = std::move(element);
    return e;
}

inline CwExpr cw_union(CwExpr left, CwExpr right)
{
    CwExpr e;
    e.kind = CwExpr::Kind::make_union;
    e.children.push_back(std::move(left));
    e.children.push_back(std::move(right));
    return e;
}

inline CwExpr cw_add(std::string symbol, int i, int j, CwExpr child, bool symmetric = false)
{
    CwExpr e;
    e.kind = symmetric ? CwExpr::Kind::add_sym : CwExpr::Kind::add;
    e.symbol = std::move(symbol);
    e.label = i;
    e.label_to = j;
    e.children.push_back(std::move(child));
    return e;
}

inline CwExpr cw_relabel(int i, int j, CwExpr child)
{
    CwExpr e;
    e.kind = CwExpr::Kind::relabel;
    e.label = i;
    e.label_to = j;
    e.children.push_back(std::move(child));
    return e;
}

inline int label_count(const CwExpr& e)
{
    int t = std::max(e.label, e.label_to);
    for (const auto& c : e.children) t = std::max(t, label_count(c));
    return t;
}

// Linear expressions only ever union a single newly created element into the
// structure built so far.
inline bool is_linear(const CwExpr& e)
{
    if (e.kind == CwExpr::Kind::make_union
        && e.children[0].kind != CwExpr::Kind::create
        && e.children[1].kind != CwExpr::Kind::create)
        return false;
    for (const auto& c : e.children)
        if (!is_linear(c)) return false;
    return true;
}

namespace detail {

inline void collect_symbols(const CwExpr& e, std::set<std::string>& syms)
{
    if (e.kind == CwExpr::Kind::add || e.kind == CwExpr::Kind::add_sym) syms.insert(e.symbol);
    for (const auto& c : e.children) collect_symbols(c, syms);
}

inline void check_expression(const CwExpr& e, std::set<std::string>& names)
{
    switch (e.kind) {
    case CwExpr::Kind::create:
        if (e.label < 1) throw std::invalid_argument("label out of range in create");
        if (e.element.empty()) throw std::invalid_argument("create without an element name");
        if (!names.insert(e.element).second)
            throw std::invalid_argument("duplicate element name '" + e.element + "'");
        if (!e.children.empty()) throw std::invalid_argument("create takes no sub-expression");
        break;
    case CwExpr::Kind::make_union:
        if (e.children.size() != 2) throw std::invalid_argument("union takes two sub-expressions");
        break;
    case CwExpr::Kind::add:
    case CwExpr::Kind::add_sym:
        if (e.label < 1 || e.label_to < 1) throw std::invalid_argument("label out of range in add");
        if (e.label == e.label_to) throw std::invalid_argument("add with equal labels");
        if (e.symbol.empty()) throw std::invalid_argument("add without a relation symbol");
        if (e.children.size() != 1) throw std::invalid_argument("add takes one sub-expression");
        break;
    case CwExpr::Kind::relabel:
        if (e.label < 1 || e.label_to < 1) throw std::invalid_argument("label out of range in relabel");
        if (e.label == e.label_to) throw std::invalid_argument("relabel with equal labels");
        if (e.children.size() != 1) throw std::invalid_argument("relabel takes one sub-expression");
        break;
    }
    for (const auto& c : e.children) check_expression(c, names);
}

} // namespace detail

inline Report validate_expression(const CwExpr& e)
{
    std::set<std::string> names;
    try {
        detail::check_expression(e, names);
    } catch (const std::invalid_argument& err) {
        return Report::fail(err.what());
    }
    return Report::pass();
}

struct CwEval {
    BinaryStructure structure;
    std::map<std::string, int> labels; // final labeling
};

// Bottom-up evaluation. The output signature lists every symbol mentioned in
// an add, including adds that contributed no pairs.
inline CwEval eval_expression(const CwExpr& e, const std::string& name = "g")
{
    {
        std::set<std::string> names;
        detail::check_expression(e, names);
    }
    std::set<std::string> syms;
    detail::collect_symbols(e, syms);

    std::map<std::string, int> labels;
    std::map<std::string, PairSet> rels;
    for (const auto& s : syms) rels[s];

    std::function<std::vector<std::string>(const CwExpr&)> run =
        [&](const CwExpr& node) -> std::vector<std::string> {
        switch (node.kind) {
        case CwExpr::Kind::create:
            labels[node.element] = node.label;
            return {node.element};
        case CwExpr::Kind::make_union: {
            auto left = run(node.children[0]);
            auto right = run(node.children[1]);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
        case CwExpr::Kind::add:
        case CwExpr::Kind::add_sym: {
            auto elems = run(node.children[0]);
            auto apply = [&](int i, int j) {
                for (const auto& u : elems)
                    for (const auto& v : elems) {
                        if (u == v) continue;
                        if (labels.at(u) == i && labels.at(v) == j) rels[node.symbol].insert({u, v});
                    }
            };
            apply(node.label, node.label_to);
            if (node.kind == CwExpr::Kind::add_sym) apply(node.label_to, node.label);
            return elems;
        }
        case CwExpr::Kind::relabel: {
            auto elems = run(node.children[0]);
            for (const auto& u : elems)
                if (labels.at(u) == node.label) labels[u] = node.label_to;
            return elems;
        }
        }
        throw std::logic_error("unreachable");
    };

    auto universe = run(e);
    std::vector<std::string> symlist(syms.begin(), syms.end());
    CwEval out;
    out.structure = make_structure(name, make_signature(std::move(symlist)), std::move(universe),
                                   std::move(rels));
    out.labels = std::move(labels);
    return out;
}

} // namespace mw
