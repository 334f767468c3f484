// Parsers and canonical serializers for the file formats: .bst structures,
// .gr graph shorthand (input only), .mseq merge sequences, .mmod merge-models
// with optional interval rankings, .tmod twin-models and .cwe expressions.
// Serialization is sorted throughout so identical values give identical bytes.
#pragma once

#include "mw/merge_sequence.hpp"
#include "mw/ranked_model.hpp"
#include "mw/twin_model.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace mw {

enum class FileKind { structure, graph, merge_sequence, merge_model, twin_model, clique_expression };

namespace detail {

struct Row {
    int line;
    std::vector<std::string> tokens;
};

inline std::vector<Row> tokenize_lines(const std::string& text, bool dimacs_comments = false)
{
    std::vector<Row> rows;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        Row row{ln, {}};
        std::string tok;
        while (ls >> tok) row.tokens.push_back(tok);
        if (row.tokens.empty()) continue;
        if (dimacs_comments && row.tokens[0] == "c") continue;
        rows.push_back(std::move(row));
    }
    return rows;
}

inline int parse_int(const std::string& tok, int line)
{
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + tok + "'", line);
    }
}

inline void check_symbols(const std::vector<std::string>& syms, int line)
{
    for (const auto& s : syms)
        if (is_reserved_symbol(s))
            throw ParseError("relation symbol '" + s + "' is reserved", line);
}

} // namespace detail

inline FileKind detect_kind(const std::string& text)
{
    for (const auto& row : detail::tokenize_lines(text)) {
        const std::string& head = row.tokens[0];
        if (head == "structure") return FileKind::structure;
        if (head == "p" || head == "c") return FileKind::graph;
        if (head == "mergeseq") return FileKind::merge_sequence;
        if (head == "mergemodel") return FileKind::merge_model;
        if (head == "twinmodel") return FileKind::twin_model;
        if (head[0] == '(') return FileKind::clique_expression;
        throw ParseError("unrecognized header token '" + head + "'", row.line);
    }
    throw ParseError("empty input");
}

// ---------------------------------------------------------------- .bst ----

inline BinaryStructure parse_structure(const std::string& text)
{
    auto rows = detail::tokenize_lines(text);
    std::string name;
    std::vector<std::string> syms, elems;
    std::map<std::string, PairSet> rels;
    bool saw_header = false, saw_sig = false, saw_elems = false;
    for (const auto& row : rows) {
        const auto& tk = row.tokens;
        if (tk[0] == "structure") {
            if (saw_header || tk.size() != 2) throw ParseError("bad structure header", row.line);
            name = tk[1];
            saw_header = true;
        } else if (tk[0] == "signature") {
            if (!saw_header || saw_sig) throw ParseError("misplaced signature line", row.line);
            syms.assign(tk.begin() + 1, tk.end());
            saw_sig = true;
        } else if (tk[0] == "elements") {
            if (!saw_sig || saw_elems || tk.size() < 2) throw ParseError("misplaced elements line", row.line);
            elems.assign(tk.begin() + 1, tk.end());
            saw_elems = true;
        } else if (tk[0] == "rel") {
            if (!saw_elems || tk.size() != 4) throw ParseError("bad rel line", row.line);
            rels[tk[1]].insert({tk[2], tk[3]});
        } else {
            throw ParseError("unexpected token '" + tk[0] + "'", row.line);
        }
    }
    if (!saw_header) throw ParseError("missing structure header");
    if (!saw_sig) throw ParseError("missing signature line");
    if (!saw_elems) throw ParseError("missing elements line");
    try {
        return make_structure(name, make_signature(syms), elems, std::move(rels));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline std::string serialize(const BinaryStructure& s)
{
    std::ostringstream out;
    out << "structure " << s.name << "\n";
    out << "signature";
    for (const auto& sym : s.signature.symbols) out << " " << sym;
    out << "\n";
    out << "elements";
    for (const auto& e : s.universe) out << " " << e;
    out << "\n";
    for (const auto& [sym, pairs] : s.relations)
        for (const auto& [u, v] : pairs) out << "rel " << sym << " " << u << " " << v << "\n";
    return out.str();
}

// ----------------------------------------------------------------- .gr ----

inline Graph parse_graph(const std::string& text)
{
    auto rows = detail::tokenize_lines(text, true);
    int n = -1;
    std::vector<Pair> edges;
    for (const auto& row : rows) {
        const auto& tk = row.tokens;
        if (tk[0] == "p") {
            if (n >= 0 || tk.size() != 4 || tk[1] != "edge") throw ParseError("bad problem line", row.line);
            n = detail::parse_int(tk[2], row.line);
            if (n < 1) throw ParseError("vertex count must be positive", row.line);
        } else if (tk[0] == "e") {
            if (n < 0 || tk.size() != 3) throw ParseError("bad edge line", row.line);
            int u = detail::parse_int(tk[1], row.line);
            int v = detail::parse_int(tk[2], row.line);
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError("edge endpoint out of range", row.line);
            if (u == v) throw ParseError("self-loop", row.line);
            edges.push_back({std::to_string(u), std::to_string(v)});
        } else {
            throw ParseError("unexpected token '" + tk[0] + "'", row.line);
        }
    }
    if (n < 0) throw ParseError("missing problem line");
    std::vector<std::string> vertices;
    for (int i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
    return make_graph("g", std::move(vertices), edges);
}

// --------------------------------------------------------------- .mseq ----

inline MergeSequence parse_merge_sequence(const std::string& text)
{
    auto rows = detail::tokenize_lines(text);
    MergeSequence seq;
    bool saw_header = false;
    int expect_step = 1;
    MergeStep* cur = nullptr;
    for (const auto& row : rows) {
        const auto& tk = row.tokens;
        if (tk[0] == "mergeseq") {
            if (saw_header || tk.size() != 2) throw ParseError("bad mergeseq header", row.line);
            seq.structure_ref = tk[1];
            saw_header = true;
        } else if (tk[0] == "step") {
            if (!saw_header || tk.size() != 2) throw ParseError("bad step line", row.line);
            if (detail::parse_int(tk[1], row.line) != expect_step)
                throw ParseError("expected step " + std::to_string(expect_step), row.line);
            ++expect_step;
            seq.steps.push_back({});
            cur = &seq.steps.back();
        } else if (tk[0] == "parts") {
            if (!cur || !cur->parts.empty()) throw ParseError("misplaced parts line", row.line);
            std::vector<std::string> part;
            bool open = false;
            for (size_t i = 1; i < tk.size(); ++i) {
                if (tk[i] == "{") {
                    if (open) throw ParseError("nested '{'", row.line);
                    open = true;
                    part.clear();
                } else if (tk[i] == "}") {
                    if (!open || part.empty()) throw ParseError("empty or unopened part", row.line);
                    open = false;
                    std::sort(part.begin(), part.end());
                    cur->parts.push_back(part);
                } else {
                    if (!open) throw ParseError("element outside braces", row.line);
                    part.push_back(tk[i]);
                }
            }
            if (open) throw ParseError("unterminated part", row.line);
            if (cur->parts.empty()) throw ParseError("step without parts", row.line);
            std::sort(cur->parts.begin(), cur->parts.end());
        } else if (tk[0] == "reveal" || tk[0] == "revealsym") {
            if (!cur || cur->parts.empty() || tk.size() != 3)
                throw ParseError("misplaced reveal line", row.line);
            cur->reveals.insert({tk[1], tk[2]});
            if (tk[0] == "revealsym") cur->reveals.insert({tk[2], tk[1]});
        } else {
            throw ParseError("unexpected token '" + tk[0] + "'", row.line);
        }
    }
    if (!saw_header) throw ParseError("missing mergeseq header");
    if (seq.steps.empty()) throw ParseError("sequence without steps");
    for (const auto& st : seq.steps)
        if (st.parts.empty()) throw ParseError("step without parts");
    return seq;
}

inline std::string serialize(const MergeSequence& seq)
{
    std::ostringstream out;
    out << "mergeseq " << seq.structure_ref << "\n";
    for (size_t i = 0; i < seq.steps.size(); ++i) {
        out << "step " << (i + 1) << "\n";
        out << "parts";
        auto parts = seq.steps[i].parts;
        for (auto& p : parts) std::sort(p.begin(), p.end());
        std::sort(parts.begin(), parts.end());
        for (const auto& p : parts) {
            out << " {";
            for (const auto& e : p) out << " " << e;
            out << " }";
        }
        out << "\n";
        for (const auto& [u, v] : seq.steps[i].reveals) out << "reveal " << u << " " << v << "\n";
    }
    return out.str();
}

// --------------------------------------------------------------- .mmod ----

struct ParsedMergeModel {
    MergeModel model;
    std::optional<std::map<std::string, Interval>> ranking;
};

inline ParsedMergeModel parse_merge_model(const std::string& text)
{
    auto rows = detail::tokenize_lines(text);
    std::string name;
    std::vector<std::string> syms, nodes;
    std::map<std::string, std::string> parents;
    std::map<std::pair<std::string, int>, PairSet> tuples;
    std::map<std::string, Interval> ranking;
    bool saw_header = false, saw_sig = false;
    int with_interval = 0, without_interval = 0;
    for (const auto& row : rows) {
        const auto& tk = row.tokens;
        if (tk[0] == "mergemodel") {
            if (saw_header || tk.size() != 2) throw ParseError("bad mergemodel header", row.line);
            name = tk[1];
            saw_header = true;
        } else if (tk[0] == "signature") {
            if (!saw_header || saw_sig) throw ParseError("misplaced signature line", row.line);
            syms.assign(tk.begin() + 1, tk.end());
            saw_sig = true;
        } else if (tk[0] == "node") {
            if (!saw_sig || (tk.size() != 4 && tk.size() != 7))
                throw ParseError("bad node line", row.line);
            if (tk[2] != "parent") throw ParseError("expected 'parent'", row.line);
            nodes.push_back(tk[1]);
            if (tk[3] != "_") parents[tk[1]] = tk[3];
            if (tk.size() == 7) {
                if (tk[4] != "interval") throw ParseError("expected 'interval'", row.line);
                Rat lo = parse_rational(tk[5], row.line);
                Rat hi = parse_rational(tk[6], row.line);
                if (!(lo <= hi)) throw ParseError("empty interval", row.line);
                ranking[tk[1]] = Interval{lo, hi};
                ++with_interval;
            } else {
                ++without_interval;
            }
        } else if (tk[0] == "s") {
            if (tk.size() != 5) throw ParseError("bad s line", row.line);
            int alpha = detail::parse_int(tk[2], row.line);
            if (alpha != 0 && alpha != 1) throw ParseError("alpha must be 0 or 1", row.line);
            tuples[{tk[1], alpha}].insert({tk[3], tk[4]});
        } else {
            throw ParseError("unexpected token '" + tk[0] + "'", row.line);
        }
    }
    if (!saw_header) throw ParseError("missing mergemodel header");
    if (!saw_sig) throw ParseError("missing signature line");
    if (nodes.empty()) throw ParseError("model without nodes");
    if (with_interval > 0 && without_interval > 0)
        throw ParseError("intervals on some nodes but not all");
    ParsedMergeModel out;
    try {
        out.model = make_merge_model(name, make_signature(syms),
                                     make_tree_order(nodes, std::move(parents)), std::move(tuples));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (with_interval > 0) out.ranking = std::move(ranking);
    return out;
}

inline std::string serialize(const MergeModel& m,
                             const std::optional<std::map<std::string, Interval>>& ranking = std::nullopt)
{
    std::ostringstream out;
    out << "mergemodel " << m.name << "\n";
    out << "signature";
    for (const auto& sym : m.base_signature.symbols) out << " " << sym;
    out << "\n";
    for (const auto& x : m.order.nodes) {
        auto pit = m.order.parent.find(x);
        out << "node " << x << " parent " << (pit == m.order.parent.end() ? "_" : pit->second);
        if (ranking) {
            const Interval& itv = ranking->at(x);
            out << " interval " << to_string(itv.lo) << " " << to_string(itv.hi);
        }
        out << "\n";
    }
    for (const auto& [key, pairs] : m.s_tuples)
        for (const auto& [x, y] : pairs)
            out << "s " << key.first << " " << key.second << " " << x << " " << y << "\n";
    return out.str();
}

inline std::string serialize(const RankedMergeModel& rm)
{
    return serialize(rm.model, rm.ranking);
}

// --------------------------------------------------------------- .tmod ----

inline TwinModel parse_twin_model(const std::string& text)
{
    auto rows = detail::tokenize_lines(text);
    std::string name;
    std::vector<std::string> syms, nodes;
    std::map<std::string, std::string> parents;
    std::map<std::string, PairSet> tuples;
    bool saw_header = false, saw_sig = false;
    for (const auto& row : rows) {
        const auto& tk = row.tokens;
        if (tk[0] == "twinmodel") {
            if (saw_header || tk.size() != 2) throw ParseError("bad twinmodel header", row.line);
            name = tk[1];
            saw_header = true;
        } else if (tk[0] == "signature") {
            if (!saw_header || saw_sig) throw ParseError("misplaced signature line", row.line);
            syms.assign(tk.begin() + 1, tk.end());
            detail::check_symbols(syms, row.line);
            saw_sig = true;
        } else if (tk[0] == "node") {
            if (!saw_sig || tk.size() != 4 || tk[2] != "parent")
                throw ParseError("bad node line", row.line);
            nodes.push_back(tk[1]);
            if (tk[3] != "_") parents[tk[1]] = tk[3];
        } else if (tk[0] == "z") {
            if (tk.size() != 4) throw ParseError("bad z line", row.line);
            tuples[tk[1]].insert({tk[2], tk[3]});
        } else {
            throw ParseError("unexpected token '" + tk[0] + "'", row.line);
        }
    }
    if (!saw_header) throw ParseError("missing twinmodel header");
    if (!saw_sig) throw ParseError("missing signature line");
    if (nodes.empty()) throw ParseError("model without nodes");
    try {
        return make_twin_model(name, make_signature(syms),
                               make_tree_order(nodes, std::move(parents)), std::move(tuples));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline std::string serialize(const TwinModel& t)
{
    std::ostringstream out;
    out << "twinmodel " << t.name << "\n";
    out << "signature";
    for (const auto& sym : t.base_signature.symbols) out << " " << sym;
    out << "\n";
    for (const auto& x : t.order.nodes) {
        auto pit = t.order.parent.find(x);
        out << "node " << x << " parent " << (pit == t.order.parent.end() ? "_" : pit->second) << "\n";
    }
    for (const auto& [sym, pairs] : t.z_tuples)
        for (const auto& [x, y] : pairs) out << "z " << sym << " " << x << " " << y << "\n";
    return out.str();
}

// ---------------------------------------------------------------- .cwe ----

namespace detail {

struct SexprTokens {
    std::vector<std::pair<int, std::string>> toks;
    size_t pos = 0;

    const std::pair<int, std::string>& peek() const
    {
        if (pos >= toks.size()) throw ParseError("unexpected end of expression");
        return toks[pos];
    }
    std::pair<int, std::string> next()
    {
        auto t = peek();
        ++pos;
        return t;
    }
};

inline SexprTokens sexpr_tokenize(const std::string& text)
{
    SexprTokens out;
    int line = 1;
    std::string cur;
    bool comment = false;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.toks.push_back({line, cur});
            cur.clear();
        }
    };
    for (char ch : text) {
        if (ch == '\n') {
            flush();
            comment = false;
            ++line;
            continue;
        }
        if (comment) continue;
        if (ch == '#') {
            flush();
            comment = true;
        } else if (ch == '(' || ch == ')') {
            flush();
            out.toks.push_back({line, std::string(1, ch)});
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            cur += ch;
        }
    }
    flush();
    return out;
}

inline CwExpr parse_sexpr(SexprTokens& ts)
{
    auto [line, tok] = ts.next();
    if (tok != "(") throw ParseError("expected '('", line);
    auto [hline, head] = ts.next();
    auto atom = [&]() {
        auto [l, t] = ts.next();
        if (t == "(" || t == ")") throw ParseError("expected an atom", l);
        return std::pair(l, t);
    };
    CwExpr e;
    if (head == "v") {
        auto [l1, lab] = atom();
        auto [l2, name] = atom();
        e = cw_create(parse_int(lab, l1), name);
    } else if (head == "u") {
        CwExpr a = parse_sexpr(ts);
        CwExpr b = parse_sexpr(ts);
        e = cw_union(std::move(a), std::move(b));
    } else if (head == "add" || head == "sadd") {
        auto [l0, sym] = atom();
        auto [l1, i] = atom();
        auto [l2, j] = atom();
        CwExpr c = parse_sexpr(ts);
        e = cw_add(sym, parse_int(i, l1), parse_int(j, l2), std::move(c), head == "sadd");
    } else if (head == "rel") {
        auto [l1, i] = atom();
        auto [l2, j] = atom();
        CwExpr c = parse_sexpr(ts);
        e = cw_relabel(parse_int(i, l1), parse_int(j, l2), std::move(c));
    } else {
        throw ParseError("unknown operation '" + head + "'", hline);
    }
    auto [cline, close] = ts.next();
    if (close != ")") throw ParseError("expected ')'", cline);
    return e;
}

} // namespace detail

inline CwExpr parse_expression_text(const std::string& text)
{
    auto ts = detail::sexpr_tokenize(text);
    if (ts.toks.empty()) throw ParseError("empty expression");
    CwExpr e = detail::parse_sexpr(ts);
    if (ts.pos != ts.toks.size())
        throw ParseError("trailing tokens after the expression", ts.toks[ts.pos].first);
    if (auto rep = validate_expression(e); !rep.ok) throw ParseError(rep.detail);
    return e;
}

inline std::string serialize(const CwExpr& e)
{
    std::ostringstream out;
    std::function<void(const CwExpr&)> emit = [&](const CwExpr& node) {
        switch (node.kind) {
        case CwExpr::Kind::create:
            out << "(v " << node.label << " " << node.element << ")";
            return;
        case CwExpr::Kind::make_union:
            out << "(u ";
            emit(node.children[0]);
            out << " ";
            emit(node.children[1]);
            out << ")";
            return;
        case CwExpr::Kind::add:
        case CwExpr::Kind::add_sym:
            out << (node.kind == CwExpr::Kind::add ? "(add " : "(sadd ") << node.symbol << " "
                << node.label << " " << node.label_to << " ";
            emit(node.children[0]);
            out << ")";
            return;
        case CwExpr::Kind::relabel:
            out << "(rel " << node.label << " " << node.label_to << " ";
            emit(node.children[0]);
            out << ")";
            return;
        }
    };
    emit(e);
    out << "\n";
    return out.str();
}

} // namespace mw
