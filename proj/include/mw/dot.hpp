// DOT exports. Tree edges are drawn solid black, revealed-adjacency
// transversals (S_{Z,1}, Z_R) solid gray, revealed non-adjacencies (S_{Z,0})
// dotted gray; loops become self-arcs.
#pragma once

#include "mw/ranked_model.hpp"
#include "mw/twin_model.hpp"

#include <optional>
#include <sstream>

namespace mw {

namespace detail {

inline std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

inline std::string to_dot(const BinaryStructure& s)
{
    std::ostringstream out;
    out << "digraph " << detail::dot_quote(s.name) << " {\n";
    for (const auto& e : s.universe) out << "  " << detail::dot_quote(e) << ";\n";
    for (const auto& [sym, pairs] : s.relations)
        for (const auto& [u, v] : pairs)
            out << "  " << detail::dot_quote(u) << " -> " << detail::dot_quote(v)
                << " [label=" << detail::dot_quote(sym) << "];\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const Graph& g)
{
    std::ostringstream out;
    out << "graph " << detail::dot_quote(g.s.name) << " {\n";
    for (const auto& v : g.vertices()) out << "  " << detail::dot_quote(v) << ";\n";
    for (const auto& [u, v] : g.s.rel("E"))
        if (u < v) out << "  " << detail::dot_quote(u) << " -- " << detail::dot_quote(v) << ";\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const MergeModel& m,
                          const std::optional<std::map<std::string, Interval>>& ranking = std::nullopt)
{
    std::ostringstream out;
    out << "digraph " << detail::dot_quote(m.name) << " {\n";
    out << "  node [shape=ellipse];\n";
    for (const auto& x : m.order.nodes) {
        std::string label = x;
        if (ranking) {
            const Interval& itv = ranking->at(x);
            label += "\\n[" + to_string(itv.lo) + "," + to_string(itv.hi) + "]";
        }
        out << "  " << detail::dot_quote(x) << " [label=" << detail::dot_quote(label) << "];\n";
    }
    for (const auto& x : m.order.nodes)
        if (auto it = m.order.parent.find(x); it != m.order.parent.end())
            out << "  " << detail::dot_quote(it->second) << " -> " << detail::dot_quote(x) << ";\n";
    for (const auto& [key, pairs] : m.s_tuples) {
        std::string style = key.second == 1 ? "solid" : "dotted";
        for (const auto& [x, y] : pairs)
            out << "  " << detail::dot_quote(x) << " -> " << detail::dot_quote(y)
                << " [label=" << detail::dot_quote(key.first + "," + std::to_string(key.second))
                << ", color=gray40, fontcolor=gray40, style=" << style << ", constraint=false];\n";
    }
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const TwinModel& t)
{
    std::ostringstream out;
    out << "digraph " << detail::dot_quote(t.name) << " {\n";
    out << "  node [shape=ellipse];\n";
    for (const auto& x : t.order.nodes) out << "  " << detail::dot_quote(x) << ";\n";
    for (const auto& x : t.order.nodes)
        if (auto it = t.order.parent.find(x); it != t.order.parent.end())
            out << "  " << detail::dot_quote(it->second) << " -> " << detail::dot_quote(x) << ";\n";
    for (const auto& [sym, pairs] : t.z_tuples)
        for (const auto& [x, y] : pairs)
            out << "  " << detail::dot_quote(x) << " -> " << detail::dot_quote(y)
                << " [label=" << detail::dot_quote(sym)
                << ", color=gray40, fontcolor=gray40, constraint=false];\n";
    out << "}\n";
    return out.str();
}

inline std::string to_dot(const CwExpr& e)
{
    std::ostringstream out;
    out << "digraph expression {\n";
    out << "  node [shape=box];\n";
    int counter = 0;
    std::function<int(const CwExpr&)> emit = [&](const CwExpr& node) {
        int id = counter++;
        std::string label;
        switch (node.kind) {
        case CwExpr::Kind::create:
            label = "v " + std::to_string(node.label) + " " + node.element;
            break;
        case CwExpr::Kind::make_union: label = "u"; break;
        case CwExpr::Kind::add:
            label = "add " + node.symbol + " " + std::to_string(node.label) + " "
                    + std::to_string(node.label_to);
            break;
        case CwExpr::Kind::add_sym:
            label = "sadd " + node.symbol + " " + std::to_string(node.label) + " "
                    + std::to_string(node.label_to);
            break;
        case CwExpr::Kind::relabel:
            label = "rel " + std::to_string(node.label) + " " + std::to_string(node.label_to);
            break;
        }
        out << "  n" << id << " [label=" << detail::dot_quote(label) << "];\n";
        for (const auto& c : node.children) {
            int cid = emit(c);
            out << "  n" << id << " -> n" << cid << ";\n";
        }
        return id;
    };
    emit(e);
    out << "}\n";
    return out.str();
}

} // namespace mw
