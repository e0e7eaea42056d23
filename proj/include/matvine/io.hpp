#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "enumeration.hpp"
#include "errors.hpp"
#include "labeled_graph.hpp"
#include "verdict.hpp"
#include "vine_ops.hpp"
#include "vine_poset.hpp"

namespace matvine {

using Json = nlohmann::ordered_json;

inline constexpr const char* graph_format = "mat-graph/v1";
inline constexpr const char* vine_format = "vine/v1";
inline constexpr const char* forests_format = "vine-forests/v1";

/// Contents of an input file, by its "format" field.
using Document = std::variant<LabeledGraph, VinePoset, ForestSequence>;

namespace detail {

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw input_error(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw input_error(where + ": field \"" + key + "\" has the wrong type");
    }
}

}  // namespace detail

inline Json to_json(const LabeledGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.labeled_edges()) edges.push_back(Json::array({e.u, e.v, e.label}));
    return {{"format", graph_format}, {"vertices", g.vertices()}, {"edges", edges}};
}

inline Json to_json(const VinePoset& p) {
    Json nodes = Json::array();
    for (const auto& s : p.specs()) {
        Json n = {{"id", s.id}, {"rank", s.rank}, {"covers", s.covers}};
        if (!s.label.empty()) n["label"] = s.label;
        nodes.push_back(n);
    }
    return {{"format", vine_format}, {"nodes", nodes}};
}

inline Json to_json(const ForestSequence& f) {
    Json forests = Json::array();
    for (const auto& fr : f) {
        Json edges = Json::array();
        for (const auto& e : fr.edges) edges.push_back({{"id", e.id}, {"ends", {e.a, e.b}}});
        forests.push_back({{"nodes", fr.nodes}, {"edges", edges}});
    }
    return {{"format", forests_format}, {"forests", forests}};
}

inline Json to_json(const Verdict& v) {
    if (v.ok()) return {{"ok", true}};
    const auto& x = *v.violation();
    Json edges = Json::array();
    for (const auto& e : x.edges) edges.push_back({e[0], e[1]});
    return {{"ok", false}, {"tag", x.tag}, {"message", x.message}, {"vertices", x.vertices}, {"edges", edges}};
}

inline Json to_json(const EnumerationReport& r) {
    return {{"l", r.l},
            {"class_count", r.class_count},
            {"formula_count", Json::parse(r.formula_count.str())},
            {"labelings", r.labelings},
            {"stored_bytes", r.stored_bytes},
            {"elapsed_ms", static_cast<std::int64_t>(r.elapsed_ms)}};
}

inline LabeledGraph graph_from_json(const Json& j) {
    auto vertices = detail::field<std::vector<std::string>>(j, "vertices", graph_format);
    auto raw = detail::field<std::vector<Json>>(j, "edges", graph_format);
    std::vector<LabeledEdge> edges;
    for (const auto& e : raw) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_string() ||
            !e[2].is_number_integer())
            throw input_error(std::string(graph_format) + ": edge must be [\"u\",\"v\",label]");
        edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<int>()});
    }
    return LabeledGraph(std::move(vertices), std::move(edges));
}

inline VinePoset vine_from_json(const Json& j) {
    std::vector<NodeSpec> specs;
    for (const auto& n : detail::field<std::vector<Json>>(j, "nodes", vine_format)) {
        NodeSpec s;
        s.id = detail::field<std::string>(n, "id", vine_format);
        s.rank = detail::field<int>(n, "rank", vine_format);
        s.covers = detail::field<std::vector<std::string>>(n, "covers", vine_format);
        if (n.contains("label")) s.label = detail::field<std::string>(n, "label", vine_format);
        specs.push_back(std::move(s));
    }
    return VinePoset(std::move(specs));
}

inline ForestSequence forests_from_json(const Json& j) {
    ForestSequence f;
    for (const auto& fr : detail::field<std::vector<Json>>(j, "forests", forests_format)) {
        Forest x;
        x.nodes = detail::field<std::vector<std::string>>(fr, "nodes", forests_format);
        for (const auto& e : detail::field<std::vector<Json>>(fr, "edges", forests_format)) {
            auto ends = detail::field<std::vector<std::string>>(e, "ends", forests_format);
            if (ends.size() != 2) throw input_error(std::string(forests_format) + ": edge needs two ends");
            x.edges.push_back({detail::field<std::string>(e, "id", forests_format), ends[0], ends[1]});
        }
        f.push_back(std::move(x));
    }
    from_forest_sequence(f);  // structural checks
    return f;
}

inline Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("not valid JSON: ") + e.what());
    }
    auto format = detail::field<std::string>(j, "format", "input");
    if (format == graph_format) return graph_from_json(j);
    if (format == vine_format) return vine_from_json(j);
    if (format == forests_format) return forests_from_json(j);
    throw input_error("unknown format \"" + format + "\"");
}

inline Document read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_document(s.str());
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out || !(out << text)) throw input_error("cannot write " + path);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r + "\"";
}

}  // namespace detail

/// Undirected graph with `label=k` on every edge, vertices in input order.
inline std::string to_dot(const LabeledGraph& g) {
    std::string s = "graph G {\n";
    for (const auto& v : g.vertices()) s += "  " + detail::dot_quote(v) + ";\n";
    for (const auto& e : g.labeled_edges())
        s += "  " + detail::dot_quote(e.u) + " -- " + detail::dot_quote(e.v) + " [label=" +
             std::to_string(e.label) + "];\n";
    return s + "}\n";
}

/// Hasse diagram drawn bottom-up, one rank per row.
inline std::string to_dot(const VinePoset& p) {
    std::vector<std::string> names(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) names[v] = p.label(v).empty() ? p.id(v) : p.label(v);
    if (classify(p).at_least(VineClass::LRVine)) names = display_names(p);
    std::string s = "digraph P {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (int r = 1; r <= p.max_rank(); ++r) {
        s += "  { rank=same;";
        for (std::size_t v = 0; v < p.size(); ++v)
            if (p.rank(v) == r)
                s += " " + detail::dot_quote(p.id(v)) + " [label=" + detail::dot_quote(names[v]) + "];";
        s += " }\n";
    }
    for (std::size_t v = 0; v < p.size(); ++v)
        for (auto c : p.covers(v))
            s += "  " + detail::dot_quote(p.id(c)) + " -> " + detail::dot_quote(p.id(v)) + " [dir=none];\n";
    return s + "}\n";
}

}  // namespace matvine
