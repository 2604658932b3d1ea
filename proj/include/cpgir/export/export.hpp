#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cpgir/cpg/graph.hpp"

#include "json.hpp"

namespace cpgir::exporter {

/// Serializes the graph as deterministic JSON: nodes in id order, edges in
/// the unified sorted order, properties alphabetical. Stats are embedded
/// without the phase timings so equal graphs always serialize to equal
/// bytes. Invalid UTF-8 (possible in degraded raw text) is replaced, not
/// propagated.
inline std::string export_json(const cpg::CpgGraph& g) {
    nlohmann::ordered_json doc;
    doc["format"] = "cpgir-graph";
    doc["version"] = 1;
    doc["root"] = g.root == cpg::kInvalidNode ? -1 : static_cast<long long>(g.root);

    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : g.nodes) {
        if (!n.alive) continue;
        nlohmann::ordered_json jn;
        jn["id"] = n.id;
        jn["kind"] = std::string(cpg::node_kind_name(n.kind));
        if (!n.name.empty()) jn["name"] = n.name;
        if (!n.code.empty()) jn["code"] = n.code;
        if (!n.type.empty()) jn["type"] = n.type;
        if (n.line > 0) jn["line"] = n.line;
        if (!n.properties.empty()) {
            nlohmann::ordered_json props;
            for (const auto& [k, v] : n.properties) props[k] = v; // std::map: sorted
            jn["properties"] = std::move(props);
        }
        nodes.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(nodes);

    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& e : g.all_edges()) {
        nlohmann::ordered_json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["kind"] = std::string(cpg::edge_kind_name(e.kind));
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);

    nlohmann::ordered_json stats;
    stats["node_count"] = g.stats.node_count;
    stats["edge_count"] = g.stats.edge_count;
    stats["function_count"] = g.stats.function_count;
    stats["problem_node_count"] = g.stats.problem_node_count;
    nlohmann::ordered_json by_kind;
    for (const auto& [k, v] : g.stats.nodes_by_kind) by_kind[k] = v;
    stats["nodes_by_kind"] = std::move(by_kind);
    nlohmann::ordered_json by_edge;
    for (const auto& [k, v] : g.stats.edges_by_kind) by_edge[k] = v;
    stats["edges_by_kind"] = std::move(by_edge);
    doc["stats"] = std::move(stats);

    return doc.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

struct ImportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Rebuilds a graph from its JSON export. Exported ids may be sparse (nodes
/// removed by passes are skipped); they are remapped onto a dense arena in
/// ascending order, preserving structure.
inline cpg::CpgGraph import_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ImportError(std::string("not valid JSON: ") + e.what());
    }
    if (doc.value("format", "") != "cpgir-graph")
        throw ImportError("missing cpgir-graph format marker");

    cpg::CpgGraph g;
    std::map<long long, cpg::NodeId> remap;
    for (const auto& jn : doc.at("nodes")) {
        std::string kind_name = jn.at("kind").get<std::string>();
        auto kind = cpg::node_kind_from(kind_name);
        if (!kind) throw ImportError("unknown node kind '" + kind_name + "'");
        cpg::NodeId id = g.new_node(*kind, jn.value("name", ""), jn.value("code", ""),
                                    jn.value("type", ""));
        g.node(id).line = jn.value("line", 0);
        if (jn.contains("properties"))
            for (const auto& [k, v] : jn.at("properties").items())
                g.node(id).properties[k] = v.get<std::string>();
        remap[jn.at("id").get<long long>()] = id;
    }

    long long root = doc.value("root", -1);
    if (root >= 0) {
        auto it = remap.find(root);
        if (it == remap.end()) throw ImportError("root id is not a node");
        g.root = it->second;
    }

    for (const auto& je : doc.at("edges")) {
        auto fit = remap.find(je.at("from").get<long long>());
        auto tit = remap.find(je.at("to").get<long long>());
        if (fit == remap.end() || tit == remap.end())
            throw ImportError("edge references a missing node");
        std::string kind = je.at("kind").get<std::string>();
        if (kind == "AST") g.add_child(fit->second, tit->second);
        else if (kind == "EOG") g.add_eog(fit->second, tit->second);
        else if (kind == "DFG") g.add_dfg(fit->second, tit->second);
        else if (kind == "REFERS_TO") g.add_refers_to(fit->second, tit->second);
        else if (kind == "TYPE") g.add_type_edge(fit->second, tit->second);
        else if (kind == "FIELD") g.add_field_edge(fit->second, tit->second);
        else throw ImportError("unknown edge kind '" + kind + "'");
    }
    g.finalize();
    return g;
}

/// Canonical structural form: node ids replaced by their position in the
/// live-node ordering. Two graphs are isomorphic under the export/import
/// remapping exactly when their canonical forms are byte-equal.
inline std::string canonical_form(const cpg::CpgGraph& g) {
    // Number nodes by their depth-first position in the AST: sibling order is
    // captured by the numbering itself, so the raw node ids drop out entirely.
    // Live nodes outside the tree (detached scaffolding) follow in id order.
    std::map<cpg::NodeId, size_t> position;
    if (g.root != cpg::kInvalidNode && g.alive(g.root))
        g.walk(g.root, [&](const cpg::CpgNode& n) {
            position.emplace(n.id, position.size());
        });
    for (const auto& n : g.nodes)
        if (n.alive) position.emplace(n.id, position.size());

    std::vector<const cpg::CpgNode*> ordered(position.size(), nullptr);
    for (const auto& [id, pos] : position) ordered[pos] = &g.node(id);

    nlohmann::ordered_json doc;
    doc["root"] =
        g.root != cpg::kInvalidNode && position.count(g.root)
            ? static_cast<long long>(position.at(g.root))
            : -1;
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const cpg::CpgNode* n : ordered) {
        nlohmann::ordered_json jn;
        jn["kind"] = std::string(cpg::node_kind_name(n->kind));
        jn["name"] = n->name;
        jn["code"] = n->code;
        jn["type"] = n->type;
        nlohmann::ordered_json props;
        for (const auto& [k, v] : n->properties) props[k] = v;
        jn["properties"] = std::move(props);
        nodes.push_back(std::move(jn));
    }
    doc["nodes"] = std::move(nodes);
    std::vector<std::tuple<size_t, size_t, std::string>> flat;
    for (const auto& e : g.all_edges())
        flat.emplace_back(position.at(e.from), position.at(e.to),
                          std::string(cpg::edge_kind_name(e.kind)));
    std::sort(flat.begin(), flat.end());
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [from, to, kind] : flat) {
        nlohmann::ordered_json je;
        je["from"] = static_cast<long long>(from);
        je["to"] = static_cast<long long>(to);
        je["kind"] = kind;
        edges.push_back(std::move(je));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(0, ' ', false, nlohmann::json::error_handler_t::replace);
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default:
            if (c < 0x20 && c != '\t' && c != '\n' && c != '\r') out += '?';
            else out += static_cast<char>(c);
        }
    }
    return out;
}

inline std::string csv_field(const std::string& s) {
    bool needs_quotes = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace detail

/// GraphML with the node kind as the label attribute and all remaining node
/// data flattened into <data> entries.
inline std::string export_graphml(const cpg::CpgGraph& g) {
    // collect the union of property keys for key declarations
    std::set<std::string> prop_keys;
    for (const auto& n : g.nodes) {
        if (!n.alive) continue;
        for (const auto& [k, v] : n.properties) prop_keys.insert(k);
    }

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out += "  <key id=\"labels\" for=\"node\" attr.name=\"labels\" attr.type=\"string\"/>\n";
    out += "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n";
    out += "  <key id=\"code\" for=\"node\" attr.name=\"code\" attr.type=\"string\"/>\n";
    out += "  <key id=\"type\" for=\"node\" attr.name=\"type\" attr.type=\"string\"/>\n";
    out += "  <key id=\"line\" for=\"node\" attr.name=\"line\" attr.type=\"int\"/>\n";
    for (const auto& k : prop_keys)
        out += "  <key id=\"p_" + detail::xml_escape(k) + "\" for=\"node\" attr.name=\"" +
               detail::xml_escape(k) + "\" attr.type=\"string\"/>\n";
    out += "  <key id=\"kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n";
    out += "  <graph id=\"G\" edgedefault=\"directed\">\n";

    for (const auto& n : g.nodes) {
        if (!n.alive) continue;
        out += "    <node id=\"n" + std::to_string(n.id) + "\">\n";
        out += "      <data key=\"labels\">" +
               detail::xml_escape(std::string(cpg::node_kind_name(n.kind))) + "</data>\n";
        if (!n.name.empty())
            out += "      <data key=\"name\">" + detail::xml_escape(n.name) + "</data>\n";
        if (!n.code.empty())
            out += "      <data key=\"code\">" + detail::xml_escape(n.code) + "</data>\n";
        if (!n.type.empty())
            out += "      <data key=\"type\">" + detail::xml_escape(n.type) + "</data>\n";
        if (n.line > 0)
            out += "      <data key=\"line\">" + std::to_string(n.line) + "</data>\n";
        for (const auto& [k, v] : n.properties)
            out += "      <data key=\"p_" + detail::xml_escape(k) + "\">" +
                   detail::xml_escape(v) + "</data>\n";
        out += "    </node>\n";
    }
    size_t edge_id = 0;
    for (const auto& e : g.all_edges()) {
        out += "    <edge id=\"e" + std::to_string(edge_id++) + "\" source=\"n" +
               std::to_string(e.from) + "\" target=\"n" + std::to_string(e.to) + "\">\n";
        out += "      <data key=\"kind\">" +
               detail::xml_escape(std::string(cpg::edge_kind_name(e.kind))) + "</data>\n";
        out += "    </edge>\n";
    }
    out += "  </graph>\n";
    out += "</graphml>\n";
    return out;
}

/// Neo4j bulk-import CSV pair (RFC 4180 quoting).
///   nodes:  id:ID,kind:LABEL,name,code,type
///   edges:  :START_ID,:END_ID,kind:TYPE
inline std::pair<std::string, std::string> export_neo4j_csv(const cpg::CpgGraph& g) {
    std::string nodes = "id:ID,kind:LABEL,name,code,type\r\n";
    for (const auto& n : g.nodes) {
        if (!n.alive) continue;
        nodes += std::to_string(n.id) + "," +
                 detail::csv_field(std::string(cpg::node_kind_name(n.kind))) + "," +
                 detail::csv_field(n.name) + "," + detail::csv_field(n.code) + "," +
                 detail::csv_field(n.type) + "\r\n";
    }
    std::string edges = ":START_ID,:END_ID,kind:TYPE\r\n";
    for (const auto& e : g.all_edges())
        edges += std::to_string(e.from) + "," + std::to_string(e.to) + "," +
                 detail::csv_field(std::string(cpg::edge_kind_name(e.kind))) + "\r\n";
    return {std::move(nodes), std::move(edges)};
}

} // namespace cpgir::exporter
