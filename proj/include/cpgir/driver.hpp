#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cpgir/analysis/analysis.hpp"
#include "cpgir/export/export.hpp"
#include "cpgir/ir/parser.hpp"
#include "cpgir/passes/passes.hpp"
#include "cpgir/passes/reg2mem.hpp"
#include "cpgir/translate/translator.hpp"

namespace cpgir::driver {

enum class Command { Translate, Stats, Query, Compare };
enum class Format { Json, GraphML, Neo4jCsv };

struct RunConfig {
    Command command = Command::Translate;
    std::string input_path;
    Format format = Format::Json;
    std::string out_path;           ///< empty: stdout (neo4j-csv requires a path)
    std::vector<std::string> passes = {"phi-elimination", "eog", "dfg", "inline-blocks",
                                       "catch-cleanup"};
    bool remove_stubs = false;
    bool baseline_reg2mem = false;
    std::string rule = "weak-cipher";
    bool fail_on_findings = false;
    bool strict = false;
    std::ostream* out = &std::cout;
    std::ostream* err = &std::cerr;
};

/// Default pass list accepted by --passes.
inline const std::vector<std::string>& known_passes() {
    static const std::vector<std::string> names = {
        "phi-elimination", "eog", "dfg", "inline-blocks", "catch-cleanup", "remove-stubs"};
    return names;
}

namespace detail {

struct Prepared {
    cpg::CpgGraph graph;
    DiagnosticList diagnostics;
    double parse_ms = 0;
    double translate_ms = 0;
};

inline passes::PipelineOptions options_from(const RunConfig& config) {
    passes::PipelineOptions opts;
    opts.phi_elimination = opts.eog = opts.dfg = false;
    opts.inline_blocks = opts.catch_cleanup = opts.remove_stubs = false;
    for (const auto& name : config.passes) {
        if (name == "phi-elimination") opts.phi_elimination = true;
        else if (name == "eog") opts.eog = true;
        else if (name == "dfg") opts.dfg = true;
        else if (name == "inline-blocks") opts.inline_blocks = true;
        else if (name == "catch-cleanup") opts.catch_cleanup = true;
        else if (name == "remove-stubs") opts.remove_stubs = true;
    }
    if (config.remove_stubs) opts.remove_stubs = true;
    opts.strict = config.strict;
    return opts;
}

/// Parses, optionally demotes (reg2mem baseline), translates, and runs the
/// configured pipeline. Returns false on a fatal parse error.
inline bool prepare(const RunConfig& config, const std::string& source, Prepared& out) {
    auto t0 = std::chrono::steady_clock::now();
    ir::ParseResult parsed = ir::parse_module(source, config.input_path);
    auto t1 = std::chrono::steady_clock::now();
    out.parse_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    for (auto& d : parsed.diagnostics) out.diagnostics.push_back(d);
    if (parsed.fatal) {
        *config.err << "error: " << parsed.fatal_message << "\n";
        return false;
    }
    if (config.baseline_reg2mem) passes::demote_to_memory(parsed.module);

    auto t2 = std::chrono::steady_clock::now();
    translate::TranslationResult translated = translate::translate_module(parsed.module);
    auto t3 = std::chrono::steady_clock::now();
    out.translate_ms = std::chrono::duration<double, std::milli>(t3 - t2).count();
    for (auto& d : translated.diagnostics) out.diagnostics.push_back(d);

    try {
        passes::run_pipeline(translated.graph, translated.phi_records, options_from(config),
                             &out.diagnostics);
    } catch (const std::exception& e) {
        // strict mode promotes malformed control flow to a hard failure
        *config.err << "error: " << e.what() << "\n";
        return false;
    }
    out.graph = std::move(translated.graph);
    out.graph.stats.phase_times_ms["parse"] = out.parse_ms;
    out.graph.stats.phase_times_ms["translate"] = out.translate_ms;
    return true;
}

inline bool write_file(const RunConfig& config, const std::string& path,
                       const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        *config.err << "error: cannot write " << path << "\n";
        return false;
    }
    f << content;
    return true;
}

inline int run_translate(const RunConfig& config, const Prepared& prepared) {
    switch (config.format) {
    case Format::Json: {
        std::string text = exporter::export_json(prepared.graph);
        if (config.out_path.empty()) {
            *config.out << text;
            return 0;
        }
        return write_file(config, config.out_path, text) ? 0 : 2;
    }
    case Format::GraphML: {
        std::string text = exporter::export_graphml(prepared.graph);
        if (config.out_path.empty()) {
            *config.out << text;
            return 0;
        }
        return write_file(config, config.out_path, text) ? 0 : 2;
    }
    case Format::Neo4jCsv: {
        if (config.out_path.empty()) {
            *config.err << "error: --format neo4j-csv requires --out BASE\n";
            return 2;
        }
        auto [nodes, edges] = exporter::export_neo4j_csv(prepared.graph);
        bool ok = write_file(config, config.out_path + "_nodes.csv", nodes) &&
                  write_file(config, config.out_path + "_edges.csv", edges);
        return ok ? 0 : 2;
    }
    }
    return 2;
}

inline int run_stats(const RunConfig& config, const Prepared& prepared) {
    const auto& s = prepared.graph.stats;
    std::ostream& out = *config.out;
    out << "# Functions: " << s.function_count << "\n";
    out << "# Nodes: " << s.node_count << "\n";
    out << "# Edges: " << s.edge_count << "\n";
    out << "# Problem nodes: " << s.problem_node_count << "\n";
    out << "# Nodes by kind:\n";
    for (const auto& [kind, count] : s.nodes_by_kind)
        out << "#   " << kind << ": " << count << "\n";
    out << "# Edges by kind:\n";
    for (const auto& [kind, count] : s.edges_by_kind)
        out << "#   " << kind << ": " << count << "\n";
    out << "# Phase times (ms):\n";
    std::ostringstream times;
    times.setf(std::ios::fixed);
    times.precision(3);
    for (const auto& [phase, ms] : s.phase_times_ms)
        times << "#   " << phase << ": " << ms << "\n";
    out << times.str();
    return 0;
}

inline int run_query(const RunConfig& config, const Prepared& prepared) {
    auto findings = analysis::run_rule(prepared.graph, config.rule);
    if (!findings) {
        *config.err << "error: unknown rule '" << config.rule << "'\n";
        return 2;
    }
    for (const auto& f : *findings) {
        const auto& n = prepared.graph.node(f.node);
        *config.out << f.severity << " [" << f.rule << "] node " << f.node;
        if (n.line > 0) *config.out << " (line " << n.line << ")";
        *config.out << ": " << f.message << "\n";
    }
    *config.out << "# Findings: " << findings->size() << "\n";
    if (config.fail_on_findings && !findings->empty()) return 1;
    return 0;
}

inline int run_compare(const RunConfig& config, const std::string& source) {
    RunConfig phi_config = config;
    phi_config.baseline_reg2mem = false;
    Prepared phi;
    if (!prepare(phi_config, source, phi)) return 2;

    RunConfig mem_config = config;
    mem_config.baseline_reg2mem = true;
    Prepared mem;
    if (!prepare(mem_config, source, mem)) return 2;

    const auto& a = phi.graph.stats;
    const auto& b = mem.graph.stats;
    std::ostream& out = *config.out;
    out << "phi-elimination:  nodes=" << a.node_count << " edges=" << a.edge_count << "\n";
    out << "reg2mem-baseline: nodes=" << b.node_count << " edges=" << b.edge_count << "\n";
    auto pct = [](size_t base, size_t other) {
        if (base == 0) return 0.0;
        return (static_cast<double>(other) - static_cast<double>(base)) * 100.0 /
               static_cast<double>(base);
    };
    std::ostringstream delta;
    delta.setf(std::ios::fixed);
    delta.precision(1);
    delta << "delta: nodes=" << (b.node_count >= a.node_count ? "+" : "")
          << pct(a.node_count, b.node_count) << "% edges="
          << (b.edge_count >= a.edge_count ? "+" : "") << pct(a.edge_count, b.edge_count)
          << "%";
    out << delta.str() << "\n";
    return 0;
}

} // namespace detail

/// Entry point shared by the command-line tool and the tests.
/// Exit codes: 0 success, 1 findings reported under --fail-on-findings,
/// 2 input or usage errors.
inline int run(const RunConfig& config) {
    std::ifstream f(config.input_path, std::ios::binary);
    if (!f) {
        *config.err << "error: cannot open " << config.input_path << "\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << f.rdbuf();
    std::string source = buffer.str();

    if (config.command == Command::Compare) return detail::run_compare(config, source);

    detail::Prepared prepared;
    if (!detail::prepare(config, source, prepared)) return 2;
    for (const auto& d : prepared.diagnostics)
        if (d.severity == Diagnostic::Severity::Error)
            *config.err << "warning: line " << d.line << ": " << d.message << "\n";

    switch (config.command) {
    case Command::Translate: return detail::run_translate(config, prepared);
    case Command::Stats: return detail::run_stats(config, prepared);
    case Command::Query: return detail::run_query(config, prepared);
    case Command::Compare: break;
    }
    return 2;
}

} // namespace cpgir::driver
