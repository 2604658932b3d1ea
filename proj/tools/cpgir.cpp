// Command-line front-end: translate LLVM-IR into a code property graph and
// export, summarize, query, or compare it.

#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cpgir/cpgir.hpp"

namespace {

/// --passes accepts a comma-separated list, "all", or "none".
std::vector<std::string> parse_pass_list(const std::string& spec, bool& ok) {
    ok = true;
    if (spec == "all") return cpgir::driver::known_passes();
    if (spec == "none") return {};
    std::vector<std::string> out;
    for (const auto& name : cpgir::split(spec, ',')) {
        if (name.empty()) continue;
        bool known = false;
        for (const auto& k : cpgir::driver::known_passes())
            if (k == name) known = true;
        if (!known) {
            ok = false;
            return {};
        }
        out.push_back(name);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LLVM-IR to code property graph translator"};
    app.require_subcommand(1);

    std::string input;
    std::string format = "json";
    std::string out_path;
    std::string passes_spec;
    std::string rule = "weak-cipher";
    bool remove_stubs = false;
    bool baseline = false;
    bool fail_on_findings = false;
    bool strict = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", input, "LLVM-IR file (.ll)")->required();
        cmd->add_option("--passes", passes_spec,
                        "comma-separated pass list, 'all', or 'none'");
        cmd->add_flag("--remove-stubs", remove_stubs, "also remove forwarding stubs");
        cmd->add_flag("--baseline-reg2mem", baseline,
                      "demote SSA values to memory before translating");
        cmd->add_flag("--strict", strict, "abort on malformed phi/goto targets");
    };

    CLI::App* translate = app.add_subcommand("translate", "export the graph");
    add_common(translate);
    translate->add_option("--format", format, "json, graphml, or neo4j-csv")
        ->check(CLI::IsMember({"json", "graphml", "neo4j-csv"}));
    translate->add_option("-o,--out", out_path,
                          "output file (neo4j-csv: base path for _nodes/_edges)");

    CLI::App* stats = app.add_subcommand("stats", "print graph statistics");
    add_common(stats);

    CLI::App* query = app.add_subcommand("query", "run an analysis rule");
    add_common(query);
    query->add_option("--rule", rule, "rule id (weak-cipher)");
    query->add_flag("--fail-on-findings", fail_on_findings,
                    "exit with status 1 when the rule reports findings");

    CLI::App* compare = app.add_subcommand(
        "compare", "contrast the declaration-based pipeline with the reg2mem baseline");
    compare->add_option("input", input, "LLVM-IR file (.ll)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cpgir::driver::RunConfig config;
    config.input_path = input;
    config.out_path = out_path;
    config.remove_stubs = remove_stubs;
    config.baseline_reg2mem = baseline;
    config.rule = rule;
    config.fail_on_findings = fail_on_findings;
    config.strict = strict;

    if (!passes_spec.empty()) {
        bool ok = false;
        config.passes = parse_pass_list(passes_spec, ok);
        if (!ok) {
            std::cerr << "error: unknown pass in --passes '" << passes_spec << "'\n";
            return 2;
        }
    }
    if (format == "graphml") config.format = cpgir::driver::Format::GraphML;
    else if (format == "neo4j-csv") config.format = cpgir::driver::Format::Neo4jCsv;
    else config.format = cpgir::driver::Format::Json;

    if (app.got_subcommand(translate)) config.command = cpgir::driver::Command::Translate;
    else if (app.got_subcommand(stats)) config.command = cpgir::driver::Command::Stats;
    else if (app.got_subcommand(query)) config.command = cpgir::driver::Command::Query;
    else if (app.got_subcommand(compare)) config.command = cpgir::driver::Command::Compare;

    return cpgir::driver::run(config);
}
