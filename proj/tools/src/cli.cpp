#include "cellflow/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cellflow/error.hpp"
#include "cellflow/export.hpp"
#include "cellflow/ingest.hpp"
#include "cellflow/pipeline.hpp"
#include "cellflow/smells.hpp"

namespace cellflow::cli {

namespace {

struct Options {
    std::string input;
    std::string output;
    std::string view_format = "dot";
    std::string smells_format = "text";
    std::string export_format;
    std::string level = "global";
    std::string pen_width = "log";
    bool reverse = false;
    bool lenient = false;
    bool fail_on_smell = false;
    bool expand_blocks = false;
    smells::SmellConfig smell_config;
};

/// Thrown for argument values that CLI11 cannot check on its own.
struct UsageError : Error {
    using Error::Error;
};

graph::ViewSelector parse_level(const std::string& text) {
    graph::ViewSelector s;
    if (text == "global") return s;
    auto rest = [&](std::string_view prefix) { return text.substr(prefix.size()); };
    if (text.rfind("worksheet:", 0) == 0) {
        s.level = graph::ViewLevel::Worksheet;
        s.sheet = rest("worksheet:");
        if (!s.sheet.empty()) return s;
    } else if (text.rfind("formula:", 0) == 0) {
        auto body = rest("formula:");
        auto colon = body.find(':');
        if (colon != std::string::npos && colon > 0 && colon + 1 < body.size()) {
            s.level = graph::ViewLevel::Formula;
            s.sheet = body.substr(0, colon);
            s.block = body.substr(colon + 1);
            return s;
        }
    }
    throw UsageError("invalid --level '" + text + "'; expected global, worksheet:<name> or formula:<sheet>:<block>");
}

smells::SmellConfig checked(const smells::SmellConfig& config) {
    try {
        config.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return config;
}

void write(const Options& opts, const std::string& text, std::ostream& out) {
    if (opts.output.empty() || opts.output == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(opts.output, std::ios::binary);
    file << text;
    file.close();
    if (!file) throw IngestError(IngestError::Kind::Io, opts.output, "cannot write output");
}

Analysis analyze_input(const Options& opts, Workbook& workbook) {
    workbook = load_workbook(opts.input);
    AnalysisOptions analysis_options;
    analysis_options.strict = !opts.lenient;
    return analyze(workbook, analysis_options);
}

std::vector<smells::Smell> find_smells(const graph::LeveledGraph& graph, const Workbook& workbook,
                                       const smells::SmellConfig& config) {
    return smells::detect_all(graph::global_view(graph), workbook, config);
}

int cmd_analyze(const Options& opts, std::ostream& out) {
    auto config = checked(opts.smell_config);
    Workbook wb;
    auto a = analyze_input(opts, wb);
    write(opts, exporters::to_json(a.graph, find_smells(a.graph, wb, config)), out);
    return kOk;
}

int cmd_view(const Options& opts, std::ostream& out) {
    auto selector = parse_level(opts.level);
    Workbook wb;
    auto a = analyze_input(opts, wb);
    auto view = graph::project(a.graph, selector);
    if (selector.level == graph::ViewLevel::Global)
        smells::annotate(view, find_smells(a.graph, wb, checked(opts.smell_config)));
    if (opts.view_format == "dgml") {
        write(opts, exporters::to_dgml(view), out);
    } else {
        exporters::DotOptions dot;
        dot.width = opts.pen_width == "linear" ? exporters::PenWidth::Linear : exporters::PenWidth::Log;
        dot.reverse_edges = opts.reverse;
        write(opts, exporters::to_dot(view, dot), out);
    }
    return kOk;
}

int cmd_smells(const Options& opts, std::ostream& out) {
    auto config = checked(opts.smell_config);
    Workbook wb;
    auto a = analyze_input(opts, wb);
    auto found = find_smells(a.graph, wb, config);
    write(opts, opts.smells_format == "json" ? exporters::smells_to_json(found) : exporters::smells_to_text(found), out);
    return opts.fail_on_smell && !found.empty() ? kSmellsFound : kOk;
}

int cmd_export(const Options& opts, std::ostream& out) {
    auto config = checked(opts.smell_config);
    Workbook wb;
    auto a = analyze_input(opts, wb);
    if (opts.export_format == "dgml") {
        exporters::DgmlOptions dgml;
        dgml.collapse_blocks = !opts.expand_blocks;
        write(opts, exporters::to_dgml(a.graph, dgml), out);
    } else if (opts.export_format == "dot") {
        exporters::DotOptions dot;
        dot.width = opts.pen_width == "linear" ? exporters::PenWidth::Linear : exporters::PenWidth::Log;
        dot.reverse_edges = opts.reverse;
        write(opts, exporters::to_dot(a.graph, dot), out);
    } else {
        write(opts, exporters::to_json(a.graph, find_smells(a.graph, wb, config)), out);
    }
    return kOk;
}

void add_common(CLI::App* cmd, Options& opts) {
    cmd->add_option("file", opts.input, "Workbook (.xlsx or fixture JSON)")->required();
    cmd->add_option("-o,--output", opts.output, "Output file (default: stdout)");
    cmd->add_flag("--lenient", opts.lenient, "Report unparsable formulas as warnings instead of failing");
}

void add_thresholds(CLI::App* cmd, Options& opts) {
    cmd->add_option("--heavy-abs", opts.smell_config.heavy_abs_min,
                    "Minimum cross-sheet references for HeavyCoupling")
        ->capture_default_str();
    cmd->add_option("--heavy-rel", opts.smell_config.heavy_rel_min,
                    "Minimum share of all cross-sheet references for HeavyCoupling")
        ->capture_default_str();
    cmd->add_flag("--report-empty-sheets", opts.smell_config.report_empty_sheets,
                  "Report empty worksheets as disconnected");
}

void add_pen(CLI::App* cmd, Options& opts) {
    cmd->add_option("--pen-width", opts.pen_width, "DOT edge width encoding")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
    cmd->add_flag("--reverse", opts.reverse, "Draw DOT edges from dependent to precedent");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Extracts leveled dataflow diagrams and structure smells from spreadsheets", "cellflow"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cellflow 0.1.0");

    auto* analyze_cmd = app.add_subcommand("analyze", "Write the GraphDocument JSON");
    add_common(analyze_cmd, opts);
    add_thresholds(analyze_cmd, opts);

    auto* view_cmd = app.add_subcommand("view", "Write one view as DOT or DGML");
    add_common(view_cmd, opts);
    view_cmd->add_option("--level", opts.level, "global | worksheet:<name> | formula:<sheet>:<block>")
        ->capture_default_str();
    view_cmd->add_option("--format", opts.view_format, "Output format")
        ->check(CLI::IsMember({"dot", "dgml"}))
        ->capture_default_str();
    add_pen(view_cmd, opts);
    add_thresholds(view_cmd, opts);

    auto* smells_cmd = app.add_subcommand("smells", "Report spreadsheet structure smells");
    add_common(smells_cmd, opts);
    smells_cmd->add_option("--format", opts.smells_format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    add_thresholds(smells_cmd, opts);
    smells_cmd->add_flag("--fail-on-smell", opts.fail_on_smell, "Exit with status 3 when any smell is found");

    auto* export_cmd = app.add_subcommand("export", "Write the full leveled graph");
    add_common(export_cmd, opts);
    export_cmd->add_option("--format", opts.export_format, "Output format")
        ->check(CLI::IsMember({"dgml", "dot", "json"}))
        ->required();
    export_cmd->add_flag("--expand-blocks", opts.expand_blocks, "Start DGML block groups expanded");
    add_pen(export_cmd, opts);
    add_thresholds(export_cmd, opts);

    // CLI11 wants argv order reversed when given a vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << "cellflow 0.1.0\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "cellflow: " << e.what() << "\n";
        err << "Run with --help for usage.\n";
        return kUsage;
    }
    try {
        if (analyze_cmd->parsed()) return cmd_analyze(opts, out);
        if (view_cmd->parsed()) return cmd_view(opts, out);
        if (smells_cmd->parsed()) return cmd_smells(opts, out);
        return cmd_export(opts, out);
    } catch (const UsageError& e) {
        err << "cellflow: " << e.what() << "\n";
        return kUsage;
    } catch (const ViewError& e) {
        err << "cellflow: " << opts.input << ": " << e.what() << "\n";
        return kUsage;
    } catch (const IngestError& e) {
        err << "cellflow: " << opts.input << ": " << e.what() << "\n";
        return kInputFailure;
    } catch (const FormulaCellError& e) {
        err << "cellflow: " << opts.input << ": " << e.what() << "\n";
        return kInputFailure;
    } catch (const Error& e) {
        err << "cellflow: " << opts.input << ": " << e.what() << "\n";
        return kInputFailure;
    }
}

} // namespace cellflow::cli
