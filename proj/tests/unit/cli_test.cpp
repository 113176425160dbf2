#include <gtest/gtest.h>

#include <sstream>

#include "cellflow/cli.hpp"
#include "cellflow/export.hpp"
#include "paths.hpp"
#include "xlsx_writer.hpp"
#include "cellflow/ingest.hpp"

using namespace cellflow;
using namespace cellflow::testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return fixture_path(name).string(); }

} // namespace

TEST(Cli, AnalyzeWritesTheGraphDocument) {
    auto r = run({"analyze", fx("exam.json")});
    EXPECT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_TRUE(r.err.empty());
    auto doc = exporters::from_json(r.out);
    EXPECT_EQ(doc.smells.size(), 2u);
}

TEST(Cli, ViewLevels) {
    auto global = run({"view", fx("exam.json")});
    EXPECT_EQ(global.code, 0);
    EXPECT_EQ(global.out.rfind("digraph {", 0), 0u);
    EXPECT_NE(global.out.find("\"sheet:exam\" -> \"sheet:labwork\""), std::string::npos);
    EXPECT_NE(global.out.find("\"sheet:labwork\" -> \"sheet:exam\""), std::string::npos);
    EXPECT_NE(global.out.find("\"sheet:lab-osiris\" [label=\"lab-osiris\""), std::string::npos);

    auto ws = run({"view", fx("income.json"), "--level", "worksheet:Income"});
    EXPECT_EQ(ws.code, 0);
    EXPECT_NE(ws.out.find("label=\"net sales\""), std::string::npos);

    auto formula = run({"view", fx("performance.json"), "--level", "formula:Performance:ratios", "--format", "dgml"});
    EXPECT_EQ(formula.code, 0) << formula.err;
    EXPECT_NE(formula.out.find("Title=\"formula:Performance:Performance!A1:B7\""), std::string::npos);

    auto linear = run({"view", fx("exam.json"), "--pen-width", "linear", "--reverse"});
    EXPECT_NE(linear.out.find("\"sheet:statistics\" -> \"sheet:grades\" [penwidth=18.0000, label=\"18\"]"),
              std::string::npos)
        << linear.out;
}

TEST(Cli, ViewSelectionErrorsAreUsageErrors) {
    auto sheet = run({"view", fx("exam.json"), "--level", "worksheet:Nope"});
    EXPECT_EQ(sheet.code, cli::kUsage);
    EXPECT_NE(sheet.err.find("UnknownSheet: Nope"), std::string::npos);
    auto block = run({"view", fx("exam.json"), "--level", "formula:exam:Z1:Z2"});
    EXPECT_EQ(block.code, cli::kUsage);
    EXPECT_NE(block.err.find("UnknownBlock"), std::string::npos);
    EXPECT_EQ(run({"view", fx("exam.json"), "--level", "sheet:exam"}).code, cli::kUsage);
    EXPECT_EQ(run({"view", fx("exam.json"), "--level", "formula:exam"}).code, cli::kUsage);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"analyze"}).code, cli::kUsage);
    EXPECT_EQ(run({"export", fx("exam.json")}).code, cli::kUsage);
    EXPECT_EQ(run({"export", fx("exam.json"), "--format", "svg"}).code, cli::kUsage);
    EXPECT_EQ(run({"smells", fx("exam.json"), "--heavy-abs", "0"}).code, cli::kUsage);
    EXPECT_EQ(run({"smells", fx("exam.json"), "--heavy-rel", "abc"}).code, cli::kUsage);
    auto r = run({"view", fx("exam.json"), "--pen-width", "cubic"});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpAndVersion) {
    auto help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("analyze"), std::string::npos);
    auto version = run({"--version"});
    EXPECT_EQ(version.code, 0);
    EXPECT_EQ(version.out, "cellflow 0.1.0\n");
}

TEST(Cli, InputFailures) {
    auto missing = run({"analyze", fx("nope.json")});
    EXPECT_EQ(missing.code, cli::kInputFailure);
    EXPECT_FALSE(missing.err.empty());
    auto bad = run({"smells", fx("bad-formula.json")});
    EXPECT_EQ(bad.code, cli::kInputFailure);
    EXPECT_NE(bad.err.find("S!B1"), std::string::npos);
    auto lenient = run({"analyze", fx("bad-formula.json"), "--lenient"});
    EXPECT_EQ(lenient.code, 0);
    EXPECT_NE(lenient.out.find("UnparsableFormula"), std::string::npos);
}

TEST(Cli, SmellsFormatsAndFailFlag) {
    auto text = run({"smells", fx("exam.json")});
    EXPECT_EQ(text.code, 0);
    EXPECT_EQ(text.out,
              "InterWorksheetCycle: direct loop between worksheets 'exam' and 'labwork'\n"
              "DisconnectedWorksheet: worksheet 'lab-osiris' is not connected to any other worksheet\n");
    EXPECT_EQ(run({"smells", fx("exam.json"), "--fail-on-smell"}).code, cli::kSmellsFound);
    EXPECT_EQ(run({"smells", fx("income.json"), "--fail-on-smell"}).code, cli::kOk);
    auto json = run({"smells", fx("all-smells.json"), "--format", "json"});
    EXPECT_NE(json.out.find("\"HeavyCoupling\""), std::string::npos);
    auto strict = run({"smells", fx("all-smells.json"), "--heavy-abs", "31"});
    EXPECT_EQ(strict.out.find("HeavyCoupling"), std::string::npos);
}

TEST(Cli, ExportFormatsAndOutputFile) {
    auto dir = std::filesystem::temp_directory_path() / "cellflow_cli_test";
    std::filesystem::create_directories(dir);
    auto target = (dir / "exam.dgml").string();
    auto r = run({"export", fx("exam.json"), "--format", "dgml", "-o", target});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read_file(target).rfind("<?xml", 0), 0u);
    EXPECT_NE(run({"export", fx("income.json"), "--format", "dgml", "--expand-blocks"}).out.find("Category=\"Block\" Group=\"Expanded\""),
              std::string::npos);
    EXPECT_NE(run({"export", fx("income.json"), "--format", "dot"}).out.find("cluster_0_0"), std::string::npos);
    auto unwritable = run({"export", fx("exam.json"), "--format", "json", "-o", (dir / "no/such/dir/x.json").string()});
    EXPECT_EQ(unwritable.code, cli::kInputFailure);
}

TEST(Cli, ReadsXlsx) {
    auto dir = std::filesystem::temp_directory_path() / "cellflow_cli_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "exam.xlsx";
    write_file(path, to_xlsx(load_fixture(fixture_path("exam.json"))));
    auto from_xlsx = run({"smells", path.string()});
    EXPECT_EQ(from_xlsx.code, 0) << from_xlsx.err;
    EXPECT_EQ(from_xlsx.out, run({"smells", fx("exam.json")}).out);
}

TEST(Cli, OutputIsDeterministic) {
    std::vector<std::vector<std::string>> commands = {
        {"analyze"},
        {"view"},
        {"view", "--format", "dgml"},
        {"smells", "--format", "json"},
        {"export", "--format", "dgml"},
        {"export", "--format", "dot"},
        {"export", "--format", "json"},
    };
    for (const char* name : {"exam.json", "income.json", "performance.json", "all-smells.json"}) {
        for (auto cmd : commands) {
            cmd.insert(cmd.begin() + 1, fx(name));
            auto a = run(cmd);
            auto b = run(cmd);
            EXPECT_EQ(a.code, 0) << a.err;
            EXPECT_EQ(a.out, b.out) << name << " " << cmd[0];
        }
    }
}
