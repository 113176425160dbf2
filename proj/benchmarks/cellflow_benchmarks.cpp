#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "cellflow/formula.hpp"
#include "cellflow/ingest.hpp"
#include "cellflow/pipeline.hpp"
#include "cellflow/smells.hpp"

using namespace cellflow;

namespace {

std::filesystem::path fixture(const char* name) { return std::filesystem::path(CELLFLOW_FIXTURE_DIR) / name; }

/// Square block of constants plus a column of running totals per block row.
Workbook synthetic(int sheets, int rows, int cols) {
    std::vector<Worksheet> out;
    for (int s = 0; s < sheets; ++s) {
        Worksheet ws{"S" + std::to_string(s), false, {}};
        for (int r = 1; r <= rows; ++r) {
            for (int c = 1; c <= cols; ++c) ws.cells[{r, c}] = Constant{static_cast<double>(r * c)};
            std::string f = "SUM(" + a1(Coord{r, 1}) + ":" + a1(Coord{r, cols}) + ")";
            if (s > 0) f += "+S" + std::to_string(s - 1) + "!" + a1(Coord{r, cols + 1});
            ws.cells[{r, cols + 1}] = Formula{f, std::nullopt};
        }
        out.push_back(std::move(ws));
    }
    return Workbook("synthetic", std::move(out));
}

void BM_Parse(benchmark::State& state) {
    const std::vector<std::string> formulas = {
        "SUM(A1:A100)*0.6+IF(exam!B2>=5.5,0.5,0)",
        "VLOOKUP($A2,'My Sheet'!$A$1:$D$500,3,FALSE)&\" EUR\"",
        "-2^2+(A1-B1)/C1%",
        "IF(AND(A1>0,B1<>\"\"),ROUND(A1/B1,2),NA())",
    };
    std::size_t bytes = 0;
    for (auto _ : state) {
        for (const auto& f : formulas) {
            benchmark::DoNotOptimize(formula::parse(f));
            bytes += f.size();
        }
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Parse);

void BM_DetectBlocks(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(42);
    Worksheet ws{"S", false, {}};
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (std::bernoulli_distribution(0.3)(rng)) ws.cells[{r, c}] = Constant{1.0};
    for (auto _ : state) benchmark::DoNotOptimize(structure::detect_blocks(ws));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ws.cells.size()));
}
BENCHMARK(BM_DetectBlocks)->Arg(30)->Arg(100)->Arg(300);

void BM_AnalyzeSynthetic(benchmark::State& state) {
    auto wb = synthetic(static_cast<int>(state.range(0)), 200, 10);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(wb));
}
BENCHMARK(BM_AnalyzeSynthetic)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_AnalyzeExam(benchmark::State& state) {
    auto wb = load_fixture(fixture("exam.json"));
    for (auto _ : state) benchmark::DoNotOptimize(analyze(wb));
}
BENCHMARK(BM_AnalyzeExam);

void BM_Smells(benchmark::State& state) {
    auto wb = synthetic(20, 50, 5);
    auto global = graph::global_view(analyze(wb).graph);
    for (auto _ : state) benchmark::DoNotOptimize(smells::detect_all(global, wb, {}));
}
BENCHMARK(BM_Smells);

} // namespace

BENCHMARK_MAIN();
