#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hoselm/bench.hpp"
#include "hoselm/errors.hpp"
#include "temp_dir.hpp"

#include <fstream>
#include <sstream>

using namespace hoselm;

namespace {

RunConfig quick() {
    RunConfig cfg;
    cfg.synth = {3, 40, 6, 0.25};
    cfg.split.fraction = 0.5;
    cfg.pipeline.neurons = 20;
    cfg.pipeline.chunk_size = 20;
    cfg.seed = 5;
    cfg.timing = false;
    return cfg;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("one repetition gives one entry per method") {
    RunConfig cfg = quick();
    cfg.methods = {TrainMode::batch};
    const MetricsReport r = run_benchmark(cfg);
    CHECK(r.runs.size() == 1);
    CHECK(r.aggregate.size() == 1);
    CHECK(r.dataset == "synth");
    CHECK(r.runs[0].result.mean_per_class_rate >= 0.0);
    CHECK(r.runs[0].result.mean_per_class_rate <= 1.0);
}

TEST_CASE("aggregates are recomputable from the runs") {
    RunConfig cfg = quick();
    cfg.repetitions = 4;
    const MetricsReport r = run_benchmark(cfg);
    REQUIRE(r.runs.size() == 8);
    for (const auto& a : r.aggregate) {
        double sum = 0.0;
        double lo = 1.0;
        double hi = 0.0;
        std::vector<double> rates;
        for (const auto& run : r.runs) {
            if (run.method != a.method) continue;
            sum += run.result.mean_per_class_rate;
            rates.push_back(run.result.mean_per_class_rate);
            lo = std::min(lo, run.result.mean_per_class_rate);
            hi = std::max(hi, run.result.mean_per_class_rate);
        }
        CHECK(a.repetitions == 4);
        CHECK(a.mean_rate == doctest::Approx(sum / 4.0).epsilon(1e-15));
        CHECK(a.mean_rate >= lo);
        CHECK(a.mean_rate <= hi);
        double ss = 0.0;
        for (double v : rates) ss += (v - sum / 4.0) * (v - sum / 4.0);
        CHECK(a.std_rate == doctest::Approx(std::sqrt(ss / 3.0)).epsilon(1e-12));
    }
}

TEST_CASE("fixed seed gives identical reports") {
    TempDir dir;
    const RunConfig cfg = quick();
    emit_report(run_benchmark(cfg), dir / "a.json", ReportFormat::json);
    emit_report(run_benchmark(cfg), dir / "b.json", ReportFormat::json);
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("report formats") {
    TempDir dir;
    RunConfig cfg = quick();
    cfg.repetitions = 3;
    const MetricsReport r = run_benchmark(cfg);

    emit_report(r, dir / "r.json", ReportFormat::json);
    const auto j = nlohmann::json::parse(slurp(dir / "r.json"));
    CHECK(j == report_to_json(r));
    CHECK(j["runs"].size() == 6);
    CHECK(j["runs"][0]["mean_per_class_rate"].get<double>() == r.runs[0].result.mean_per_class_rate);

    emit_report(r, dir / "r.csv", ReportFormat::csv);
    std::ifstream in(dir / "r.csv");
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3 * 2 + 1);
    CHECK(lines[0] ==
          "method,dataset,repetition,mean_per_class_rate,accuracy,train_seconds,infer_seconds");
    // rates carry at least six decimals
    std::stringstream row(lines[1]);
    std::vector<std::string> fields;
    while (std::getline(row, line, ',')) fields.push_back(line);
    REQUIRE(fields.size() == 7);
    CHECK(fields[3].size() - fields[3].find('.') - 1 >= 6);
    CHECK(fields[4].size() - fields[4].find('.') - 1 >= 6);

    CHECK_THROWS_AS(emit_report(r, dir / "no" / "such" / "dir.csv", ReportFormat::csv), IoError);
    CHECK_THROWS_AS(parse_report_format("xml"), InvalidParameter);
}

TEST_CASE("csv input and stratified per-class split") {
    TempDir dir;
    Dataset d = synth_blobs(3, 30, 4, 0.2, 3);
    write_csv(d, dir / "blobs.csv");
    RunConfig cfg = quick();
    cfg.data = dir / "blobs.csv";
    cfg.split.per_class = 10;
    cfg.methods = {TrainMode::sequential};
    const MetricsReport r = run_benchmark(cfg);
    CHECK(r.dataset == "blobs");
    std::size_t tested = 0;
    for (const auto& row : r.runs[0].result.confusion)
        for (auto v : row) tested += v;
    CHECK(tested == 60);
}

TEST_CASE("errors carry the repetition index") {
    RunConfig cfg = quick();
    cfg.pipeline.chunk_size = 1;  // a one-sample boot chunk cannot hold every class
    cfg.methods = {TrainMode::sequential};
    try {
        run_benchmark(cfg);
        FAIL("expected failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).rfind("repetition 0:", 0) == 0);
    }
    cfg = quick();
    cfg.repetitions = 0;
    CHECK_THROWS_AS(run_benchmark(cfg), InvalidParameter);
}

TEST_CASE("run config merge") {
    RunConfig cfg;
    merge_run_config(nlohmann::json::parse(R"({
        "synth": {"classes": 4, "dim": 8},
        "per_class": 12, "repetitions": 2, "methods": ["batch"],
        "hidden": 30, "coeff": 10.0, "timing": false, "seed": 7
    })"),
                     cfg);
    CHECK(cfg.synth.classes == 4);
    CHECK(cfg.synth.dim == 8);
    CHECK(*cfg.split.per_class == 12);
    CHECK(cfg.repetitions == 2);
    CHECK(cfg.methods == std::vector<TrainMode>{TrainMode::batch});
    CHECK(cfg.pipeline.neurons == 30);
    CHECK(cfg.pipeline.c == 10.0);
    CHECK_FALSE(cfg.timing);
    CHECK(cfg.seed == 7);
    CHECK_THROWS_AS(merge_run_config(nlohmann::json{{"bogus", 1}}, cfg), FormatError);
    CHECK_THROWS_AS(merge_run_config(nlohmann::json{{"hidden", "many"}}, cfg), FormatError);
}
