#include "hoselm/bench.hpp"

#include "hoselm/errors.hpp"
#include "hoselm/serialize.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace hoselm {

using nlohmann::json;

void validate(const RunConfig& cfg) {
    if (!cfg.split.per_class && !(cfg.split.fraction > 0.0 && cfg.split.fraction < 1.0)) {
        throw InvalidParameter("run config: train fraction must lie in (0, 1)");
    }
    if (cfg.repetitions < 1) throw InvalidParameter("run config: repetitions must be >= 1");
    if (cfg.methods.empty()) throw InvalidParameter("run config: no methods selected");
    validate(cfg.pipeline);
}

void merge_run_config(const json& j, RunConfig& cfg) {
    static const std::set<std::string> known{
        "data",  "groups",          "label_col",    "header",     "synth",
        "train_fraction", "per_class", "stratified", "repetitions", "methods",
        "timing", "seed",           "dataset",      "nodes",      "hidden",
        "lambda", "gamma",          "operator",     "coeff",      "classifier_nodes",
        "mode",  "chunk_size",      "variable_chunks"};
    if (!j.is_object()) throw FormatError("config: top level must be an object");
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) throw FormatError("config: unknown key '" + key + "'");
    }
    try {
        if (j.contains("data")) cfg.data = j["data"].get<std::string>();
        if (j.contains("groups")) cfg.groups = parse_column_ranges(j["groups"].get<std::string>());
        if (j.contains("label_col")) cfg.label_col = j["label_col"].get<int>();
        if (j.contains("header")) cfg.header = j["header"].get<bool>();
        if (j.contains("synth")) {
            const json& s = j["synth"];
            if (s.contains("classes")) cfg.synth.classes = s["classes"].get<int>();
            if (s.contains("per_class")) cfg.synth.per_class = s["per_class"].get<std::size_t>();
            if (s.contains("dim")) cfg.synth.dim = s["dim"].get<Eigen::Index>();
            if (s.contains("spread")) cfg.synth.spread = s["spread"].get<double>();
        }
        if (j.contains("train_fraction")) cfg.split.fraction = j["train_fraction"].get<double>();
        if (j.contains("per_class")) cfg.split.per_class = j["per_class"].get<std::size_t>();
        if (j.contains("stratified")) cfg.split.stratified = j["stratified"].get<bool>();
        if (j.contains("repetitions")) cfg.repetitions = j["repetitions"].get<std::size_t>();
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : j["methods"]) {
                cfg.methods.push_back(parse_train_mode(m.get<std::string>()));
            }
        }
        if (j.contains("timing")) cfg.timing = j["timing"].get<bool>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<Seed>();
        if (j.contains("dataset")) cfg.dataset_name = j["dataset"].get<std::string>();
        merge_config(j, cfg.pipeline);
    } catch (const json::exception& e) {
        throw FormatError(std::string("config: ") + e.what());
    }
}

std::string method_name(TrainMode mode) {
    return mode == TrainMode::batch ? "hierarchical" : "oselm-combined";
}

std::vector<Aggregate> aggregate_runs(const std::vector<RunEntry>& runs) {
    std::vector<Aggregate> out;
    for (const auto& run : runs) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Aggregate& a) { return a.method == run.method; });
        if (it == out.end()) {
            out.push_back({run.method});
            it = out.end() - 1;
        }
        ++it->repetitions;
        it->mean_rate += run.result.mean_per_class_rate;
        it->mean_accuracy += run.result.accuracy;
    }
    for (auto& a : out) {
        const auto n = static_cast<double>(a.repetitions);
        a.mean_rate /= n;
        a.mean_accuracy /= n;
        if (a.repetitions < 2) continue;
        double sr = 0.0;
        double sa = 0.0;
        for (const auto& run : runs) {
            if (run.method != a.method) continue;
            sr += std::pow(run.result.mean_per_class_rate - a.mean_rate, 2);
            sa += std::pow(run.result.accuracy - a.mean_accuracy, 2);
        }
        a.std_rate = std::sqrt(sr / (n - 1.0));
        a.std_accuracy = std::sqrt(sa / (n - 1.0));
    }
    return out;
}

MetricsReport run_benchmark(const RunConfig& cfg) {
    validate(cfg);
    Dataset data;
    MetricsReport report;
    if (cfg.data) {
        data = load_csv(*cfg.data, cfg.groups, cfg.label_col, cfg.header);
        report.dataset = cfg.dataset_name.empty() ? cfg.data->stem().string() : cfg.dataset_name;
    } else {
        data = synth_blobs(cfg.synth.classes, cfg.synth.per_class, cfg.synth.dim,
                           cfg.synth.spread, derive_seed(cfg.seed, 0x5EED));
        report.dataset = cfg.dataset_name.empty() ? "synth" : cfg.dataset_name;
    }
    const int classes = data.classes();

    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        try {
            const Split parts = split(data, cfg.split, derive_seed(cfg.seed, 2 * rep + 1));
            const Matrix t_train = one_hot(parts.train.labels, classes);
            const Matrix t_test = one_hot(parts.test.labels, classes);
            for (TrainMode mode : cfg.methods) {
                PipelineConfig pc = cfg.pipeline;
                pc.mode = mode;
                pc.seed = derive_seed(cfg.seed, 2 * rep + 2);
                const auto start = std::chrono::steady_clock::now();
                const HOselmModel model = fit_model(parts.train.groups, t_train, pc);
                const auto stop = std::chrono::steady_clock::now();
                EvaluationResult result = evaluate(model, parts.test.groups, t_test);
                result.train_seconds = std::chrono::duration<double>(stop - start).count();
                if (!cfg.timing) {
                    result.train_seconds = 0.0;
                    result.infer_seconds = 0.0;
                }
                report.runs.push_back({method_name(mode), rep, std::move(result)});
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("repetition " + std::to_string(rep) + ": " + e.what());
        }
    }
    report.aggregate = aggregate_runs(report.runs);
    return report;
}

ReportFormat parse_report_format(std::string_view s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    throw InvalidParameter("unknown report format '" + std::string(s) + "'");
}

json report_to_json(const MetricsReport& r) {
    json runs = json::array();
    for (const auto& run : r.runs) {
        json recall = json::array();
        for (const auto& v : run.result.recall) recall.push_back(v ? json(*v) : json(nullptr));
        runs.push_back({{"method", run.method},
                        {"repetition", run.repetition},
                        {"mean_per_class_rate", run.result.mean_per_class_rate},
                        {"accuracy", run.result.accuracy},
                        {"train_seconds", run.result.train_seconds},
                        {"infer_seconds", run.result.infer_seconds},
                        {"recall", std::move(recall)},
                        {"absent_classes", run.result.absent_classes},
                        {"confusion", run.result.confusion}});
    }
    json agg = json::array();
    for (const auto& a : r.aggregate) {
        agg.push_back({{"method", a.method},
                       {"repetitions", a.repetitions},
                       {"mean_per_class_rate", a.mean_rate},
                       {"std_per_class_rate", a.std_rate},
                       {"mean_accuracy", a.mean_accuracy},
                       {"std_accuracy", a.std_accuracy}});
    }
    return {{"dataset", r.dataset}, {"runs", std::move(runs)}, {"aggregate", std::move(agg)}};
}

std::string report_to_csv(const MetricsReport& r) {
    std::ostringstream out;
    out << "method,dataset,repetition,mean_per_class_rate,accuracy,train_seconds,infer_seconds\n";
    out << std::fixed;
    for (const auto& run : r.runs) {
        out << run.method << ',' << r.dataset << ',' << run.repetition << ','
            << std::setprecision(9) << run.result.mean_per_class_rate << ','
            << run.result.accuracy << ',' << std::setprecision(6) << run.result.train_seconds
            << ',' << run.result.infer_seconds << '\n';
    }
    return out.str();
}

void emit_report(const MetricsReport& r, const std::filesystem::path& path, ReportFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    if (format == ReportFormat::json) {
        out << report_to_json(r).dump(2) << '\n';
    } else {
        out << report_to_csv(r);
    }
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace hoselm
