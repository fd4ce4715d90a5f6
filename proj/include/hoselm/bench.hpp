#pragma once

#include "hoselm/dataset.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hoselm {

struct SynthSpec {
    int classes = 3;
    std::size_t per_class = 200;
    Eigen::Index dim = 16;
    double spread = 0.2;
};

struct RunConfig {
    std::optional<std::filesystem::path> data;  // CSV; synthetic blobs when unset
    std::vector<ColumnRange> groups;
    int label_col = -1;
    bool header = false;
    SynthSpec synth;
    SplitSpec split;
    std::size_t repetitions = 1;
    PipelineConfig pipeline;  // mode is overridden per method
    std::vector<TrainMode> methods{TrainMode::batch, TrainMode::sequential};
    // Wall-clock fields are reported as zero when disabled, which makes
    // reports byte-reproducible.
    bool timing = true;
    Seed seed = 0;
    std::string dataset_name;  // defaults to the CSV stem or "synth"
};

void validate(const RunConfig& cfg);

// Reads a JSON config over cfg; unknown keys are rejected.
void merge_run_config(const nlohmann::json& j, RunConfig& cfg);

struct RunEntry {
    std::string method;
    std::size_t repetition = 0;
    EvaluationResult result;
};

struct Aggregate {
    std::string method;
    std::size_t repetitions = 0;
    double mean_rate = 0.0;
    double std_rate = 0.0;  // sample standard deviation, 0 for one repetition
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
};

struct MetricsReport {
    std::string dataset;
    std::vector<RunEntry> runs;
    std::vector<Aggregate> aggregate;
};

std::string method_name(TrainMode mode);

// Recomputes aggregate from runs (method order of first appearance).
std::vector<Aggregate> aggregate_runs(const std::vector<RunEntry>& runs);

MetricsReport run_benchmark(const RunConfig& cfg);

enum class ReportFormat { json, csv };
ReportFormat parse_report_format(std::string_view s);

nlohmann::json report_to_json(const MetricsReport& r);
std::string report_to_csv(const MetricsReport& r);
void emit_report(const MetricsReport& r, const std::filesystem::path& path, ReportFormat format);

}  // namespace hoselm
