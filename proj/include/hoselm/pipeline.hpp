#pragma once

#include "hoselm/classifier.hpp"
#include "hoselm/combiner.hpp"
#include "hoselm/extractor.hpp"
#include "hoselm/metrics.hpp"
#include "hoselm/oselm.hpp"

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hoselm {

// One view of the data set: features x samples. All groups of a data set
// share the sample order.
struct FeatureGroup {
    Matrix x;
    std::string name;
};

enum class TrainMode { batch, sequential };

std::string_view to_string(TrainMode mode) noexcept;
TrainMode parse_train_mode(std::string_view s);

struct PipelineConfig {
    Eigen::Index nodes = 3;            // subnetwork nodes per group
    Eigen::Index neurons = 100;        // neurons per subnetwork node
    double lambda = 0.5;
    double gamma = 1.0;
    CombineOp op = CombineOp::plus;
    double c = 100.0;
    std::size_t classifier_nodes = 10;
    TrainMode mode = TrainMode::batch;
    Eigen::Index chunk_size = 60;
    // When set, chunks after the first have sizes drawn uniformly from
    // [1, 2 * chunk_size - 1]. The first (boot) chunk is always chunk_size.
    bool variable_chunks = false;
    Seed seed = 0;
};

void validate(const PipelineConfig& cfg);

struct HOselmModel {
    std::vector<std::vector<SubnetNode>> extractors;  // per group
    std::vector<Eigen::Index> group_dims;
    CombineSpec combine;
    std::variant<ClassifierModel, OselmState> readout;
    PipelineConfig config;
    Eigen::Index classes = 0;

    [[nodiscard]] bool sequential() const noexcept {
        return std::holds_alternative<OselmState>(readout);
    }
};

// Chunk lengths used by fit in sequential mode; sums to samples.
std::vector<Eigen::Index> chunk_schedule(Eigen::Index samples, const PipelineConfig& cfg);

HOselmModel fit_model(std::span<const FeatureGroup> groups, const Matrix& t,
                      const PipelineConfig& cfg);

// Sequential models only. Extractors stay frozen; the chunk is not retained.
void partial_fit(HOselmModel& m, std::span<const FeatureGroup> chunk, const Matrix& t_chunk);

// Frozen extractors followed by the combiner.
Matrix combined_features(const HOselmModel& m, std::span<const FeatureGroup> groups);

Matrix predict_scores(const HOselmModel& m, std::span<const FeatureGroup> groups);
std::vector<int> predict_labels(const HOselmModel& m, std::span<const FeatureGroup> groups);

// t is one-hot (classes x samples). Fills infer_seconds; train_seconds is left
// for the caller.
EvaluationResult evaluate(const HOselmModel& m, std::span<const FeatureGroup> groups,
                          const Matrix& t);

}  // namespace hoselm
