#include "hoselm/pipeline.hpp"

#include "hoselm/errors.hpp"

#include <chrono>
#include <cmath>

namespace hoselm {

std::string_view to_string(TrainMode mode) noexcept {
    return mode == TrainMode::batch ? "batch" : "sequential";
}

TrainMode parse_train_mode(std::string_view s) {
    if (s == "batch") return TrainMode::batch;
    if (s == "sequential") return TrainMode::sequential;
    throw InvalidParameter("unknown training mode '" + std::string(s) + "'");
}

void validate(const PipelineConfig& cfg) {
    if (cfg.nodes < 1 || cfg.neurons < 1 || cfg.classifier_nodes < 1 || cfg.chunk_size < 1) {
        throw InvalidParameter("pipeline: all counts must be >= 1");
    }
    if (!(cfg.c > 0.0) || !std::isfinite(cfg.c)) {
        throw InvalidParameter("pipeline: coefficient C must be positive");
    }
    if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) {
        throw InvalidParameter("pipeline: lambda must be finite and >= 0");
    }
    if (!std::isfinite(cfg.gamma)) throw InvalidParameter("pipeline: gamma must be finite");
}

namespace {

Eigen::Index check_groups(std::span<const FeatureGroup> groups) {
    if (groups.empty()) throw InvalidInput("pipeline: no feature groups");
    const Eigen::Index m = groups.front().x.cols();
    for (const auto& g : groups) {
        if (g.x.cols() != m) {
            throw ShapeError("pipeline: group '" + g.name + "' has " +
                             std::to_string(g.x.cols()) + " samples, expected " +
                             std::to_string(m));
        }
    }
    return m;
}

void check_layout(const HOselmModel& m, std::span<const FeatureGroup> groups) {
    check_groups(groups);
    if (groups.size() != m.extractors.size()) {
        throw ShapeError("pipeline: expected " + std::to_string(m.extractors.size()) +
                         " feature groups, got " + std::to_string(groups.size()));
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].x.rows() != m.group_dims[g]) {
            throw ShapeError("pipeline: group " + std::to_string(g) + " has dimension " +
                             std::to_string(groups[g].x.rows()) + ", expected " +
                             std::to_string(m.group_dims[g]));
        }
    }
}

std::vector<FeatureGroup> slice(std::span<const FeatureGroup> groups, Eigen::Index start,
                                Eigen::Index count) {
    std::vector<FeatureGroup> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back({g.x.middleCols(start, count), g.name});
    return out;
}

}  // namespace

std::vector<Eigen::Index> chunk_schedule(Eigen::Index samples, const PipelineConfig& cfg) {
    std::vector<Eigen::Index> sizes;
    if (samples < 1) return sizes;
    Rng rng(derive_seed(cfg.seed, 0xC4A2));
    Eigen::Index pos = 0;
    while (pos < samples) {
        Eigen::Index len = cfg.chunk_size;
        if (cfg.variable_chunks && !sizes.empty()) {
            len = static_cast<Eigen::Index>(rng.integer(1, 2 * cfg.chunk_size - 1));
        }
        len = std::min(len, samples - pos);
        sizes.push_back(len);
        pos += len;
    }
    return sizes;
}

Matrix combined_features(const HOselmModel& m, std::span<const FeatureGroup> groups) {
    check_layout(m, groups);
    std::vector<SubspaceFeature> features;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (const auto& node : m.extractors[g]) features.push_back(project(node, groups[g].x));
    }
    return combine(features, m.combine);
}

HOselmModel fit_model(std::span<const FeatureGroup> groups, const Matrix& t,
                      const PipelineConfig& cfg) {
    validate(cfg);
    const Eigen::Index samples = check_groups(groups);
    if (t.cols() != samples) {
        throw ShapeError("fit_model: targets have " + std::to_string(t.cols()) +
                         " samples, groups have " + std::to_string(samples));
    }
    if (t.rows() < 1) throw ShapeError("fit_model: targets have no classes");

    const std::vector<Eigen::Index> chunks = cfg.mode == TrainMode::sequential
                                                 ? chunk_schedule(samples, cfg)
                                                 : std::vector<Eigen::Index>{samples};
    const Eigen::Index boot = chunks.front();
    const Matrix t_boot = t.leftCols(boot);
    if (cfg.mode == TrainMode::sequential) {
        for (Eigen::Index k = 0; k < t.rows(); ++k) {
            if (t_boot.row(k).isZero(0.0)) {
                throw InvalidInput("fit_model: initial chunk of " + std::to_string(boot) +
                                   " samples contains no sample of class " + std::to_string(k));
            }
        }
    }

    HOselmModel m;
    m.config = cfg;
    m.classes = t.rows();
    m.combine = {cfg.op, cfg.gamma};
    const auto boot_groups = slice(groups, 0, boot);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        ExtractorConfig ec;
        ec.nodes = cfg.nodes;
        ec.neurons = cfg.neurons;
        ec.lambda = cfg.lambda;
        ec.seed = derive_seed(cfg.seed, g);
        m.extractors.push_back(extract_features(boot_groups[g].x, t_boot, ec).nodes);
        m.group_dims.push_back(groups[g].x.rows());
    }

    const Matrix h_boot = combined_features(m, boot_groups);
    if (cfg.mode == TrainMode::batch) {
        m.readout = fit_classifier(h_boot, t_boot, cfg.classifier_nodes, cfg.c);
        return m;
    }
    m.readout = os_boot(h_boot, t_boot, cfg.c);
    Eigen::Index pos = boot;
    for (std::size_t k = 1; k < chunks.size(); ++k) {
        partial_fit(m, slice(groups, pos, chunks[k]), t.middleCols(pos, chunks[k]));
        pos += chunks[k];
    }
    return m;
}

void partial_fit(HOselmModel& m, std::span<const FeatureGroup> chunk, const Matrix& t_chunk) {
    auto* state = std::get_if<OselmState>(&m.readout);
    if (state == nullptr) throw ModeError("partial_fit: model was trained in batch mode");
    const Matrix h = combined_features(m, chunk);
    if (t_chunk.rows() != m.classes || t_chunk.cols() != h.cols()) {
        throw ShapeError("partial_fit: chunk targets are misaligned");
    }
    os_update_inplace(*state, h, t_chunk);
}

Matrix predict_scores(const HOselmModel& m, std::span<const FeatureGroup> groups) {
    const Matrix h = combined_features(m, groups);
    return std::visit(
        [&h](const auto& readout) -> Matrix {
            using R = std::decay_t<decltype(readout)>;
            if constexpr (std::is_same_v<R, ClassifierModel>) {
                return score(readout, h);
            } else {
                return os_predict(readout, h);
            }
        },
        m.readout);
}

std::vector<int> predict_labels(const HOselmModel& m, std::span<const FeatureGroup> groups) {
    return decode_labels(predict_scores(m, groups));
}

EvaluationResult evaluate(const HOselmModel& m, std::span<const FeatureGroup> groups,
                          const Matrix& t) {
    if (t.rows() != m.classes) throw ShapeError("evaluate: target class count mismatch");
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> predicted = predict_labels(m, groups);
    const auto stop = std::chrono::steady_clock::now();
    if (static_cast<Eigen::Index>(predicted.size()) != t.cols()) {
        throw ShapeError("evaluate: target sample count mismatch");
    }
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
        if (t.col(j).sum() != 1.0 || t.col(j).maxCoeff() != 1.0) {
            throw InvalidInput("evaluate: targets must be one-hot (column " + std::to_string(j) +
                               ")");
        }
    }
    const std::vector<int> truth = decode_labels(t);
    EvaluationResult r = compute_metrics(truth, predicted, static_cast<int>(m.classes));
    r.infer_seconds = std::chrono::duration<double>(stop - start).count();
    return r;
}

}  // namespace hoselm
