#include "hoselm/extractor.hpp"

#include "hoselm/errors.hpp"

#include <cmath>

namespace hoselm {

void validate(const ExtractorConfig& cfg) {
    if (cfg.nodes < 1 || cfg.neurons < 1) {
        throw InvalidParameter("extractor: node and neuron counts must be >= 1");
    }
    if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) {
        throw InvalidParameter("extractor: lambda must be finite and >= 0");
    }
    if (!(cfg.eps_norm > 0.0 && cfg.eps_norm < 0.5)) {
        throw InvalidParameter("extractor: eps_norm must lie in (0, 0.5)");
    }
}

SubnetNode spawn_node(Eigen::Index inputs, Eigen::Index neurons, Seed seed) {
    if (inputs < 1 || neurons < 1) {
        throw InvalidParameter("spawn_node: input and neuron counts must be >= 1");
    }
    Rng rng(seed);
    SubnetNode node;
    node.weights = rng.uniform_matrix(neurons, inputs, -1.0, 1.0);
    node.bias = rng.uniform(-1.0, 1.0);
    return node;
}

SubspaceFeature project(const SubnetNode& node, const Matrix& x) {
    if (x.rows() != node.inputs()) {
        throw ShapeError("project: input rows " + std::to_string(x.rows()) +
                         " != node inputs " + std::to_string(node.inputs()));
    }
    return {(node.weights * x).array() + node.bias};
}

LsReadout ls_readout(const SubspaceFeature& f, const Matrix& y) {
    if (f.h.cols() != y.cols()) {
        throw ShapeError("ls_readout: feature and targets disagree on sample count");
    }
    LsReadout r;
    r.weights = y * pinv(f.h);
    r.bias = std::sqrt(mse(r.weights * f.h - y));
    return r;
}

Matrix residual(const SubspaceFeature& f, const LsReadout& r, const Matrix& y) {
    if (r.weights.cols() != f.h.rows() || r.weights.rows() != y.rows() ||
        f.h.cols() != y.cols()) {
        throw ShapeError("residual: readout, feature and targets are misaligned");
    }
    return (y - r.weights * f.h).array() - r.bias;
}

Matrix error_feedback(const Matrix& e, const LsReadout& r, const SubspaceFeature& f,
                      double eps_norm) {
    if (r.weights.rows() != e.rows() || r.weights.cols() != f.h.rows() ||
        e.cols() != f.h.cols()) {
        throw ShapeError("error_feedback: residual, readout and feature are misaligned");
    }
    const Matrix pulled = pinv(r.weights) * e;  // neurons x samples
    return normalize_unit(pulled + f.h, eps_norm).values;
}

SubnetNode refine_node(const SubnetNode& node, const Matrix& x, const Matrix& target,
                       double lambda) {
    if (x.rows() != node.inputs() || target.rows() != node.neurons() ||
        target.cols() != x.cols()) {
        throw ShapeError("refine_node: node, inputs and target are misaligned");
    }
    const Matrix ls = target * x.transpose() * pinv(x * x.transpose());
    SubnetNode out;
    out.weights = ls + lambda * (ls - node.weights);
    out.bias = std::sqrt(mse(out.weights * x - target));
    return out;
}

Extraction extract_features(const Matrix& x, const Matrix& y, const ExtractorConfig& cfg) {
    validate(cfg);
    if (x.cols() != y.cols()) {
        throw ShapeError("extract_features: inputs and targets disagree on sample count");
    }
    require_finite(x, "extract_features");
    Extraction out;
    out.nodes.reserve(static_cast<std::size_t>(cfg.nodes));
    out.features.reserve(static_cast<std::size_t>(cfg.nodes));
    for (Eigen::Index c = 0; c < cfg.nodes; ++c) {
        const SubnetNode fresh =
            spawn_node(x.rows(), cfg.neurons, derive_seed(cfg.seed, static_cast<std::uint64_t>(c)));
        const SubspaceFeature h = project(fresh, x);
        const LsReadout r = ls_readout(h, y);
        const Matrix e = residual(h, r, y);
        const Matrix target = error_feedback(e, r, h, cfg.eps_norm);
        SubnetNode refined = refine_node(fresh, x, target, cfg.lambda);
        out.features.push_back(project(refined, x));
        out.nodes.push_back(std::move(refined));
    }
    return out;
}

}  // namespace hoselm
