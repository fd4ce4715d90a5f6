#include "hoselm/classifier.hpp"

#include "hoselm/errors.hpp"

namespace hoselm {

Matrix node_output(const ClassifierNode& node, const Matrix& h) {
    if (h.rows() != node.weights.cols()) {
        throw ShapeError("classifier node: feature dim " + std::to_string(h.rows()) +
                         " != node dim " + std::to_string(node.weights.cols()));
    }
    const Matrix pre = (node.weights * h).array() + node.bias;
    return denormalize_unit(sigmoid_map(pre), node.norm_out);
}

NodeFit fit_node(const Matrix& h, const Matrix& e_prev, double c, double eps) {
    if (h.cols() != e_prev.cols()) {
        throw ShapeError("fit_node: features and residual disagree on sample count");
    }
    if (!(c > 0.0)) throw InvalidParameter("fit_node: coefficient must be positive");
    require_finite(h, "fit_node");

    const Normalized ue = normalize_unit(e_prev, eps);
    const Matrix z = logit_map(ue.values);

    ClassifierNode node;
    node.weights = z * h.transpose() * ridge_inverse(h * h.transpose(), c);
    node.bias = (z - node.weights * h).mean();
    node.norm_e = ue.params;
    node.norm_out = ue.params;

    if (e_prev.isZero(0.0)) {
        node.step = 0.0;
        return {std::move(node), e_prev};
    }

    const Matrix v = node_output(node, h);
    const double vv = v.squaredNorm();
    if (!(vv > 0.0)) throw DegenerateNode("fit_node: node activation vanished");
    node.step = e_prev.cwiseProduct(v).sum() / vv;
    Matrix next = e_prev - node.step * v;
    return {std::move(node), std::move(next)};
}

ClassifierTrace fit_classifier_traced(const Matrix& h, const Matrix& t, std::size_t node_count,
                                      double c) {
    if (node_count < 1) throw InvalidParameter("fit_classifier: node count must be >= 1");
    if (!(c > 0.0)) throw InvalidParameter("fit_classifier: coefficient must be positive");
    if (h.cols() != t.cols()) {
        throw ShapeError("fit_classifier: features and targets disagree on sample count");
    }
    ClassifierTrace trace;
    trace.model.c = c;
    trace.model.dim = h.rows();
    trace.model.classes = t.rows();
    trace.residuals.push_back(t);
    while (trace.model.nodes.size() < node_count) {
        NodeFit fit;
        try {
            fit = fit_node(h, trace.residuals.back(), c);
        } catch (const DegenerateNode&) {
            // The layer is deterministic: a retry would see the same residual.
            break;
        }
        trace.model.nodes.push_back(std::move(fit.node));
        trace.residuals.push_back(std::move(fit.residual));
    }
    return trace;
}

ClassifierModel fit_classifier(const Matrix& h, const Matrix& t, std::size_t node_count,
                               double c) {
    return fit_classifier_traced(h, t, node_count, c).model;
}

Matrix score(const ClassifierModel& m, const Matrix& h) {
    if (h.rows() != m.dim) throw ShapeError("score: feature dim mismatch");
    Matrix s = Matrix::Zero(m.classes, h.cols());
    for (const auto& node : m.nodes) s += node.step * node_output(node, h);
    return s;
}

std::vector<int> decode_labels(const Matrix& scores) {
    std::vector<int> labels(static_cast<std::size_t>(scores.cols()), 0);
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < scores.rows(); ++i) {
            if (scores(i, j) > scores(best, j)) best = i;
        }
        labels[static_cast<std::size_t>(j)] = static_cast<int>(best);
    }
    return labels;
}

}  // namespace hoselm
