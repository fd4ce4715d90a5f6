#pragma once

#include "hoselm/numeric.hpp"

#include <cstddef>
#include <vector>

namespace hoselm {

// Third-layer node: a sigmoid unit over the combined features whose output is
// mapped back to residual scale through norm_out and weighted by step.
struct ClassifierNode {
    Matrix weights;  // targets x feature dim
    double bias = 0.0;
    double step = 0.0;
    NormParams norm_e;
    NormParams norm_out;
};

struct ClassifierModel {
    std::vector<ClassifierNode> nodes;  // fit order
    double c = 1.0;
    Eigen::Index dim = 0;
    Eigen::Index classes = 0;
};

struct NodeFit {
    ClassifierNode node;
    Matrix residual;  // e_next
};

/// Fits one node against the current residual and deflates it:
///   Z    = logit(u(e_prev))
///   A    = Z H^T (I/C + H H^T)^-1
///   b    = mean(Z - A H)
///   V    = u^-1(sigmoid(A H + b))
///   step = <e_prev, V>_F / |V|_F^2
///   e'   = e_prev - step V
/// A zero residual is a fixed point (step 0). Throws DegenerateNode when V
/// vanishes for a non-zero residual.
NodeFit fit_node(const Matrix& h, const Matrix& e_prev, double c, double eps = kNormEps);

// Activation of one node mapped back to residual scale (unweighted).
Matrix node_output(const ClassifierNode& node, const Matrix& h);

ClassifierModel fit_classifier(const Matrix& h, const Matrix& t, std::size_t node_count,
                               double c);

// Training residual threaded through fit_classifier; exposed for inspection.
struct ClassifierTrace {
    ClassifierModel model;
    std::vector<Matrix> residuals;  // e_0 = T, e_1, ..., one per fitted node
};
ClassifierTrace fit_classifier_traced(const Matrix& h, const Matrix& t, std::size_t node_count,
                                      double c);

Matrix score(const ClassifierModel& m, const Matrix& h);

// Per column argmax; ties resolve to the lowest row index.
std::vector<int> decode_labels(const Matrix& scores);

}  // namespace hoselm
