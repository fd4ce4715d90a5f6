#pragma once

#include "hoselm/numeric.hpp"
#include "hoselm/random.hpp"

#include <vector>

namespace hoselm {

// One first-layer subnetwork node: a linear projection plus a scalar bias.
struct SubnetNode {
    Matrix weights;  // neurons x inputs
    double bias = 0.0;

    [[nodiscard]] Eigen::Index neurons() const noexcept { return weights.rows(); }
    [[nodiscard]] Eigen::Index inputs() const noexcept { return weights.cols(); }
};

// Output of a subnetwork node over a sample set (neurons x samples).
struct SubspaceFeature {
    Matrix h;
};

// Least-squares readout from a subspace feature to the targets. The bias is
// the RMS of the readout's fit error and is therefore non-negative.
struct LsReadout {
    Matrix weights;  // targets x neurons
    double bias = 0.0;
};

struct ExtractorConfig {
    Eigen::Index nodes = 3;     // L
    Eigen::Index neurons = 100; // d
    double lambda = 0.5;
    double eps_norm = kNormEps;
    Seed seed = 0;
};

void validate(const ExtractorConfig& cfg);

SubnetNode spawn_node(Eigen::Index inputs, Eigen::Index neurons, Seed seed);

// h = A X + b, no activation.
SubspaceFeature project(const SubnetNode& node, const Matrix& x);

LsReadout ls_readout(const SubspaceFeature& f, const Matrix& y);

// e = Y - (A_h h + b_h)
Matrix residual(const SubspaceFeature& f, const LsReadout& r, const Matrix& y);

/// Pulls the residual back into feature space through pinv(A_h), adds the
/// current feature, and normalizes the sum into (0, 1].
Matrix error_feedback(const Matrix& e, const LsReadout& r, const SubspaceFeature& f,
                      double eps_norm = kNormEps);

/// Refits the projection to the feedback target by least squares and damps
/// the step with lambda: A' = A_ls + lambda (A_ls - A). The new bias is the
/// RMS of A' X - target.
SubnetNode refine_node(const SubnetNode& node, const Matrix& x, const Matrix& target,
                       double lambda);

struct Extraction {
    std::vector<SubnetNode> nodes;
    std::vector<SubspaceFeature> features;
};

// Spawns cfg.nodes independent nodes, refines each once and returns the
// refined nodes together with their features on X.
Extraction extract_features(const Matrix& x, const Matrix& y, const ExtractorConfig& cfg);

}  // namespace hoselm
