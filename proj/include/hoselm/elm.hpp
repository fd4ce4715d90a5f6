#pragma once

#include "hoselm/numeric.hpp"
#include "hoselm/random.hpp"

namespace hoselm {

enum class Activation { sigmoid };

// Random, untrained hidden layer of a single-hidden-layer feedforward net.
struct RandomHiddenLayer {
    Matrix weights;  // hidden x inputs
    Vector bias;     // hidden
    Activation activation = Activation::sigmoid;

    [[nodiscard]] Eigen::Index hidden() const noexcept { return weights.rows(); }
    [[nodiscard]] Eigen::Index inputs() const noexcept { return weights.cols(); }
};

struct OutputWeights {
    Matrix beta;  // hidden x targets
};

/// Weights and biases i.i.d. uniform on [-1, 1], deterministic in the seed.
RandomHiddenLayer init_hidden(Eigen::Index inputs, Eigen::Index hidden, Seed seed);

/// H(j, i) = sigmoid(w_j . x_i + b_j) for X of shape inputs x samples.
Matrix hidden_activations(const RandomHiddenLayer& layer, const Matrix& x);

/// Minimum-norm least-squares readout: beta^T H ~= T, computed as pinv(H^T) T^T.
OutputWeights fit_output(const Matrix& h, const Matrix& t);

Matrix predict(const RandomHiddenLayer& layer, const OutputWeights& w, const Matrix& x);

}  // namespace hoselm
