#include "hoselm/elm.hpp"

#include "hoselm/errors.hpp"

namespace hoselm {

RandomHiddenLayer init_hidden(Eigen::Index inputs, Eigen::Index hidden, Seed seed) {
    if (inputs < 1 || hidden < 1) {
        throw InvalidParameter("init_hidden: input and hidden counts must be >= 1");
    }
    Rng rng(seed);
    RandomHiddenLayer layer;
    layer.weights = rng.uniform_matrix(hidden, inputs, -1.0, 1.0);
    layer.bias = rng.uniform_matrix(hidden, 1, -1.0, 1.0);
    return layer;
}

Matrix hidden_activations(const RandomHiddenLayer& layer, const Matrix& x) {
    if (x.rows() != layer.inputs()) {
        throw ShapeError("hidden_activations: input rows " + std::to_string(x.rows()) +
                         " != layer inputs " + std::to_string(layer.inputs()));
    }
    Matrix pre = layer.weights * x;
    pre.colwise() += layer.bias;
    return sigmoid_map(pre);
}

OutputWeights fit_output(const Matrix& h, const Matrix& t) {
    if (h.cols() != t.cols()) {
        throw ShapeError("fit_output: hidden map and targets disagree on sample count");
    }
    return {pinv(h.transpose()) * t.transpose()};
}

Matrix predict(const RandomHiddenLayer& layer, const OutputWeights& w, const Matrix& x) {
    if (w.beta.rows() != layer.hidden()) {
        throw ShapeError("predict: output weights do not match the hidden layer");
    }
    return w.beta.transpose() * hidden_activations(layer, x);
}

}  // namespace hoselm
