#include "hoselm/metrics.hpp"

#include "hoselm/errors.hpp"

#include <string>

namespace hoselm {

EvaluationResult compute_metrics(std::span<const int> truth, std::span<const int> predicted,
                                 int classes) {
    if (truth.size() != predicted.size()) {
        throw ShapeError("compute_metrics: label vectors differ in length");
    }
    if (classes < 1) throw InvalidParameter("compute_metrics: class count must be >= 1");
    const auto k = static_cast<std::size_t>(classes);
    EvaluationResult r;
    r.confusion.assign(k, std::vector<std::size_t>(k, 0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = truth[i];
        const int p = predicted[i];
        if (t < 0 || t >= classes || p < 0 || p >= classes) {
            throw InvalidInput("compute_metrics: label out of range at index " + std::to_string(i));
        }
        ++r.confusion[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
        if (t == p) ++correct;
    }
    r.recall.resize(k);
    double sum = 0.0;
    std::size_t present = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t total = 0;
        for (std::size_t v : r.confusion[c]) total += v;
        if (total == 0) {
            r.absent_classes.push_back(static_cast<int>(c));
            continue;
        }
        const double rate = static_cast<double>(r.confusion[c][c]) / static_cast<double>(total);
        r.recall[c] = rate;
        sum += rate;
        ++present;
    }
    r.mean_per_class_rate = present > 0 ? sum / static_cast<double>(present) : 0.0;
    r.accuracy = truth.empty() ? 0.0
                               : static_cast<double>(correct) / static_cast<double>(truth.size());
    return r;
}

}  // namespace hoselm
