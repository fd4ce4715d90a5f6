#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hoselm {

struct EvaluationResult {
    // confusion[truth][predicted]
    std::vector<std::vector<std::size_t>> confusion;
    // Recall per class; empty for classes absent from the ground truth.
    std::vector<std::optional<double>> recall;
    std::vector<int> absent_classes;
    double mean_per_class_rate = 0.0;  // unweighted mean over present classes
    double accuracy = 0.0;
    double train_seconds = 0.0;
    double infer_seconds = 0.0;
};

EvaluationResult compute_metrics(std::span<const int> truth, std::span<const int> predicted,
                                 int classes);

}  // namespace hoselm
