#pragma once

#include "hoselm/pipeline.hpp"

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace hoselm {

struct Dataset {
    std::vector<FeatureGroup> groups;
    std::vector<int> labels;

    [[nodiscard]] Eigen::Index samples() const noexcept {
        return groups.empty() ? static_cast<Eigen::Index>(labels.size()) : groups.front().x.cols();
    }
    [[nodiscard]] int classes() const noexcept;  // max label + 1
};

// Half-open column range [begin, end) of a CSV row.
struct ColumnRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// "0:8,8:16" -> {[0,8), [8,16)}
std::vector<ColumnRange> parse_column_ranges(std::string_view text);

/// One sample per row, comma separated. An empty range list selects every
/// non-label column as a single group. Label column indices may be negative
/// to count from the end (-1 = last column); without a label column the
/// returned label vector is empty.
Dataset load_csv(const std::filesystem::path& path, std::span<const ColumnRange> ranges,
                 std::optional<int> label_col, bool skip_header = false);

// Writes all groups side by side followed by the label (when present),
// 17 significant digits.
void write_csv(const Dataset& data, const std::filesystem::path& path);

Matrix one_hot(std::span<const int> labels, int classes);

struct SplitSpec {
    double fraction = 0.5;                  // used when per_class is unset
    std::optional<std::size_t> per_class;  // fixed training count per class
    bool stratified = true;
};

struct Split {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_index;  // rows of the source data set
    std::vector<std::size_t> test_index;
};

/// Deterministic per seed. Training samples come out shuffled so that
/// sequential chunks mix classes; test samples keep the source order.
Split split(const Dataset& data, const SplitSpec& spec, Seed seed);

Dataset select(const Dataset& data, std::span<const std::size_t> index);

/// Isotropic Gaussian clusters with standard deviation `spread` around the
/// vertices e_0 .. e_{classes-1} of the unit simplex in R^dim.
Dataset synth_blobs(int classes, std::size_t per_class, Eigen::Index dim, double spread,
                    Seed seed);

}  // namespace hoselm
