#pragma once

#include "hoselm/numeric.hpp"

#include <cstdint>
#include <random>

namespace hoselm {

using Seed = std::uint64_t;

// Mixes a base seed with a stream index so that sibling generators
// (per node, per repetition) are decorrelated yet reproducible.
Seed derive_seed(Seed base, std::uint64_t stream) noexcept;

class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    double normal(double mean, double stddev);
    // Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi);

    Matrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, double lo, double hi);

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace hoselm
