#include "hoselm/random.hpp"

namespace hoselm {

Seed derive_seed(Seed base, std::uint64_t stream) noexcept {
    // splitmix64 finalizer over the combined state
    Seed z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal(double mean, double stddev) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

Matrix Rng::uniform_matrix(Eigen::Index rows, Eigen::Index cols, double lo, double hi) {
    Matrix m(rows, cols);
    // Fill row-major so the draw order does not depend on Eigen's storage.
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
}

}  // namespace hoselm
