#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hoselm/combiner.hpp"
#include "hoselm/errors.hpp"
#include "oracles.hpp"

using namespace hoselm;

namespace {

std::vector<SubspaceFeature> random_features(std::mt19937_64& rng, std::vector<int> rows,
                                             int cols) {
    std::vector<SubspaceFeature> out;
    for (int r : rows) out.push_back({oracle::random_matrix(rng, r, cols)});
    return out;
}

}  // namespace

TEST_CASE("single feature passes through both operators") {
    std::mt19937_64 rng(1);
    const auto f = random_features(rng, {3}, 5);
    CHECK(combine(f, {CombineOp::plus, 0.3}) == f[0].h);
    CHECK(combine(f, {CombineOp::concat, 0.3}) == f[0].h);
}

TEST_CASE("plus operator") {
    std::mt19937_64 rng(2);
    const auto f = random_features(rng, {3, 3, 3}, 4);
    CHECK(combine(std::span(f).first(2), {CombineOp::plus, 1.0}) == f[0].h + f[1].h);
    CHECK(combine(f, {CombineOp::plus, 0.0}) == f[0].h);
    CHECK((combine(f, {CombineOp::plus, 0.5}) - (f[0].h + 0.5 * f[1].h + 0.5 * f[2].h)).norm() <
          1e-14);

    // gamma = 1 is order independent; left fold agrees with pairwise folding
    const std::vector<SubspaceFeature> rev{f[2], f[0], f[1]};
    CHECK((combine(f, {}) - combine(rev, {})).norm() < 1e-14);
    const std::vector<SubspaceFeature> staged{{combine(std::span(f).first(2), {})}, f[2]};
    CHECK(combine(staged, {}) == combine(f, {}));
}

TEST_CASE("concat operator stacks rows in list order") {
    std::mt19937_64 rng(3);
    const auto f = random_features(rng, {3, 4}, 6);
    const Matrix c = combine(f, {CombineOp::concat, 1.0});
    CHECK(c.rows() == 7);
    CHECK(c.topRows(3) == f[0].h);
    CHECK(c.bottomRows(4) == f[1].h);
    const std::vector<SubspaceFeature> rev{f[1], f[0]};
    CHECK(combine(rev, {CombineOp::concat, 1.0}) != c);
}

TEST_CASE("combined_dim agrees with the materialized result") {
    std::mt19937_64 rng(4);
    CHECK(combined_dim(random_features(rng, {5, 5, 5}, 2), {}) == 5);
    CHECK(combined_dim(random_features(rng, {3, 4}, 2), {CombineOp::concat, 1.0}) == 7);
    std::uniform_int_distribution<int> dim(1, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = dim(rng);
        std::vector<int> rows;
        for (int i = 0; i < k; ++i) rows.push_back(dim(rng));
        const auto f = random_features(rng, rows, 3);
        const CombineSpec spec{CombineOp::concat, 1.0};
        CHECK(combined_dim(f, spec) == combine(f, spec).rows());
        CHECK(combine(f, spec).cols() == 3);
        const auto g = random_features(rng, std::vector<int>(static_cast<std::size_t>(k), rows[0]), 3);
        CHECK(combined_dim(g, {}) == combine(g, {}).rows());
    }
}

TEST_CASE("combine errors") {
    std::mt19937_64 rng(5);
    CHECK_THROWS_AS(combine({}, {}), InvalidInput);
    CHECK_THROWS_AS(combined_dim({}, {}), InvalidInput);
    CHECK_THROWS_AS(combine(random_features(rng, {3, 4}, 2), {}), ShapeError);
    std::vector<SubspaceFeature> cols{{Matrix::Ones(2, 3)}, {Matrix::Ones(2, 4)}};
    CHECK_THROWS_AS(combine(cols, {CombineOp::concat, 1.0}), ShapeError);
    CHECK(parse_combine_op("plus") == CombineOp::plus);
    CHECK(parse_combine_op("concat") == CombineOp::concat);
    CHECK_THROWS_AS(parse_combine_op("times"), InvalidParameter);
}
