#include "hoselm/combiner.hpp"

#include "hoselm/errors.hpp"

#include <cmath>

namespace hoselm {

std::string_view to_string(CombineOp op) noexcept {
    return op == CombineOp::plus ? "plus" : "concat";
}

CombineOp parse_combine_op(std::string_view s) {
    if (s == "plus") return CombineOp::plus;
    if (s == "concat") return CombineOp::concat;
    throw InvalidParameter("unknown combination operator '" + std::string(s) + "'");
}

namespace {

void check(std::span<const SubspaceFeature> features, const CombineSpec& spec) {
    if (features.empty()) throw InvalidInput("combine: empty feature list");
    if (!std::isfinite(spec.gamma)) throw InvalidParameter("combine: gamma must be finite");
    const Eigen::Index cols = features.front().h.cols();
    const Eigen::Index rows = features.front().h.rows();
    for (const auto& f : features) {
        if (f.h.cols() != cols) throw ShapeError("combine: features disagree on sample count");
        if (spec.op == CombineOp::plus && f.h.rows() != rows) {
            throw ShapeError("combine: plus requires equal feature shapes");
        }
    }
}

}  // namespace

Matrix combine(std::span<const SubspaceFeature> features, const CombineSpec& spec) {
    check(features, spec);
    if (spec.op == CombineOp::plus) {
        Matrix acc = features.front().h;
        for (std::size_t i = 1; i < features.size(); ++i) acc += spec.gamma * features[i].h;
        return acc;
    }
    Matrix out(combined_dim(features, spec), features.front().h.cols());
    Eigen::Index row = 0;
    for (const auto& f : features) {
        out.middleRows(row, f.h.rows()) = f.h;
        row += f.h.rows();
    }
    return out;
}

Eigen::Index combined_dim(std::span<const SubspaceFeature> features, const CombineSpec& spec) {
    check(features, spec);
    if (spec.op == CombineOp::plus) return features.front().h.rows();
    Eigen::Index rows = 0;
    for (const auto& f : features) rows += f.h.rows();
    return rows;
}

}  // namespace hoselm
