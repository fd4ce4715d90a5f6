#pragma once

#include "hoselm/extractor.hpp"

#include <span>
#include <string>
#include <string_view>

namespace hoselm {

enum class CombineOp { plus, concat };

std::string_view to_string(CombineOp op) noexcept;
CombineOp parse_combine_op(std::string_view s);

struct CombineSpec {
    CombineOp op = CombineOp::plus;
    double gamma = 1.0;
};

/// Left fold of the binary combination operator over the list.
///   plus:   F1 + gamma F2 + gamma F3 + ...   (equal shapes required)
///   concat: row-wise stack, list order
Matrix combine(std::span<const SubspaceFeature> features, const CombineSpec& spec);

Eigen::Index combined_dim(std::span<const SubspaceFeature> features, const CombineSpec& spec);

}  // namespace hoselm
