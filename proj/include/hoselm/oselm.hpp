#pragma once

#include "hoselm/numeric.hpp"

#include <cstddef>

namespace hoselm {

// Recursive least-squares readout over a fixed hidden map. Chunks are folded
// into the state and not retained.
struct OselmState {
    Matrix p;     // hidden x hidden inverse-correlation accumulator
    Matrix beta;  // hidden x targets
    std::size_t seen = 0;
    double c = 1.0;

    [[nodiscard]] Eigen::Index hidden() const noexcept { return beta.rows(); }
    [[nodiscard]] Eigen::Index targets() const noexcept { return beta.cols(); }
};

/// P = (I/c + H0 H0^T)^-1, beta = P H0 T0^T.
OselmState os_boot(const Matrix& h0, const Matrix& t0, double c);

/// Woodbury/RLS step:
///   P'    = P - P Hk (I + Hk^T P Hk)^-1 Hk^T P
///   beta' = beta + P' Hk (Tk^T - Hk^T beta)
/// P' is resymmetrized afterwards.
OselmState os_update(const OselmState& s, const Matrix& hk, const Matrix& tk);

// In-place variant used by the pipeline to avoid copying P on every chunk.
void os_update_inplace(OselmState& s, const Matrix& hk, const Matrix& tk);

Matrix os_predict(const OselmState& s, const Matrix& h);

}  // namespace hoselm
