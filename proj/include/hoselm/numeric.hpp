#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace hoselm {

// Samples are stored as columns throughout the library: a data matrix is
// features x samples, a hidden map is neurons x samples.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kLogitClip = 1e-7;
inline constexpr double kNormEps = 1e-4;

// Parameters of the affine map u: [lo, hi] -> [eps, 1].
struct NormParams {
    double lo = 0.0;
    double hi = 0.0;
    double eps = kNormEps;

    [[nodiscard]] bool degenerate() const noexcept { return !(hi > lo); }
};

struct Normalized {
    Matrix values;
    NormParams params;
};

// Throws ShapeError if the matrix is empty, InvalidInput if it holds NaN/Inf.
void require_finite(const Matrix& m, std::string_view what);
void require_nonempty(const Matrix& m, std::string_view what);

/// Moore-Penrose pseudoinverse via SVD. Singular values <= rcond * sigma_max
/// are treated as zero; a negative rcond selects machine epsilon times
/// max(rows, cols).
Matrix pinv(const Matrix& a, double rcond = -1.0);

/// (I / c + G)^-1 for square G and c > 0.
Matrix ridge_inverse(const Matrix& gram, double c);

double mse(const Matrix& r);

// Elementwise logistic function; results stay strictly inside (0, 1).
Matrix sigmoid_map(const Matrix& x);

// Elementwise -log(1/x - 1) after clipping x into [clip_eps, 1 - clip_eps].
Matrix logit_map(const Matrix& x, double clip_eps = kLogitClip);

/// Matrix-wide affine normalization into [eps, 1]. A constant matrix maps to
/// all ones and yields degenerate params.
Normalized normalize_unit(const Matrix& x, double eps = kNormEps);

/// Inverse of normalize_unit. Degenerate params send every entry to lo.
Matrix denormalize_unit(const Matrix& y, const NormParams& p);

}  // namespace hoselm
