#include "hoselm/numeric.hpp"

#include "hoselm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hoselm {

void require_nonempty(const Matrix& m, std::string_view what) {
    if (m.size() == 0) throw ShapeError(std::string(what) + ": empty matrix");
}

void require_finite(const Matrix& m, std::string_view what) {
    require_nonempty(m, what);
    if (!m.allFinite()) throw InvalidInput(std::string(what) + ": non-finite entry");
}

Matrix pinv(const Matrix& a, double rcond) {
    require_finite(a, "pinv");
    if (rcond < 0.0) {
        rcond = std::numeric_limits<double>::epsilon() *
                static_cast<double>(std::max(a.rows(), a.cols()));
    }
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? rcond * sigma(0) : 0.0;
    Vector inv = Vector::Zero(sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff) inv(i) = 1.0 / sigma(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix ridge_inverse(const Matrix& gram, double c) {
    if (gram.rows() != gram.cols() || gram.size() == 0) {
        throw ShapeError("ridge_inverse: Gram matrix must be square and non-empty");
    }
    if (!(c > 0.0)) throw InvalidParameter("ridge_inverse: coefficient must be positive");
    Matrix system = gram;
    system.diagonal().array() += 1.0 / c;
    const Matrix id = Matrix::Identity(gram.rows(), gram.cols());
    Eigen::LLT<Matrix> llt(system);
    if (llt.info() == Eigen::Success) return llt.solve(id);
    // Not positive definite (G asymmetric or indefinite): fall back to LU.
    return system.partialPivLu().solve(id);
}

double mse(const Matrix& r) {
    require_nonempty(r, "mse");
    return r.squaredNorm() / static_cast<double>(r.size());
}

Matrix sigmoid_map(const Matrix& x) {
    const double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return x.unaryExpr([lo, hi](double v) {
        double s;
        if (v >= 0.0) {
            s = 1.0 / (1.0 + std::exp(-v));
        } else {
            const double z = std::exp(v);
            s = z / (1.0 + z);
        }
        return std::clamp(s, lo, hi);
    });
}

Matrix logit_map(const Matrix& x, double clip_eps) {
    if (!(clip_eps > 0.0 && clip_eps < 0.5)) {
        throw InvalidParameter("logit_map: clip_eps must lie in (0, 0.5)");
    }
    return x.unaryExpr([clip_eps](double v) {
        const double c = std::clamp(v, clip_eps, 1.0 - clip_eps);
        return -std::log(1.0 / c - 1.0);
    });
}

Normalized normalize_unit(const Matrix& x, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw InvalidParameter("normalize_unit: eps must lie in (0, 0.5)");
    }
    require_nonempty(x, "normalize_unit");
    NormParams p{x.minCoeff(), x.maxCoeff(), eps};
    if (p.degenerate()) {
        p.hi = p.lo;
        return {Matrix::Ones(x.rows(), x.cols()), p};
    }
    const double scale = (1.0 - eps) / (p.hi - p.lo);
    Matrix y = ((x.array() - p.lo) * scale + eps).matrix();
    // Rounding can push the maximum a hair past 1.
    y = y.cwiseMin(1.0).cwiseMax(eps);
    return {std::move(y), p};
}

Matrix denormalize_unit(const Matrix& y, const NormParams& p) {
    if (p.degenerate()) return Matrix::Constant(y.rows(), y.cols(), p.lo);
    const double scale = (p.hi - p.lo) / (1.0 - p.eps);
    return ((y.array() - p.eps) * scale + p.lo).matrix();
}

}  // namespace hoselm
