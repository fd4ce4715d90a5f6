#include "hoselm/oselm.hpp"

#include "hoselm/errors.hpp"

namespace hoselm {

OselmState os_boot(const Matrix& h0, const Matrix& t0, double c) {
    if (h0.cols() < 1 || h0.rows() < 1) throw ShapeError("os_boot: empty initial block");
    if (h0.cols() != t0.cols()) {
        throw ShapeError("os_boot: hidden map and targets disagree on sample count");
    }
    if (!(c > 0.0)) throw InvalidParameter("os_boot: coefficient must be positive");
    OselmState s;
    s.p = ridge_inverse(h0 * h0.transpose(), c);
    s.p = 0.5 * (s.p + s.p.transpose());
    s.beta = s.p * (h0 * t0.transpose());
    s.seen = static_cast<std::size_t>(h0.cols());
    s.c = c;
    return s;
}

void os_update_inplace(OselmState& s, const Matrix& hk, const Matrix& tk) {
    if (hk.cols() < 1) throw ShapeError("os_update: empty chunk");
    if (hk.rows() != s.hidden()) throw ShapeError("os_update: chunk hidden size mismatch");
    if (tk.rows() != s.targets() || tk.cols() != hk.cols()) {
        throw ShapeError("os_update: chunk target shape mismatch");
    }
    const Matrix ph = s.p * hk;  // L x Mk
    Matrix inner = hk.transpose() * ph;
    inner.diagonal().array() += 1.0;
    const Matrix gain = inner.ldlt().solve(ph.transpose());  // Mk x L
    s.p.noalias() -= ph * gain;
    s.p = 0.5 * (s.p + s.p.transpose());
    const Matrix innovation = tk.transpose() - hk.transpose() * s.beta;
    s.beta.noalias() += s.p * hk * innovation;
    s.seen += static_cast<std::size_t>(hk.cols());
}

OselmState os_update(const OselmState& s, const Matrix& hk, const Matrix& tk) {
    OselmState next = s;
    os_update_inplace(next, hk, tk);
    return next;
}

Matrix os_predict(const OselmState& s, const Matrix& h) {
    if (h.rows() != s.hidden()) throw ShapeError("os_predict: hidden size mismatch");
    return s.beta.transpose() * h;
}

}  // namespace hoselm
