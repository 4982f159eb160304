#pragma once

#include <algorithm>
#include <numeric>

#include "qfn/complex_matrix.hpp"

namespace qfn {

/// Spectral decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; columns of `vectors` are the matching orthonormal
/// eigenvectors, so vectors * diag(values) * vectors^dag reconstructs
/// the input.
struct Eigendecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;

    std::vector<cplx> eigenvector(std::size_t k) const {
        std::vector<cplx> v(vectors.dim());
        for (std::size_t i = 0; i < vectors.dim(); ++i) v[i] = vectors(i, k);
        return v;
    }
};

struct NotHermitianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotPsdError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices. Sweeps
/// until the off-diagonal Frobenius norm drops below 1e-13 * ||H||_F
/// (at most 100 sweeps). Intended for the small dimensions (<= 81)
/// used throughout; unconditionally stable.
inline Eigendecomposition hermitian_eig(const ComplexMatrix& h) {
    if (!h.is_hermitian(1e-10 * std::max(1.0, h.frobenius_norm())))
        throw NotHermitianError("hermitian_eig: input not Hermitian");

    const std::size_t n = h.dim();
    ComplexMatrix a = h;
    // symmetrize away the representation noise
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double norm = std::max(a.frobenius_norm(), 1e-300);
    const double stop = 1e-13 * norm;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                // phase that makes the pivot real, then a real Jacobi rotation
                const cplx phase = apq / r;  // a_pq = r * phase
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // column rotation: col_p' = c*col_p - s*conj(phase)*col_q
                //                  col_q' = s*phase*col_p + c*col_q
                const cplx sp = s * phase;
                const cplx spc = s * std::conj(phase);
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - spc * aiq;
                    a(i, q) = sp * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - sp * aqj;
                    a(q, j) = spc * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - spc * viq;
                    v(i, q) = sp * vip + c * viq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    Eigendecomposition e;
    e.values.resize(n);
    e.vectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        e.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, k) = v(i, order[k]);
    }
    return e;
}

/// Rebuild V f(lambda) V^dag from a decomposition and a spectral map.
template <class F>
inline ComplexMatrix spectral_map(const Eigendecomposition& e, F&& f) {
    const std::size_t n = e.vectors.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx fk = f(e.values[k]);
        if (fk == cplx{}) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = e.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += vik * std::conj(e.vectors(j, k));
        }
    }
    return out;
}

/// U = exp(-i t h) for Hermitian h.
inline ComplexMatrix exp_hermitian(const ComplexMatrix& h, double t) {
    const Eigendecomposition e = hermitian_eig(h);
    return spectral_map(e, [t](double lam) { return std::exp(cplx(0.0, -t * lam)); });
}

inline constexpr double kPsdClampTol = 1e-10;

/// Positive square root of a PSD matrix. Eigenvalues in [-tol, 0] are
/// clamped to zero; anything below -tol is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = kPsdClampTol) {
    Eigendecomposition e = hermitian_eig(m);
    for (double& lam : e.values) {
        if (lam < -tol) throw NotPsdError("psd_sqrt: matrix not PSD");
        if (lam < 0.0) lam = 0.0;
    }
    return spectral_map(e, [](double lam) { return std::sqrt(lam); });
}

inline bool ComplexMatrix::is_psd(double tol) const {
    if (!is_hermitian(tol)) return false;
    const Eigendecomposition e = hermitian_eig(*this);
    return e.values.empty() || e.values.back() >= -tol;
}

}  // namespace qfn
