#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qfn {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. The universal carrier for
/// states, Hamiltonians and unitaries in this library.
class ComplexMatrix {
public:
    ComplexMatrix() : dim_(0) {}
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
        : dim_(dim), a_(std::move(entries)) {
        if (a_.size() != dim_ * dim_)
            throw std::invalid_argument("ComplexMatrix: entry count != dim^2");
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    std::vector<cplx>& data() { return a_; }
    const std::vector<cplx>& data() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    ComplexMatrix dagger() const {
        ComplexMatrix m(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }

    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        assert(v.size() == dim_);
        std::vector<cplx> w(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
            w[i] = s;
        }
        return w;
    }

    bool is_hermitian(double tol) const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
        return true;
    }

    bool is_unitary(double tol) const {
        ComplexMatrix p = dagger() * (*this);
        p -= identity(dim_);
        return p.frobenius_norm() <= tol * std::sqrt(static_cast<double>(dim_));
    }

    bool is_psd(double tol) const;  // defined in eig.hpp

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    std::size_t dim_;
    std::vector<cplx> a_;
};

inline cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_product: dimension mismatch");
    cplx t = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t += a(i, j) * b(j, i);
    return t;
}

/// Hilbert-Schmidt inner product Tr(A^dag B).
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("hs_inner: dimension mismatch");
    cplx t = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t += std::conj(a(i, j)) * b(i, j);
    return t;
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix c(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    c(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return c;
}

/// Partial trace over the sites NOT listed in `keep`.
/// `dims[s]` is the local dimension of site s (site 0 is the most
/// significant digit of the composite index).
inline ComplexMatrix partial_trace(const ComplexMatrix& rho,
                                   const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (total != rho.dim())
        throw std::invalid_argument("partial_trace: product of dims != dim(rho)");
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
    for (auto k : keep)
        if (k >= dims.size()) throw std::invalid_argument("partial_trace: site index out of range");

    const std::size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (auto k : keep) kept[k] = true;

    std::size_t dim_keep = 1, dim_tr = 1;
    for (std::size_t s = 0; s < n; ++s) (kept[s] ? dim_keep : dim_tr) *= dims[s];

    // strides of each site in the composite index
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t s = n; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    // ordered lists of kept / traced sites (preserving site order)
    std::vector<std::size_t> ksites, tsites;
    for (std::size_t s = 0; s < n; ++s) (kept[s] ? ksites : tsites).push_back(s);

    auto compose = [&](const std::vector<std::size_t>& sites, std::size_t idx) {
        // decode idx in the mixed radix of `sites`, return composite offset
        std::size_t off = 0;
        for (std::size_t p = sites.size(); p-- > 0;) {
            const std::size_t s = sites[p];
            off += (idx % dims[s]) * stride[s];
            idx /= dims[s];
        }
        return off;
    };

    ComplexMatrix out(dim_keep);
    for (std::size_t i = 0; i < dim_keep; ++i) {
        const std::size_t oi = compose(ksites, i);
        for (std::size_t j = 0; j < dim_keep; ++j) {
            const std::size_t oj = compose(ksites, j);
            cplx s = 0.0;
            for (std::size_t t = 0; t < dim_tr; ++t) {
                const std::size_t ot = compose(tsites, t);
                s += rho(oi + ot, oj + ot);
            }
            out(i, j) = s;
        }
    }
    return out;
}

}  // namespace qfn
