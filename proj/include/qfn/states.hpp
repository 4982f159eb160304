#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "qfn/complex_matrix.hpp"
#include "qfn/local_basis.hpp"
#include "qfn/rng.hpp"

namespace qfn {

/// Normalized state vector of n qudits with local dimension d.
/// Site 0 is the most significant digit of the base-d amplitude index.
struct PureState {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

struct DensityMatrix {
    std::size_t n = 0;
    std::size_t d = 0;
    ComplexMatrix matrix;

    std::size_t dim() const { return matrix.dim(); }
};

inline std::size_t pow_sz(std::size_t base, std::size_t exp) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < exp; ++i) p *= base;
    return p;
}

inline DensityMatrix density_matrix(const PureState& psi) {
    DensityMatrix rho{psi.n, psi.d, ComplexMatrix(psi.dim())};
    for (std::size_t i = 0; i < psi.dim(); ++i)
        for (std::size_t j = 0; j < psi.dim(); ++j)
            rho.matrix(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
    return rho;
}

inline cplx overlap(const PureState& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes[i]) * b[i];
    return s;
}

/// |GHZ_n^d> = (1/sqrt(d)) sum_k |k k ... k>.
inline PureState ghz_state(std::size_t n, std::size_t d) {
    if (n < 2 || d < 2) throw std::invalid_argument("ghz_state: need n >= 2, d >= 2");
    PureState psi{n, d, std::vector<cplx>(pow_sz(d, n))};
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    std::size_t diag_stride = 0;  // index of |k...k> is k * (d^{n-1} + ... + 1)
    for (std::size_t s = 0; s < n; ++s) diag_stride = diag_stride * d + 1;
    for (std::size_t k = 0; k < d; ++k) psi.amplitudes[k * diag_stride] = amp;
    return psi;
}

namespace detail {

/// Accumulates `weight` on every distinct permutation of `digits`
/// (a multiset), interpreting the permutation as a base-d ket index.
inline void add_permutations(std::vector<cplx>& amps, std::vector<std::size_t> digits,
                             std::size_t d, double weight) {
    std::sort(digits.begin(), digits.end());
    do {
        std::size_t idx = 0;
        for (auto dig : digits) idx = idx * d + dig;
        amps[idx] += weight;
    } while (std::next_permutation(digits.begin(), digits.end()));
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace detail

/// Qubit Dicke state |D_n^e>: equal superposition of all kets with e
/// excitations.
inline PureState dicke_state(std::size_t n, std::size_t e) {
    if (e > n) throw std::invalid_argument("dicke_state: excitation count out of range");
    PureState psi{n, 2, std::vector<cplx>(pow_sz(2, n))};
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t i = 0; i < e; ++i) digits[i] = 1;
    const double amp = 1.0 / std::sqrt(static_cast<double>(detail::binomial(n, e)));
    detail::add_permutations(psi.amplitudes, digits, 2, amp);
    return psi;
}

/// The family of four-qutrit Dicke states Q_4^k, k = 1..4.
inline PureState qutrit_dicke(std::size_t k) {
    PureState psi{4, 3, std::vector<cplx>(81)};
    auto& a = psi.amplitudes;
    switch (k) {
        case 1:
            detail::add_permutations(a, {0, 0, 0, 1}, 3, 0.5);
            break;
        case 2: {
            const double w = 1.0 / (2.0 * std::sqrt(7.0));
            detail::add_permutations(a, {0, 0, 1, 1}, 3, 2.0 * w);
            detail::add_permutations(a, {0, 0, 0, 2}, 3, w);
            break;
        }
        case 3: {
            const double w = 1.0 / (2.0 * std::sqrt(7.0));
            detail::add_permutations(a, {0, 1, 1, 1}, 3, 2.0 * w);
            detail::add_permutations(a, {0, 0, 1, 2}, 3, w);
            break;
        }
        case 4: {
            const double w = 1.0 / std::sqrt(70.0);
            detail::add_permutations(a, {1, 1, 1, 1}, 3, 4.0 * w);
            detail::add_permutations(a, {0, 1, 1, 2}, 3, 2.0 * w);
            detail::add_permutations(a, {0, 0, 2, 2}, 3, w);
            break;
        }
        default:
            throw std::invalid_argument("qutrit_dicke: family index must be 1..4");
    }
    return psi;
}

enum class AmeId { Ame6Qubit, Ame4Qutrit };

/// Absolutely maximally entangled states: the six-qubit AME state with
/// its 64-entry sign pattern, and the nine-ket four-qutrit AME state.
inline PureState ame_state(AmeId id) {
    if (id == AmeId::Ame6Qubit) {
        static constexpr std::array<int, 64> coeff = {
            1,  0,  0, -1, 0,  1, -1, 0,
            0,  1,  1, 0,  -1, 0, 0,  -1,
            0,  -1, 1, 0,  1,  0, 0,  -1,
            -1, 0,  0, -1, 0,  -1, -1, 0,
            0,  -1, -1, 0, -1, 0, 0,  -1,
            -1, 0,  0, 1,  0,  1, -1, 0,
            -1, 0,  0, -1, 0,  1, 1,  0,
            0,  -1, 1, 0,  -1, 0, 0,  1};
        PureState psi{6, 2, std::vector<cplx>(64)};
        const double norm = 1.0 / (4.0 * std::sqrt(2.0));
        for (std::size_t i = 0; i < 64; ++i) psi.amplitudes[i] = coeff[i] * norm;
        return psi;
    }
    // four-qutrit AME state: nine kets of weight 1/3
    PureState psi{4, 3, std::vector<cplx>(81)};
    static constexpr std::array<std::array<std::size_t, 4>, 9> kets = {{
        {0, 0, 0, 0}, {0, 1, 1, 2}, {0, 2, 2, 1},
        {1, 0, 1, 1}, {1, 1, 2, 0}, {1, 2, 0, 2},
        {2, 0, 2, 2}, {2, 1, 0, 1}, {2, 2, 1, 0}}};
    for (const auto& ket : kets) {
        std::size_t idx = 0;
        for (auto dig : ket) idx = idx * 3 + dig;
        psi.amplitudes[idx] = 1.0 / 3.0;
    }
    return psi;
}

/// Haar-random pure state: normalized vector of i.i.d. standard complex
/// Gaussians. Deterministic for a fixed rng stream.
inline PureState haar_random_state(std::size_t n, std::size_t d, CounterRng& rng) {
    PureState psi{n, d, std::vector<cplx>(pow_sz(d, n))};
    for (auto& a : psi.amplitudes) a = rng.complex_gaussian();
    double s = 0.0;
    for (const auto& a : psi.amplitudes) s += std::norm(a);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : psi.amplitudes) a *= inv;
    return psi;
}

namespace detail {

/// B_s * rho, where B acts on one site of an n-site system.
inline ComplexMatrix left_apply_site(const ComplexMatrix& rho, const ComplexMatrix& local,
                                     std::size_t n, std::size_t site) {
    const std::size_t d = local.dim();
    const std::size_t dim = rho.dim();
    std::size_t right = 1;
    for (std::size_t s = site + 1; s < n; ++s) right *= d;
    ComplexMatrix out(dim);
    for (std::size_t row = 0; row < dim; ++row) {
        const std::size_t i = (row / right) % d;
        const std::size_t base = row - i * right;
        for (std::size_t k = 0; k < d; ++k) {
            const cplx lik = local(i, k);
            if (lik == cplx{}) continue;
            const std::size_t src = base + k * right;
            for (std::size_t col = 0; col < dim; ++col) out(row, col) += lik * rho(src, col);
        }
    }
    return out;
}

}  // namespace detail

/// Correlation tensor T_{i1...in} = Tr(rho H_{i1} x ... x H_{in}), where
/// index 0 stands for the bare identity and indices 1..r address the
/// traceless generators of `basis`. Entries are computed lazily.
class CorrelationTensor {
public:
    CorrelationTensor(DensityMatrix rho, LocalBasis basis)
        : rho_(std::move(rho)), basis_(std::move(basis)) {
        if (rho_.d != basis_.d)
            throw std::invalid_argument("CorrelationTensor: basis local dimension != d");
    }

    std::size_t n() const { return rho_.n; }
    std::size_t d() const { return rho_.d; }
    std::size_t r() const { return basis_.r(); }
    const LocalBasis& basis() const { return basis_; }

    /// idx[s] in {0, ..., r}; 0 is the identity slot.
    double entry(const std::vector<std::size_t>& idx) const {
        if (idx.size() != rho_.n)
            throw std::invalid_argument("CorrelationTensor: index arity != n");
        ComplexMatrix m = rho_.matrix;
        for (std::size_t s = 0; s < idx.size(); ++s) {
            if (idx[s] == 0) continue;
            if (idx[s] > basis_.r())
                throw std::invalid_argument("CorrelationTensor: index out of range");
            m = detail::left_apply_site(m, basis_.generators[idx[s] - 1], rho_.n, s);
        }
        return m.trace().real();
    }

    /// Dense materialization of all (r+1)^n entries, index i1 slowest.
    std::vector<double> dense() const {
        const std::size_t side = basis_.r() + 1;
        const std::size_t total = pow_sz(side, rho_.n);
        std::vector<double> out(total);
        std::vector<std::size_t> idx(rho_.n, 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t rem = flat;
            for (std::size_t s = rho_.n; s-- > 0;) {
                idx[s] = rem % side;
                rem /= side;
            }
            out[flat] = entry(idx);
        }
        return out;
    }

private:
    DensityMatrix rho_;
    LocalBasis basis_;
};

inline CorrelationTensor correlation_tensor(DensityMatrix rho, LocalBasis basis) {
    return CorrelationTensor(std::move(rho), std::move(basis));
}

}  // namespace qfn
