#pragma once

#include <string>

#include "qfn/eig.hpp"
#include "qfn/ensemble.hpp"
#include "qfn/parallel.hpp"
#include "qfn/states.hpp"

namespace qfn {

/// Pairs (m,l) enter the QFI sum only when lambda_m + lambda_l exceeds
/// this cutoff; matches the PSD clamp scale of the eigensolver.
inline constexpr double kQfiEigenCutoff = 1e-12;

/// F_Q from a precomputed eigendecomposition of rho:
///   F_Q = 2 sum_{m,l} (l_m - l_l)^2 / (l_m + l_l) |<m|H|l>|^2.
inline double qfi_general(const Eigendecomposition& rho_eig, const ComplexMatrix& h) {
    const std::size_t dim = rho_eig.vectors.dim();
    if (h.dim() != dim) throw std::invalid_argument("qfi_general: dimension mismatch");
    const auto& lam = rho_eig.values;
    const auto& v = rho_eig.vectors;

    double f = 0.0;
    std::vector<cplx> w(dim);
    for (std::size_t m = 0; m < dim; ++m) {
        if (lam[m] <= 0.5 * kQfiEigenCutoff) continue;  // pairs of two near-zero modes drop out
        // w = H |m>
        for (std::size_t i = 0; i < dim; ++i) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < dim; ++j) s += h(i, j) * v(j, m);
            w[i] = s;
        }
        for (std::size_t l = 0; l < dim; ++l) {
            const double denom = lam[m] + lam[l];
            if (denom <= kQfiEigenCutoff) continue;
            const double diff = lam[m] - lam[l];
            cplx o = 0.0;
            for (std::size_t i = 0; i < dim; ++i) o += std::conj(v(i, l)) * w[i];
            const double term = 2.0 * diff * diff / denom * std::norm(o);
            // pairs with l outside the support are visited only from this
            // side; their mirror (l,m) carries the same weight
            f += (lam[l] > 0.5 * kQfiEigenCutoff) ? term : 2.0 * term;
        }
    }
    return f;
}

inline double qfi_general(const DensityMatrix& rho, const ComplexMatrix& h) {
    return qfi_general(hermitian_eig(rho.matrix), h);
}

inline double qfi_general(const DensityMatrix& rho, const EmbeddedHamiltonian& h) {
    return qfi_general(rho, h.matrix);
}

/// Pure-state form: F_Q = 4 (<H^2> - <H>^2).
inline double qfi_pure(const PureState& psi, const ComplexMatrix& h) {
    if (h.dim() != psi.dim()) throw std::invalid_argument("qfi_pure: dimension mismatch");
    const std::vector<cplx> w = h.apply(psi.amplitudes);
    double h2 = 0.0;
    cplx h1 = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        h2 += std::norm(w[i]);
        h1 += std::conj(psi.amplitudes[i]) * w[i];
    }
    return 4.0 * (h2 - h1.real() * h1.real());
}

inline double qfi_pure(const PureState& psi, const EmbeddedHamiltonian& h) {
    return qfi_pure(psi, h.matrix);
}

/// Diagonal of the Fisher information matrix over the collective
/// embeddings of the basis generators: Gamma_ii = F_Q(rho, sum_s H_i^(s)).
inline std::vector<double> fisher_matrix_diag(const DensityMatrix& rho,
                                              const LocalBasis& basis) {
    const Eigendecomposition e = hermitian_eig(rho.matrix);
    std::vector<double> diag(basis.r());
    std::vector<double> alpha(basis.r(), 0.0);
    for (std::size_t i = 0; i < basis.r(); ++i) {
        alpha.assign(basis.r(), 0.0);
        alpha[i] = 1.0;
        diag[i] = qfi_general(e, embed_collective(alpha, basis, rho.n).matrix);
    }
    return diag;
}

inline std::vector<double> fisher_matrix_diag(const PureState& psi, const LocalBasis& basis) {
    std::vector<double> diag(basis.r());
    std::vector<double> alpha(basis.r(), 0.0);
    for (std::size_t i = 0; i < basis.r(); ++i) {
        alpha.assign(basis.r(), 0.0);
        alpha[i] = 1.0;
        diag[i] = qfi_pure(psi, embed_collective(alpha, basis, psi.n).matrix);
    }
    return diag;
}

namespace detail {

inline double ensemble_prefactor(const HamiltonianEnsemble& ens) {
    return mean_purity(ens) / ens.basis.c;
}

template <class State>
inline double mean_qfi_collective_impl(const State& state, const LocalBasis& basis,
                                       const HamiltonianEnsemble& ens) {
    const std::vector<double> diag = fisher_matrix_diag(state, basis);
    double s = 0.0;
    for (double x : diag) s += x;
    return ensemble_prefactor(ens) * s / static_cast<double>(diag.size());
}

}  // namespace detail

/// Averaged QFI for the collective channel:
/// (mean_purity / c) * (1/r) * sum_i F_Q(rho, collective H_i).
inline double mean_qfi_collective(const DensityMatrix& rho, const LocalBasis& basis,
                                  const HamiltonianEnsemble& ens) {
    return detail::mean_qfi_collective_impl(rho, basis, ens);
}
inline double mean_qfi_collective(const PureState& psi, const LocalBasis& basis,
                                  const HamiltonianEnsemble& ens) {
    return detail::mean_qfi_collective_impl(psi, basis, ens);
}

/// Averaged QFI for the non-collective channel, in the
/// prefactor-cancelled single-site form:
/// (mean_purity / c) * (1/r) * sum_s sum_i F_Q(rho, H_i at site s).
inline double mean_qfi_noncollective(const DensityMatrix& rho, const LocalBasis& basis,
                                     const HamiltonianEnsemble& ens) {
    const Eigendecomposition e = hermitian_eig(rho.matrix);
    double s = 0.0;
    for (std::size_t site = 0; site < rho.n; ++site)
        for (std::size_t i = 0; i < basis.r(); ++i)
            s += qfi_general(e, single_site_generator(basis, rho.n, site, i).matrix);
    return detail::ensemble_prefactor(ens) * s / static_cast<double>(basis.r());
}
inline double mean_qfi_noncollective(const PureState& psi, const LocalBasis& basis,
                                     const HamiltonianEnsemble& ens) {
    double s = 0.0;
    for (std::size_t site = 0; site < psi.n; ++site)
        for (std::size_t i = 0; i < basis.r(); ++i)
            s += qfi_pure(psi, single_site_generator(basis, psi.n, site, i).matrix);
    return detail::ensemble_prefactor(ens) * s / static_cast<double>(basis.r());
}

/// Closed form of the collective average for pure states, built from
/// correlation-tensor entries of weight <= 2:
/// sum_i F_Q = 4nr/d Tr(H_1^2) + 8 sum_i sum_{s<s'} T_(i@s, i@s')
///             - 4 sum_i (sum_s T_(i@s))^2.
inline double mean_qfi_pure_tensor_collective(const PureState& psi, const LocalBasis& basis,
                                              const HamiltonianEnsemble& ens) {
    const CorrelationTensor t(density_matrix(psi), basis);
    const std::size_t n = psi.n, r = basis.r();
    double sum = 4.0 * static_cast<double>(n * r) / static_cast<double>(basis.d) * basis.c;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t i = 1; i <= r; ++i) {
        double bloch = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            idx.assign(n, 0);
            idx[s] = i;
            bloch += t.entry(idx);
        }
        sum -= 4.0 * bloch * bloch;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t s2 = s + 1; s2 < n; ++s2) {
                idx.assign(n, 0);
                idx[s] = i;
                idx[s2] = i;
                sum += 8.0 * t.entry(idx);
            }
    }
    return detail::ensemble_prefactor(ens) * sum / static_cast<double>(r);
}

/// Closed form of the non-collective average for pure states, built
/// from weight-1 entries only:
/// sum = 4nr/d Tr(H_1^2) - 4 sum_s sum_i T_(i@s)^2.
inline double mean_qfi_pure_tensor_noncollective(const PureState& psi, const LocalBasis& basis,
                                                 const HamiltonianEnsemble& ens) {
    const CorrelationTensor t(density_matrix(psi), basis);
    const std::size_t n = psi.n, r = basis.r();
    double sum = 4.0 * static_cast<double>(n * r) / static_cast<double>(basis.d) * basis.c;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t i = 1; i <= r; ++i) {
            idx.assign(n, 0);
            idx[s] = i;
            const double b = t.entry(idx);
            sum -= 4.0 * b * b;
        }
    return detail::ensemble_prefactor(ens) * sum / static_cast<double>(r);
}

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo oracle for the averaged QFI: sample mean and standard
/// error of qfi_general over ensemble draws embedded per mode.
inline McEstimate mc_mean_qfi(const DensityMatrix& rho, const LocalBasis& basis,
                              const HamiltonianEnsemble& ens, EmbedMode mode,
                              std::size_t samples, std::uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("mc_mean_qfi: need at least 100 samples");
    const Eigendecomposition e = hermitian_eig(rho.matrix);
    std::vector<double> vals(samples);
    parallel_for(samples, [&](std::size_t k) {
        CounterRng rng(seed, k);
        ComplexMatrix h;
        if (mode == EmbedMode::Collective) {
            h = embed_collective(sample(ens, rng), basis, rho.n).matrix;
        } else {
            std::vector<std::vector<double>> alphas(rho.n);
            for (auto& a : alphas) a = sample(ens, rng);
            h = embed_noncollective(alphas, basis, rho.n).matrix;
        }
        vals[k] = qfi_general(e, h);
    });
    McEstimate out;
    out.estimate = pairwise_sum(vals) / static_cast<double>(samples);
    std::vector<double> dev2(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double d = vals[k] - out.estimate;
        dev2[k] = d * d;
    }
    out.std_error = std::sqrt(pairwise_sum(dev2) /
                              (static_cast<double>(samples) * (samples - 1.0)));
    return out;
}

/// Quantum skew information I(rho, H) = -Tr((sqrt(rho) H - H sqrt(rho))^2)
///                                    = 2 Tr(rho H^2) - 2 Tr(sqrt(rho) H sqrt(rho) H).
inline double skew_information(const DensityMatrix& rho, const ComplexMatrix& h) {
    const ComplexMatrix s = psd_sqrt(rho.matrix);
    const ComplexMatrix sh = s * h;
    const double t1 = trace_product(rho.matrix, h * h).real();
    const double t2 = trace_product(sh, sh).real();
    return 2.0 * (t1 - t2);
}

/// Metrological precision bound Delta t >= 1 / sqrt(mean QFI).
inline double estimation_bound(double mean_qfi) {
    if (mean_qfi <= 0.0)
        throw std::domain_error("estimation_bound: mean QFI must be positive");
    return 1.0 / std::sqrt(mean_qfi);
}

/// Analytic mean-QFI record for one (state, basis, ensemble) row.
struct QfiSummary {
    std::string state_id;
    std::string basis_id;
    std::string ensemble_id;
    double mean_qfi_collective = 0.0;
    double mean_qfi_noncollective = 0.0;
    double omega = 0.0;    // 0.5 * sqrt(collective mean QFI)
    double t_star = 0.0;   // pi / sqrt(collective mean QFI)
    std::string provenance;  // analytic | tensor-form | monte-carlo
};

}  // namespace qfn
