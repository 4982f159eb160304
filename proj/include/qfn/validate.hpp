#pragma once

#include <functional>

#include <json.hpp>

#include "qfn/channels.hpp"
#include "qfn/qfi.hpp"
#include "qfn/table1.hpp"

namespace qfn {

struct CheckResult {
    std::string group;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng) {
    ComplexMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx z = 0.5 * rng.complex_gaussian();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

inline DensityMatrix random_density_matrix(std::size_t n, std::size_t d, CounterRng& rng) {
    const std::size_t dim = pow_sz(d, n);
    ComplexMatrix g(dim);
    for (auto& x : g.data()) x = rng.complex_gaussian();
    ComplexMatrix rho = g * g.dagger();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix{n, d, std::move(rho)};
}

/// Two-sided Kolmogorov-Smirnov p-value (asymptotic).
inline double ks_p_value(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        dmax = std::max(dmax, std::abs(f - static_cast<double>(i) / n));
        dmax = std::max(dmax, std::abs(static_cast<double>(i + 1) / n - f));
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * dmax;
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        p += sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
        sign = -sign;
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace detail

/// Linear-algebra kernel invariants: eigendecomposition reconstruction
/// and orthonormality, unitarity of the Hermitian exponential.
inline CheckResult check_linalg(std::uint64_t seed) {
    CounterRng rng(seed, 1);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t dim = 2 + (trial % 3) * 3;  // 2, 5, 8
        const ComplexMatrix h = detail::random_hermitian(dim, rng);
        const Eigendecomposition e = hermitian_eig(h);
        const ComplexMatrix rec =
            spectral_map(e, [](double lam) { return cplx(lam, 0.0); });
        worst = std::max(worst, (rec - h).frobenius_norm() / h.frobenius_norm());
        ComplexMatrix orth = e.vectors.dagger() * e.vectors;
        orth -= ComplexMatrix::identity(dim);
        worst = std::max(worst, orth.frobenius_norm());

        const ComplexMatrix u = exp_hermitian(h, 1.0);
        ComplexMatrix uu = u.dagger() * u;
        uu -= ComplexMatrix::identity(dim);
        worst = std::max(worst, uu.frobenius_norm());
        ComplexMatrix inv = exp_hermitian(h, 1.0) * exp_hermitian(h, -1.0);
        inv -= ComplexMatrix::identity(dim);
        worst = std::max(worst, inv.frobenius_norm());
    }
    return {"linalg", worst <= 1e-10, "max residual " + std::to_string(worst)};
}

/// Channel output stays Hermitian with unit trace.
inline CheckResult check_trace_preservation(std::uint64_t seed) {
    CounterRng rng(seed, 2);
    const DensityMatrix rho = detail::random_density_matrix(2, 2, rng);
    ChannelSpec spec;
    spec.mode = ChannelMode::Collective;
    spec.ensemble = HamiltonianEnsemble(EnsembleKind::SphereUniform, pauli_basis());
    spec.t = 0.7;
    spec.samples = 500;
    spec.seed = seed + 11;
    const DensityMatrix out = apply_channel(rho, spec);
    const double trace_err = std::abs(out.matrix.trace().real() - 1.0);
    const bool herm = out.matrix.is_hermitian(1e-12);
    return {"trace_preservation", trace_err <= 1e-12 && herm,
            "trace err " + std::to_string(trace_err)};
}

/// F_Q(U rho U^dag, H) = F_Q(rho, U^dag H U).
inline CheckResult check_qfi_invariance(std::uint64_t seed) {
    CounterRng rng(seed, 3);
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t dim = 4;
        const DensityMatrix rho = detail::random_density_matrix(2, 2, rng);
        const ComplexMatrix h = detail::random_hermitian(dim, rng);
        const ComplexMatrix u = haar_random_unitary(dim, rng);
        DensityMatrix rot{2, 2, u * rho.matrix * u.dagger()};
        const double lhs = qfi_general(rot, h);
        const double rhs = qfi_general(rho, u.dagger() * h * u);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return {"qfi_unitary_invariance", worst <= 1e-8, "max deviation " + std::to_string(worst)};
}

/// MC check of the integral identity
/// int Tr(H_k H_i) Tr(H_k H_j) dk = delta_ij (c/r) E[Tr H^2],
/// for every ensemble kind.
inline CheckResult check_lemma1(std::uint64_t seed, std::size_t samples = 20000) {
    struct Case {
        HamiltonianEnsemble ens;
        std::string label;
    };
    std::vector<Case> cases;
    cases.push_back({HamiltonianEnsemble(EnsembleKind::SphereUniform, pauli_basis()), "sphere/pauli"});
    cases.push_back({HamiltonianEnsemble(EnsembleKind::SphereUniform, spin_basis(3)), "sphere/spin3"});
    cases.push_back({HamiltonianEnsemble(EnsembleKind::GUE, gellmann_basis(3)), "gue/gellmann3"});
    cases.push_back({HamiltonianEnsemble(EnsembleKind::GOE, real_symmetric_basis(2)), "goe/realsym2"});

    double worst_sigmas = 0.0;
    std::string worst_label;
    for (const auto& cs : cases) {
        const std::size_t r = cs.ens.basis.r();
        const double c = cs.ens.basis.c;
        std::vector<std::vector<double>> prods(samples);
        parallel_for(samples, [&](std::size_t k) {
            CounterRng rng(seed + 31, k);
            const auto alpha = sample(cs.ens, rng);
            // Tr(H_k H_i) = c * alpha_i
            std::vector<double> p;
            p.reserve(r * (r + 1) / 2);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i; j < r; ++j) p.push_back(c * alpha[i] * c * alpha[j]);
            prods[k] = std::move(p);
        });
        const double expect_diag = c / static_cast<double>(r) * mean_purity(cs.ens);
        std::size_t flat = 0;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i; j < r; ++j, ++flat) {
                std::vector<double> col(samples), dev2(samples);
                for (std::size_t k = 0; k < samples; ++k) col[k] = prods[k][flat];
                const double mean = pairwise_sum(col) / samples;
                for (std::size_t k = 0; k < samples; ++k) {
                    const double d = col[k] - mean;
                    dev2[k] = d * d;
                }
                const double se = std::sqrt(pairwise_sum(dev2) /
                                            (static_cast<double>(samples) * (samples - 1.0)));
                const double target = (i == j) ? expect_diag : 0.0;
                const double sig = std::abs(mean - target) / std::max(se, 1e-300);
                if (sig > worst_sigmas) {
                    worst_sigmas = sig;
                    worst_label = cs.label;
                }
            }
    }
    return {"lemma1_integral_identity", worst_sigmas <= 3.0,
            "worst " + std::to_string(worst_sigmas) + " sigma (" + worst_label + ")"};
}

/// Mean QFI under GUE equals the sphere value scaled by the mean-purity
/// ratio.
inline CheckResult check_prefactor_scaling(std::uint64_t) {
    const PureState psi = make_state("ghz4_2");
    const LocalBasis b = pauli_basis();
    const HamiltonianEnsemble sphere(EnsembleKind::SphereUniform, b);
    const HamiltonianEnsemble gue(EnsembleKind::GUE, b);
    const double ratio = mean_purity(gue) / mean_purity(sphere);
    double worst = 0.0;
    worst = std::max(worst, std::abs(mean_qfi_collective(psi, b, gue) -
                                     ratio * mean_qfi_collective(psi, b, sphere)));
    worst = std::max(worst, std::abs(mean_qfi_noncollective(psi, b, gue) -
                                     ratio * mean_qfi_noncollective(psi, b, sphere)));
    return {"ensemble_prefactor_scaling", worst <= 1e-9, "max deviation " + std::to_string(worst)};
}

/// Orthogonal-invariance symmetry of the sampled coefficients: zero
/// mean and isotropic covariance within 4 sigma.
inline CheckResult check_ensemble_symmetry(std::uint64_t seed, std::size_t samples = 100000) {
    std::vector<HamiltonianEnsemble> cases = {
        HamiltonianEnsemble(EnsembleKind::SphereUniform, pauli_basis()),
        HamiltonianEnsemble(EnsembleKind::GUE, pauli_basis()),
    };
    double worst = 0.0;
    for (const auto& ens : cases) {
        const std::size_t r = ens.basis.r();
        std::vector<std::vector<double>> draws(samples);
        parallel_for(samples, [&](std::size_t k) {
            CounterRng rng(seed + 47, k);
            draws[k] = sample(ens, rng);
        });
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<double> col(samples);
            for (std::size_t k = 0; k < samples; ++k) col[k] = draws[k][i];
            const double mean = pairwise_sum(col) / samples;
            std::vector<double> dev2(samples);
            for (std::size_t k = 0; k < samples; ++k) {
                const double d = col[k] - mean;
                dev2[k] = d * d;
            }
            const double var = pairwise_sum(dev2) / (samples - 1.0);
            const double se = std::sqrt(var / samples);
            worst = std::max(worst, std::abs(mean) / se / 4.0);
            for (std::size_t j = i + 1; j < r; ++j) {
                std::vector<double> cross(samples);
                for (std::size_t k = 0; k < samples; ++k)
                    cross[k] = (draws[k][i] - mean) * draws[k][j];
                const double cov = pairwise_sum(cross) / samples;
                // std error of the covariance estimate ~ var / sqrt(N)
                const double cov_se = var / std::sqrt(static_cast<double>(samples));
                worst = std::max(worst, std::abs(cov) / cov_se / 4.0);
            }
        }
    }
    return {"ensemble_symmetry", worst <= 1.0,
            "worst |stat| / (4 sigma) = " + std::to_string(worst)};
}

/// Normalized GUE coefficients reproduce the sphere marginal
/// (Kolmogorov-Smirnov on the first coordinate, r = 3 so the marginal
/// is uniform on [-1, 1]).
inline CheckResult check_gue_sphere_equivalence(std::uint64_t seed, std::size_t samples = 10000) {
    const HamiltonianEnsemble gue(EnsembleKind::GUE, pauli_basis());
    std::vector<double> first(samples);
    parallel_for(samples, [&](std::size_t k) {
        CounterRng rng(seed + 53, k);
        auto a = sample(gue, rng);
        const double nrm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
        first[k] = a[0] / nrm;
    });
    const double p = detail::ks_p_value(std::move(first),
                                        [](double x) { return 0.5 * (x + 1.0); });
    return {"gue_sphere_equivalence", p > 0.01, "KS p = " + std::to_string(p)};
}

inline std::vector<CheckResult> run_validation(std::uint64_t seed) {
    return {
        check_linalg(seed),
        check_trace_preservation(seed),
        check_qfi_invariance(seed),
        check_lemma1(seed),
        check_prefactor_scaling(seed),
        check_ensemble_symmetry(seed),
        check_gue_sphere_equivalence(seed),
    };
}

inline nlohmann::json validation_to_json(const std::vector<CheckResult>& rs) {
    nlohmann::json j;
    j["groups"] = nlohmann::json::array();
    bool all = true;
    for (const auto& r : rs) {
        j["groups"].push_back({{"group", r.group}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    j["pass"] = all;
    return j;
}

}  // namespace qfn
