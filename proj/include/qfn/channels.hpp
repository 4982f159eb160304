#pragma once

#include <array>
#include <optional>
#include <string>

#include "qfn/eig.hpp"
#include "qfn/ensemble.hpp"
#include "qfn/parallel.hpp"
#include "qfn/qfi.hpp"
#include "qfn/states.hpp"

namespace qfn {

enum class ChannelMode { Collective, Noncollective, Twirl };

inline std::string to_string(ChannelMode m) {
    switch (m) {
        case ChannelMode::Collective: return "collective";
        case ChannelMode::Noncollective: return "noncollective";
        case ChannelMode::Twirl: return "twirl";
    }
    return "?";
}

inline ChannelMode parse_channel_mode(const std::string& s) {
    if (s == "collective") return ChannelMode::Collective;
    if (s == "noncollective") return ChannelMode::Noncollective;
    if (s == "twirl") return ChannelMode::Twirl;
    throw std::invalid_argument("unknown channel mode: " + s);
}

/// Monte Carlo description of one random-unitary channel.
struct ChannelSpec {
    ChannelMode mode = ChannelMode::Collective;
    std::optional<HamiltonianEnsemble> ensemble;  // absent for twirl
    double t = 0.0;
    std::size_t samples = 1;
    std::uint64_t seed = 0;
};

namespace detail {

/// Applies a single-site unitary to site `site` of a d^n vector.
inline void apply_site_to_vector(std::vector<cplx>& v, const ComplexMatrix& u,
                                 std::size_t n, std::size_t site, std::size_t d,
                                 std::vector<cplx>& scratch) {
    std::size_t right = 1;
    for (std::size_t s = site + 1; s < n; ++s) right *= d;
    std::size_t left = v.size() / (right * d);
    scratch.resize(d);
    for (std::size_t a = 0; a < left; ++a) {
        const std::size_t base = a * d * right;
        for (std::size_t b = 0; b < right; ++b) {
            for (std::size_t i = 0; i < d; ++i) {
                cplx s = 0.0;
                for (std::size_t k = 0; k < d; ++k) s += u(i, k) * v[base + k * right + b];
                scratch[i] = s;
            }
            for (std::size_t i = 0; i < d; ++i) v[base + i * right + b] = scratch[i];
        }
    }
}

/// Applies the product unitary u_0 x u_1 x ... x u_{n-1} to a vector.
inline void apply_local_unitaries(std::vector<cplx>& v,
                                  const std::vector<ComplexMatrix>& us,
                                  std::size_t n, std::size_t d) {
    std::vector<cplx> scratch;
    for (std::size_t s = 0; s < n; ++s)
        apply_site_to_vector(v, us[s], n, s, d, scratch);
}

/// U rho U^dag for a product unitary, column pass then row pass.
inline ComplexMatrix conjugate_by_locals(const ComplexMatrix& rho,
                                         const std::vector<ComplexMatrix>& us,
                                         std::size_t n, std::size_t d) {
    const std::size_t dim = rho.dim();
    ComplexMatrix tmp(dim);
    std::vector<cplx> col(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) col[i] = rho(i, j);
        apply_local_unitaries(col, us, n, d);
        for (std::size_t i = 0; i < dim; ++i) tmp(i, j) = col[i];
    }
    std::vector<ComplexMatrix> us_conj;
    us_conj.reserve(us.size());
    for (const auto& u : us) {
        ComplexMatrix c(u.dim());
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t j = 0; j < u.dim(); ++j) c(i, j) = std::conj(u(i, j));
        us_conj.push_back(std::move(c));
    }
    ComplexMatrix out(dim);
    std::vector<cplx> row(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) row[j] = tmp(i, j);
        apply_local_unitaries(row, us_conj, n, d);
        for (std::size_t j = 0; j < dim; ++j) out(i, j) = row[j];
    }
    return out;
}

}  // namespace detail

/// Haar-random unitary of size d: complex Gaussian matrix
/// orthonormalized column-by-column. Modified Gram-Schmidt plays the
/// role of a QR decomposition whose R has a real positive diagonal, so
/// the resulting Q is exactly Haar distributed.
inline ComplexMatrix haar_random_unitary(std::size_t d, CounterRng& rng) {
    ComplexMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.complex_gaussian();
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (std::size_t i = 0; i < d; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (std::size_t i = 0; i < d; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) nrm += std::norm(g(i, j));
        const double inv = 1.0 / std::sqrt(nrm);
        for (std::size_t i = 0; i < d; ++i) g(i, j) *= inv;
    }
    return g;
}

namespace detail {

/// Product unitaries for one channel sample.
inline std::vector<ComplexMatrix> sample_channel_unitaries(const ChannelSpec& spec,
                                                           std::size_t n, std::size_t d,
                                                           CounterRng& rng) {
    std::vector<ComplexMatrix> us;
    us.reserve(n);
    switch (spec.mode) {
        case ChannelMode::Collective: {
            const auto alpha = sample(*spec.ensemble, rng);
            const ComplexMatrix u = exp_hermitian(spec.ensemble->basis.combine(alpha), spec.t);
            us.assign(n, u);
            break;
        }
        case ChannelMode::Noncollective: {
            for (std::size_t s = 0; s < n; ++s) {
                const auto alpha = sample(*spec.ensemble, rng);
                us.push_back(exp_hermitian(spec.ensemble->basis.combine(alpha), spec.t));
            }
            break;
        }
        case ChannelMode::Twirl: {
            us.assign(n, haar_random_unitary(d, rng));
            break;
        }
    }
    return us;
}

}  // namespace detail

/// Monte Carlo average of e^{-itH} rho e^{itH} over `samples` draws.
/// Accumulation is chunked and pairwise-reduced, so the result is
/// bit-identical for any worker count.
inline DensityMatrix apply_channel(const DensityMatrix& rho, const ChannelSpec& spec) {
    if ((spec.mode != ChannelMode::Twirl) && !spec.ensemble)
        throw std::invalid_argument("apply_channel: dynamical mode needs an ensemble");
    if (spec.ensemble && spec.ensemble->basis.d != rho.d)
        throw std::invalid_argument("apply_channel: ensemble dimension mismatch");
    const std::size_t dim = rho.dim();

    constexpr std::size_t kChunk = 256;
    const std::size_t nchunks = (spec.samples + kChunk - 1) / kChunk;
    std::vector<ComplexMatrix> partial(nchunks);
    parallel_for(nchunks, [&](std::size_t c) {
        ComplexMatrix acc(dim);
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, spec.samples);
        for (std::size_t k = lo; k < hi; ++k) {
            CounterRng rng(spec.seed, k);
            const auto us = detail::sample_channel_unitaries(spec, rho.n, rho.d, rng);
            acc += detail::conjugate_by_locals(rho.matrix, us, rho.n, rho.d);
        }
        partial[c] = std::move(acc);
    });

    ComplexMatrix avg = pairwise_sum(std::move(partial));
    avg *= 1.0 / static_cast<double>(spec.samples);
    const double tr = avg.trace().real();
    avg *= 1.0 / tr;  // drift from unit trace is at most ~1e-12
    return DensityMatrix{rho.n, rho.d, std::move(avg)};
}

/// Bures fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, with the
/// saturated overlap form Tr(rho sigma) when rho is pure.
inline double bures_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("bures_fidelity: dimension mismatch");
    const double purity = trace_product(rho.matrix, rho.matrix).real();
    if (std::abs(purity - 1.0) < 1e-12)
        return std::clamp(trace_product(rho.matrix, sigma.matrix).real(), 0.0, 1.0);
    const ComplexMatrix s = psd_sqrt(rho.matrix);
    const ComplexMatrix inner = s * sigma.matrix * s;
    const double tr = psd_sqrt(inner).trace().real();
    return std::clamp(tr * tr, 0.0, 1.0);
}

/// Quantum affinity A(rho, sigma) = Tr(sqrt(rho) sqrt(sigma)).
inline double affinity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("affinity: dimension mismatch");
    return trace_product(psd_sqrt(rho.matrix), psd_sqrt(sigma.matrix)).real();
}

/// Averaged Tamm-Mandelstam bound cos^2(Omega t), Omega = sqrt(mean QFI)/2.
inline double tm_bound(double mean_qfi, double t) {
    const double c = std::cos(0.5 * std::sqrt(mean_qfi) * t);
    return c * c;
}

/// Validity horizon of the bound: t* = pi / sqrt(mean QFI).
inline double t_star(double mean_qfi) {
    if (mean_qfi <= 0.0) throw std::domain_error("t_star: mean QFI must be positive");
    return 3.14159265358979323846 / std::sqrt(mean_qfi);
}

struct UnsupportedRestrictionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1].
inline void gauss_legendre(std::size_t q, std::vector<double>& x, std::vector<double>& w) {
    x.assign(q, 0.0);
    w.assign(q, 0.0);
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < (q + 1) / 2; ++i) {
        double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (q + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < q; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = q * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[q - 1 - i] = z;
        w[i] = w[q - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

/// One quadrature pass at order q for the sphere-averaged pure-state
/// fidelity of the collective channel.
inline double sphere_fidelity_pass(const PureState& psi, const LocalBasis& basis,
                                   double t, std::size_t q) {
    std::vector<double> gx, gw;
    gauss_legendre(q, gx, gw);
    const std::size_t nphi = 2 * q;
    const double pi = 3.14159265358979323846;

    std::vector<double> node_vals(q);
    parallel_for(q, [&](std::size_t i) {
        const double ct = gx[i];
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        double acc = 0.0;
        std::vector<cplx> v;
        std::vector<cplx> scratch;
        for (std::size_t j = 0; j < nphi; ++j) {
            const double phi = 2.0 * pi * (static_cast<double>(j) + 0.5) / nphi;
            const std::vector<double> k = {st * std::cos(phi), st * std::sin(phi), ct};
            const ComplexMatrix u = exp_hermitian(basis.combine(k), t);
            v = psi.amplitudes;
            for (std::size_t s = 0; s < psi.n; ++s)
                apply_site_to_vector(v, u, psi.n, s, psi.d, scratch);
            acc += std::norm(overlap(psi, v));
        }
        node_vals[i] = gw[i] * 0.5 * acc / static_cast<double>(nphi);
    });
    return pairwise_sum(node_vals);
}

}  // namespace detail

/// Deterministic sphere quadrature of the exact collective-channel
/// fidelity for a pure input state: the Gauss-Legendre order doubles
/// from 8 until two successive estimates agree below 1e-9.
inline double exact_fidelity_pure_collective(const PureState& psi, const LocalBasis& basis,
                                             double t) {
    if (basis.r() != 3)
        throw UnsupportedRestrictionError(
            "exact_fidelity_pure_collective: sphere quadrature needs r = 3");
    std::size_t q = 8;
    double prev = detail::sphere_fidelity_pass(psi, basis, t, q);
    for (q = 16; q <= 256; q *= 2) {
        const double cur = detail::sphere_fidelity_pass(psi, basis, t, q);
        if (std::abs(cur - prev) < 1e-9) return cur;
        prev = cur;
    }
    return prev;
}

/// Time-gridded fidelity/bound record behind the figure CSV output.
struct FidelityCurve {
    std::string state_id;
    ChannelMode mode = ChannelMode::Collective;
    std::string ensemble_id;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double mean_qfi = 0.0;
    double tstar = 0.0;
    std::vector<double> times;
    std::vector<double> fidelity;
    std::vector<double> std_error;  // zero for quadrature points
    std::vector<double> bound;
    std::vector<bool> valid_window;
};

/// Per-grid-point channel fidelity for a pure input state: sphere
/// quadrature when available (collective, r = 3, sphere measure), MC
/// over per-sample overlaps otherwise.
inline FidelityCurve fidelity_curve(const PureState& psi, const ChannelSpec& spec,
                                    const std::vector<double>& grid, double mean_qfi,
                                    const std::string& state_id = "") {
    FidelityCurve c;
    c.state_id = state_id;
    c.mode = spec.mode;
    c.ensemble_id = spec.ensemble ? to_string(spec.ensemble->kind) : "haar";
    c.seed = spec.seed;
    c.mean_qfi = mean_qfi;
    c.tstar = t_star(mean_qfi);

    const bool quadrature = spec.mode == ChannelMode::Collective && spec.ensemble &&
                            spec.ensemble->kind == EnsembleKind::SphereUniform &&
                            spec.ensemble->basis.r() == 3;
    c.samples = quadrature ? 0 : spec.samples;

    for (std::size_t p = 0; p < grid.size(); ++p) {
        const double t = grid[p];
        double fid = 0.0, err = 0.0;
        if (quadrature) {
            fid = exact_fidelity_pure_collective(psi, spec.ensemble->basis, t);
        } else {
            ChannelSpec pt = spec;
            pt.t = t;
            std::vector<double> vals(spec.samples);
            parallel_for(spec.samples, [&](std::size_t k) {
                CounterRng rng(spec.seed, p * spec.samples + k);
                const auto us = detail::sample_channel_unitaries(pt, psi.n, psi.d, rng);
                std::vector<cplx> v = psi.amplitudes;
                detail::apply_local_unitaries(v, us, psi.n, psi.d);
                vals[k] = std::norm(overlap(psi, v));
            });
            fid = pairwise_sum(vals) / static_cast<double>(spec.samples);
            std::vector<double> dev2(spec.samples);
            for (std::size_t k = 0; k < spec.samples; ++k) {
                const double d = vals[k] - fid;
                dev2[k] = d * d;
            }
            err = std::sqrt(pairwise_sum(dev2) /
                            (static_cast<double>(spec.samples) * (spec.samples - 1.0)));
        }
        c.times.push_back(t);
        c.fidelity.push_back(fid);
        c.std_error.push_back(err);
        c.bound.push_back(tm_bound(mean_qfi, t));
        c.valid_window.push_back(t <= c.tstar);
    }
    return c;
}

/// Closed-form populations of the evolved five-qubit GHZ state.
struct Ghz5Coefficients {
    double t = 0.0;
    std::array<double, 4> zeta{};  // zeta_1..zeta_4
};

inline Ghz5Coefficients ghz5_coefficients(double t) {
    Ghz5Coefficients z;
    z.t = t;
    const double s2 = std::sin(0.5 * t) * std::sin(0.5 * t);
    z.zeta[0] = s2 / 21.0 *
                (13.0 + 14.0 * std::cos(t) + 6.0 * std::cos(2.0 * t) + 2.0 * std::cos(3.0 * t));
    z.zeta[1] = 8.0 / 63.0 * s2 * s2 * (9.0 + 10.0 * std::cos(t) + 2.0 * std::cos(2.0 * t));
    z.zeta[2] = (382.0 + 302.0 * std::cos(t) + 302.0 * std::cos(2.0 * t) +
                 137.0 * std::cos(3.0 * t) + 137.0 * std::cos(4.0 * t) +
                 126.0 * std::cos(5.0 * t)) / 1386.0;
    z.zeta[3] = (256.0 + 50.0 * std::cos(t) + 50.0 * std::cos(2.0 * t) -
                 115.0 * std::cos(3.0 * t) - 115.0 * std::cos(4.0 * t) -
                 126.0 * std::cos(5.0 * t)) / 1386.0;
    return z;
}

/// MC populations of the collectively evolved |GHZ_5^+> over the six
/// symmetric-subspace basis states, ordered D1, D2, D3, D4, GHZ+, GHZ-.
struct Ghz5Populations {
    std::array<double, 6> populations{};
    std::array<double, 6> std_error{};
    double leakage = 0.0;  // weight outside the symmetric subspace
};

inline Ghz5Populations ghz5_populations_mc(double t, std::size_t samples, std::uint64_t seed) {
    const PureState ghz_plus = ghz_state(5, 2);
    PureState ghz_minus = ghz_plus;
    ghz_minus.amplitudes[31] = -ghz_minus.amplitudes[31];
    std::vector<PureState> targets = {dicke_state(5, 1), dicke_state(5, 2), dicke_state(5, 3),
                                      dicke_state(5, 4), ghz_plus, ghz_minus};

    const LocalBasis basis = pauli_basis();
    std::vector<std::array<double, 7>> vals(samples);  // 6 populations + leakage
    parallel_for(samples, [&](std::size_t k) {
        CounterRng rng(seed, k);
        std::vector<double> alpha(3);
        for (auto& a : alpha) a = rng.gaussian();
        double n2 = alpha[0] * alpha[0] + alpha[1] * alpha[1] + alpha[2] * alpha[2];
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : alpha) a *= inv;
        const ComplexMatrix u = exp_hermitian(basis.combine(alpha), t);
        std::vector<cplx> v = ghz_plus.amplitudes;
        std::vector<cplx> scratch;
        for (std::size_t s = 0; s < 5; ++s)
            detail::apply_site_to_vector(v, u, 5, s, 2, scratch);
        double in_subspace = 0.0;
        for (std::size_t b = 0; b < 6; ++b) {
            vals[k][b] = std::norm(overlap(targets[b], v));
            in_subspace += vals[k][b];
        }
        vals[k][6] = 1.0 - in_subspace;
    });

    Ghz5Populations out;
    const double ns = static_cast<double>(samples);
    for (std::size_t b = 0; b < 7; ++b) {
        std::vector<double> col(samples);
        for (std::size_t k = 0; k < samples; ++k) col[k] = vals[k][b];
        const double mean = pairwise_sum(col) / ns;
        if (b == 6) {
            out.leakage = mean;
        } else {
            out.populations[b] = mean;
            std::vector<double> dev2(samples);
            for (std::size_t k = 0; k < samples; ++k) {
                const double d = col[k] - mean;
                dev2[k] = d * d;
            }
            out.std_error[b] = std::sqrt(pairwise_sum(dev2) / (ns * (ns - 1.0)));
        }
    }
    return out;
}

}  // namespace qfn
