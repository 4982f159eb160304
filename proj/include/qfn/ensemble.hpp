#pragma once

#include <string>

#include "qfn/local_basis.hpp"
#include "qfn/rng.hpp"

namespace qfn {

enum class EnsembleKind { SphereUniform, GUE, GOE };

inline std::string to_string(EnsembleKind k) {
    switch (k) {
        case EnsembleKind::SphereUniform: return "sphere";
        case EnsembleKind::GUE: return "gue";
        case EnsembleKind::GOE: return "goe";
    }
    return "?";
}

inline EnsembleKind parse_ensemble_kind(const std::string& s) {
    if (s == "sphere") return EnsembleKind::SphereUniform;
    if (s == "gue") return EnsembleKind::GUE;
    if (s == "goe") return EnsembleKind::GOE;
    throw std::invalid_argument("unknown ensemble kind: " + s);
}

struct EnsembleConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Sampling rule for coefficient vectors over a generator set. The
/// basis itself encodes the restriction (e.g. the 3 spin matrices vs
/// all d^2-1 Gell-Mann matrices). All kinds are invariant under
/// orthogonal transformations of the coefficient vector.
struct HamiltonianEnsemble {
    EnsembleKind kind = EnsembleKind::SphereUniform;
    LocalBasis basis;

    HamiltonianEnsemble() = default;
    HamiltonianEnsemble(EnsembleKind k, LocalBasis b) : kind(k), basis(std::move(b)) {
        if (kind == EnsembleKind::GOE) {
            for (const auto& g : basis.generators) {
                bool real_sym = true;
                for (std::size_t i = 0; i < g.dim() && real_sym; ++i)
                    for (std::size_t j = 0; j < g.dim(); ++j)
                        if (std::abs(g(i, j).imag()) > 1e-14) { real_sym = false; break; }
                if (!real_sym)
                    throw EnsembleConfigError(
                        "GOE requires a real-symmetric generator set");
            }
        }
    }
};

/// Draws a coefficient vector alpha of length r, expressed with respect
/// to the basis generators H_i themselves (Tr H_i^2 = c).
///   SphereUniform: alpha uniform on S^{r-1} (normalized Gaussians)
///   GUE/GOE:       alpha i.i.d. standard normal
inline std::vector<double> sample(const HamiltonianEnsemble& e, CounterRng& rng) {
    const std::size_t r = e.basis.r();
    std::vector<double> alpha(r);
    for (auto& a : alpha) a = rng.gaussian();
    if (e.kind == EnsembleKind::SphereUniform) {
        double n2 = 0.0;
        for (double a : alpha) n2 += a * a;
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& a : alpha) a *= inv;
    }
    return alpha;
}

/// E[Tr(H^2)] of the sampled Hamiltonian; the prefactor of the averaged
/// QFI is mean_purity / c.
inline double mean_purity(const HamiltonianEnsemble& e) {
    switch (e.kind) {
        case EnsembleKind::SphereUniform:
            return e.basis.c;
        case EnsembleKind::GUE:
        case EnsembleKind::GOE:
            return static_cast<double>(e.basis.r()) * e.basis.c;
    }
    return 0.0;
}

enum class EmbedMode { Collective, Noncollective, SingleSite };

struct EmbeddedHamiltonian {
    std::size_t n = 0;
    EmbedMode mode = EmbedMode::Collective;
    ComplexMatrix matrix;
};

namespace detail {

/// Adds `local` acting on `site` (identity elsewhere) into `out`,
/// which has dimension d^n.
inline void add_single_site(ComplexMatrix& out, const ComplexMatrix& local,
                            std::size_t n, std::size_t site) {
    const std::size_t d = local.dim();
    std::size_t left = 1, right = 1;
    for (std::size_t s = 0; s < site; ++s) left *= d;
    for (std::size_t s = site + 1; s < n; ++s) right *= d;
    for (std::size_t a = 0; a < left; ++a)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const cplx lij = local(i, j);
                if (lij == cplx{}) continue;
                const std::size_t row0 = (a * d + i) * right;
                const std::size_t col0 = (a * d + j) * right;
                for (std::size_t b = 0; b < right; ++b)
                    out(row0 + b, col0 + b) += lij;
            }
}

}  // namespace detail

/// Collective embedding: sum over sites of H_alpha at that site.
inline EmbeddedHamiltonian embed_collective(const std::vector<double>& alpha,
                                            const LocalBasis& basis, std::size_t n) {
    const ComplexMatrix local = basis.combine(alpha);
    std::size_t dim = 1;
    for (std::size_t s = 0; s < n; ++s) dim *= basis.d;
    EmbeddedHamiltonian h{n, EmbedMode::Collective, ComplexMatrix(dim)};
    for (std::size_t s = 0; s < n; ++s) detail::add_single_site(h.matrix, local, n, s);
    return h;
}

/// Non-collective embedding: site s contributes H_{alpha_s}.
inline EmbeddedHamiltonian embed_noncollective(const std::vector<std::vector<double>>& alphas,
                                               const LocalBasis& basis, std::size_t n) {
    if (alphas.size() != n)
        throw std::invalid_argument("embed_noncollective: need n coefficient vectors");
    std::size_t dim = 1;
    for (std::size_t s = 0; s < n; ++s) dim *= basis.d;
    EmbeddedHamiltonian h{n, EmbedMode::Noncollective, ComplexMatrix(dim)};
    for (std::size_t s = 0; s < n; ++s)
        detail::add_single_site(h.matrix, basis.combine(alphas[s]), n, s);
    return h;
}

/// H_i at one site, bare identity elsewhere (the prefactor-cancelled
/// form used by the non-collective average). Sites and generator
/// indices are 0-based.
inline EmbeddedHamiltonian single_site_generator(const LocalBasis& basis, std::size_t n,
                                                 std::size_t site, std::size_t index) {
    if (site >= n) throw std::invalid_argument("single_site_generator: site out of range");
    if (index >= basis.r())
        throw std::invalid_argument("single_site_generator: generator index out of range");
    std::size_t dim = 1;
    for (std::size_t s = 0; s < n; ++s) dim *= basis.d;
    EmbeddedHamiltonian h{n, EmbedMode::SingleSite, ComplexMatrix(dim)};
    detail::add_single_site(h.matrix, basis.generators[index], n, site);
    return h;
}

}  // namespace qfn
