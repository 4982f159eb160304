#pragma once

#include <string>

#include "qfn/complex_matrix.hpp"

namespace qfn {

/// Orthogonal set {H_i}_{i=1..r} of traceless single-particle Hermitian
/// generators with Tr(H_i H_j) = c * delta_ij, plus the
/// identity-proportional element H_0 = sqrt(c/d) * 1 normalized so that
/// Tr(H_0^2) = c as well.
struct LocalBasis {
    std::string id;
    std::size_t d = 0;
    double c = 0.0;  // Tr(H_i^2), common to all generators
    std::vector<ComplexMatrix> generators;

    std::size_t r() const { return generators.size(); }

    ComplexMatrix h0() const {
        return std::sqrt(c / static_cast<double>(d)) * ComplexMatrix::identity(d);
    }

    /// Linear combination sum_i alpha_i H_i.
    ComplexMatrix combine(const std::vector<double>& alpha) const {
        if (alpha.size() != r())
            throw std::invalid_argument("LocalBasis::combine: coefficient count != r");
        ComplexMatrix h(d);
        for (std::size_t i = 0; i < alpha.size(); ++i) h += alpha[i] * generators[i];
        return h;
    }
};

/// Qubit basis {sigma_x/2, sigma_y/2, sigma_z/2}, c = 1/2.
inline LocalBasis pauli_basis() {
    LocalBasis b;
    b.id = "pauli";
    b.d = 2;
    b.c = 0.5;
    ComplexMatrix sx(2), sy(2), sz(2);
    sx(0, 1) = 0.5; sx(1, 0) = 0.5;
    sy(0, 1) = cplx(0, -0.5); sy(1, 0) = cplx(0, 0.5);
    sz(0, 0) = 0.5; sz(1, 1) = -0.5;
    b.generators = {sx, sy, sz};
    return b;
}

/// Spin-j basis {J_x, J_y, J_z} with j = (d-1)/2,
/// c = Tr(J_i^2) = (2/3) j (j+1/2) (j+1).
inline LocalBasis spin_basis(std::size_t d) {
    if (d < 2) throw std::invalid_argument("spin_basis: d must be >= 2");
    LocalBasis b;
    b.id = "spin";
    b.d = d;
    const double j = (static_cast<double>(d) - 1.0) / 2.0;
    b.c = (2.0 / 3.0) * j * (j + 0.5) * (j + 1.0);
    ComplexMatrix jp(d);  // raising operator, basis ordered m = j, j-1, ..., -j
    for (std::size_t k = 1; k < d; ++k) {
        const double m = j - static_cast<double>(k);
        jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jm = jp.dagger();
    ComplexMatrix jx = 0.5 * (jp + jm);
    ComplexMatrix jy = cplx(0, -0.5) * (jp - jm);
    ComplexMatrix jz(d);
    for (std::size_t k = 0; k < d; ++k) jz(k, k) = j - static_cast<double>(k);
    b.generators = {jx, jy, jz};
    return b;
}

/// Generalized Gell-Mann basis: d^2 - 1 traceless Hermitian generators
/// with Tr(H_i H_j) = 2 delta_ij.
inline LocalBasis gellmann_basis(std::size_t d) {
    if (d < 2) throw std::invalid_argument("gellmann_basis: d must be >= 2");
    LocalBasis b;
    b.id = "gellmann";
    b.d = d;
    b.c = 2.0;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = k + 1; l < d; ++l) {
            ComplexMatrix sym(d), asym(d);
            sym(k, l) = 1.0; sym(l, k) = 1.0;
            asym(k, l) = cplx(0, -1.0); asym(l, k) = cplx(0, 1.0);
            b.generators.push_back(sym);
            b.generators.push_back(asym);
        }
    }
    for (std::size_t l = 1; l < d; ++l) {
        ComplexMatrix diag(d);
        const double norm = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1.0)));
        for (std::size_t k = 0; k < l; ++k) diag(k, k) = norm;
        diag(l, l) = -norm * static_cast<double>(l);
        b.generators.push_back(diag);
    }
    return b;
}

/// Real-symmetric generator set of size d with Tr(H_i H_j) = 2 delta_ij:
/// sqrt(2) E_kk and E_kl + E_lk. Standard normals over it give the GOE.
inline LocalBasis real_symmetric_basis(std::size_t d) {
    LocalBasis b;
    b.id = "real-symmetric";
    b.d = d;
    b.c = 2.0;
    for (std::size_t k = 0; k < d; ++k) {
        ComplexMatrix diag(d);
        diag(k, k) = std::sqrt(2.0);
        b.generators.push_back(std::move(diag));
    }
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l) {
            ComplexMatrix sym(d);
            sym(k, l) = 1.0;
            sym(l, k) = 1.0;
            b.generators.push_back(std::move(sym));
        }
    return b;
}

/// Complete orthonormal Hermitian basis (d^2 elements, Tr(H_i H_j) =
/// delta_ij). Standard normals over it give the full matrix-entry GUE.
inline LocalBasis orthonormal_hermitian_basis(std::size_t d) {
    LocalBasis b = gellmann_basis(d);
    b.id = "orthonormal-full";
    b.c = 1.0;
    const double inv = 1.0 / std::sqrt(2.0);
    for (auto& g : b.generators) g *= inv;
    ComplexMatrix id_el = (1.0 / std::sqrt(static_cast<double>(d))) * ComplexMatrix::identity(d);
    b.generators.push_back(std::move(id_el));
    return b;
}

inline LocalBasis make_basis(const std::string& id, std::size_t d) {
    if (id == "pauli") {
        if (d != 2) throw std::invalid_argument("pauli basis requires d = 2");
        return pauli_basis();
    }
    if (id == "spin") return spin_basis(d);
    if (id == "gellmann") return gellmann_basis(d);
    throw std::invalid_argument("unknown basis id: " + id);
}

}  // namespace qfn
