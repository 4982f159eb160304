#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfn/eig.hpp"
#include "qfn/rng.hpp"
#include "qfn/states.hpp"

using namespace qfn;

namespace {

ComplexMatrix random_hermitian(std::size_t dim, CounterRng& rng) {
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

}  // namespace

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    CounterRng rng(7, 0);
    for (std::size_t dim : {2u, 3u, 5u, 8u, 16u}) {
        const ComplexMatrix h = random_hermitian(dim, rng);
        const Eigendecomposition e = hermitian_eig(h);
        const ComplexMatrix rec = spectral_map(e, [](double l) { return cplx(l, 0.0); });
        CHECK((rec - h).frobenius_norm() < 1e-10 * std::max(1.0, h.frobenius_norm()));

        ComplexMatrix orth = e.vectors.dagger() * e.vectors;
        orth -= ComplexMatrix::identity(dim);
        CHECK(orth.frobenius_norm() < 1e-11);

        // sorted descending
        for (std::size_t k = 1; k < dim; ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
}

TEST_CASE("known small spectra") {
    ComplexMatrix ones(2);
    ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1.0;
    auto e = hermitian_eig(ones);
    CHECK(e.values[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(0.0).epsilon(1e-12));

    // sigma_y has a genuinely complex pivot
    ComplexMatrix sy(2);
    sy(0, 1) = cplx(0, -1);
    sy(1, 0) = cplx(0, 1);
    e = hermitian_eig(sy);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;  // strictly upper triangular
    CHECK_THROWS_AS(hermitian_eig(m), NotHermitianError);
}

TEST_CASE("exp_hermitian produces the expected unitary") {
    CounterRng rng(11, 0);
    const ComplexMatrix h = random_hermitian(6, rng);
    const ComplexMatrix u = exp_hermitian(h, 0.37);
    CHECK(u.is_unitary(1e-11));
    ComplexMatrix round_trip = u * exp_hermitian(h, -0.37);
    round_trip -= ComplexMatrix::identity(6);
    CHECK(round_trip.frobenius_norm() < 1e-10);

    // diagonal generator: phases e^{-i t lambda}
    ComplexMatrix sz(2);
    sz(0, 0) = 0.5;
    sz(1, 1) = -0.5;
    const double t = 1.3;
    const ComplexMatrix uz = exp_hermitian(sz, t);
    CHECK(std::abs(uz(0, 0) - std::exp(cplx(0, -0.5 * t))) < 1e-13);
    CHECK(std::abs(uz(1, 1) - std::exp(cplx(0, 0.5 * t))) < 1e-13);
    CHECK(std::abs(uz(0, 1)) < 1e-13);
}

TEST_CASE("psd_sqrt squares back and rejects indefinite input") {
    CounterRng rng(13, 0);
    ComplexMatrix g(5);
    for (auto& x : g.data()) x = rng.complex_gaussian();
    ComplexMatrix p = g * g.dagger();  // PSD by construction
    const ComplexMatrix s = psd_sqrt(p);
    CHECK((s * s - p).frobenius_norm() < 1e-9 * p.frobenius_norm());
    CHECK(s.is_hermitian(1e-10));
    CHECK(s.is_psd(1e-10));

    ComplexMatrix indef(2);
    indef(0, 0) = 1.0;
    indef(1, 1) = -1.0;
    CHECK_THROWS_AS(psd_sqrt(indef), NotPsdError);

    // tiny negative eigenvalues are clamped, not rejected
    ComplexMatrix nearly(2);
    nearly(0, 0) = 1.0;
    nearly(1, 1) = -1e-12;
    CHECK_NOTHROW(psd_sqrt(nearly));
}

TEST_CASE("tensor product is associative and multiplicative on traces") {
    CounterRng rng(17, 0);
    const ComplexMatrix a = random_hermitian(2, rng);
    const ComplexMatrix b = random_hermitian(3, rng);
    const ComplexMatrix c = random_hermitian(2, rng);
    const ComplexMatrix lhs = tensor_product(tensor_product(a, b), c);
    const ComplexMatrix rhs = tensor_product(a, tensor_product(b, c));
    CHECK((lhs - rhs).frobenius_norm() < 1e-12);
    CHECK(std::abs(lhs.trace() - a.trace() * b.trace() * c.trace()) < 1e-12);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    const PureState bell = ghz_state(2, 2);
    const DensityMatrix rho = density_matrix(bell);
    for (std::size_t keep : {0u, 1u}) {
        const ComplexMatrix red = partial_trace(rho.matrix, {2, 2}, {keep});
        ComplexMatrix diff = red - 0.5 * ComplexMatrix::identity(2);
        CHECK(diff.frobenius_norm() < 1e-12);
    }
}

TEST_CASE("partial trace respects product structure and composition") {
    CounterRng rng(19, 0);
    ComplexMatrix a = random_hermitian(2, rng);
    ComplexMatrix b = random_hermitian(3, rng);
    ComplexMatrix c = random_hermitian(2, rng);
    const ComplexMatrix full = tensor_product(a, tensor_product(b, c));

    // tracing out sites 1 and 2 leaves Tr(b) Tr(c) * a
    const ComplexMatrix ra = partial_trace(full, {2, 3, 2}, {0});
    CHECK((ra - b.trace() * c.trace() * a).frobenius_norm() < 1e-10);

    // keep the middle (non-contiguous strides on both sides)
    const ComplexMatrix rb = partial_trace(full, {2, 3, 2}, {1});
    CHECK((rb - a.trace() * c.trace() * b).frobenius_norm() < 1e-10);

    // two-step composition matches one-step
    const ComplexMatrix rbc = partial_trace(full, {2, 3, 2}, {1, 2});
    const ComplexMatrix rb2 = partial_trace(rbc, {3, 2}, {0});
    CHECK((rb2 - rb).frobenius_norm() < 1e-10);

    CHECK_THROWS_AS(partial_trace(full, {2, 3, 2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(full, {2, 2}, {0}), std::invalid_argument);
}

TEST_CASE("trace_product and hs_inner agree for Hermitian arguments") {
    CounterRng rng(23, 0);
    const ComplexMatrix a = random_hermitian(4, rng);
    const ComplexMatrix b = random_hermitian(4, rng);
    CHECK(std::abs(trace_product(a, b) - hs_inner(a, b)) < 1e-12);
    CHECK(std::abs(trace_product(a, b).imag()) < 1e-12);
}
