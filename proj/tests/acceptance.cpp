// Acceptance suite: one pass/fail line per criterion, nonzero exit if
// any criterion fails. All randomness is seeded, so a green run is
// reproducible bit-for-bit.

#include <array>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "qfn/channels.hpp"
#include "qfn/table1.hpp"
#include "qfn/validate.hpp"

using namespace qfn;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

bool report(int id, const char* title, bool pass, const std::string& detail) {
    std::printf("criterion %d [%s] %s (%s)\n", id, pass ? "PASS" : "FAIL", title,
                detail.c_str());
    std::fflush(stdout);
    return pass;
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

HamiltonianEnsemble row_ensemble(const Table1Row& row) {
    return HamiltonianEnsemble(EnsembleKind::SphereUniform, make_basis(row.basis_id, row.d));
}

// criterion 1: analytic reproduction of all 18 table rows
bool criterion1() {
    Timer timer;
    double max_dev = 0.0;
    for (const auto& row : table1_rows()) {
        const PureState psi = make_state(row.state_id);
        const auto ens = row_ensemble(row);
        max_dev = std::max(max_dev,
                           std::abs(mean_qfi_pure_tensor_collective(psi, ens.basis, ens) -
                                    row.collective()));
        max_dev = std::max(max_dev,
                           std::abs(mean_qfi_pure_tensor_noncollective(psi, ens.basis, ens) -
                                    row.noncollective()));
    }
    return report(1, "table reproduction, 18 rows analytic", max_dev <= 1e-9,
                  fmt("max dev %.2e, %.1fs", max_dev, timer.seconds()));
}

// criterion 2: tensor-form vs basis-sum cross-path agreement
bool criterion2() {
    Timer timer;
    double max_dev = 0.0;
    for (const auto& row : table1_rows()) {
        const PureState psi = make_state(row.state_id);
        const auto ens = row_ensemble(row);
        max_dev = std::max(max_dev,
                           std::abs(mean_qfi_pure_tensor_collective(psi, ens.basis, ens) -
                                    mean_qfi_collective(psi, ens.basis, ens)));
        max_dev = std::max(max_dev,
                           std::abs(mean_qfi_pure_tensor_noncollective(psi, ens.basis, ens) -
                                    mean_qfi_noncollective(psi, ens.basis, ens)));
    }
    return report(2, "closed-form and generator-sum averages agree", max_dev <= 1e-9,
                  fmt("max dev %.2e, %.1fs", max_dev, timer.seconds()));
}

// criterion 3: MC oracle at 10^4 samples, one 3-sigma excursion allowed
bool criterion3() {
    Timer timer;
    int failing_rows = 0;
    double worst_sigma = 0.0;
    std::size_t row_index = 0;
    for (const auto& row : table1_rows()) {
        const DensityMatrix rho = density_matrix(make_state(row.state_id));
        const auto ens = row_ensemble(row);
        const auto col = mc_mean_qfi(rho, ens.basis, ens, EmbedMode::Collective, 10000,
                                     kSeed + 2 * row_index);
        const auto non = mc_mean_qfi(rho, ens.basis, ens, EmbedMode::Noncollective, 10000,
                                     kSeed + 2 * row_index + 1);
        // k-uniform states have ensemble-constant QFI: the standard
        // error is pure rounding noise, so keep an absolute floor
        const double s_col = std::abs(col.estimate - row.collective()) /
                             std::max(col.std_error, 1e-9);
        const double s_non = std::abs(non.estimate - row.noncollective()) /
                             std::max(non.std_error, 1e-9);
        worst_sigma = std::max({worst_sigma, s_col, s_non});
        if (s_col > 3.0 || s_non > 3.0) ++failing_rows;
        ++row_index;
    }
    return report(3, "MC oracle within 3 sigma on >= 17/18 rows", failing_rows <= 1,
                  fmt("%d row(s) out, worst %.2f sigma, %.1fs", failing_rows, worst_sigma,
                      timer.seconds()));
}

// criterion 4: bound dominance on [0, t*] for every table row
bool criterion4() {
    Timer timer;
    int violations = 0;
    double worst_margin = 1e9;
    for (const auto& row : table1_rows()) {
        const PureState psi = make_state(row.state_id);
        const auto ens = row_ensemble(row);
        const double mean_qfi = row.collective();
        const double ts = t_star(mean_qfi);
        std::vector<double> grid;
        for (int i = 0; i < 50; ++i) grid.push_back(ts * i / 49.0);

        ChannelSpec spec;
        spec.mode = ChannelMode::Collective;
        spec.ensemble = ens;
        spec.samples = 4000;
        spec.seed = kSeed + 100 + row.col_num;  // distinct per row, still fixed
        const FidelityCurve c = fidelity_curve(psi, spec, grid, mean_qfi, row.state_id);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double slack = c.samples == 0 ? 1e-9 : 3.0 * c.std_error[i] + 1e-12;
            const double margin = c.fidelity[i] + slack - c.bound[i];
            worst_margin = std::min(worst_margin, margin);
            if (margin < 0.0) ++violations;
        }
    }
    return report(4, "fidelity dominates the bound on [0, t*]", violations == 0,
                  fmt("%d violation(s), worst margin %.2e, %.1fs", violations, worst_margin,
                      timer.seconds()));
}

// criterion 5: bound accuracy coverage for the two AME states. The
// quoted percentages are measured against the reference window
// pi / (n (d-1)): the validity horizon of the unaveraged bound for a
// maximal collective generator (QFI n^2 (d-1)^2), which is how the
// figures normalize the time axis.
bool criterion5() {
    Timer timer;
    struct Case {
        const char* state;
        LocalBasis basis;
        double mean_qfi;
        double window;  // reference time window for the percentage
        double floor;   // explicit coverage floor from the claim
        double quoted;  // reference coverage figure
    };
    const double pi = 3.14159265358979323846;
    const std::vector<Case> cases = {
        {"ame6_2", pauli_basis(), 6.0, pi / 6.0, 0.76, 0.7667},
        {"ame4_3", spin_basis(3), 32.0 / 3.0, pi / 8.0, 0.74, 0.7422},
    };
    bool pass = true;
    std::string detail;
    for (const auto& cs : cases) {
        const PureState psi = make_state(cs.state);
        const int points = 512;
        int covered = 0;
        for (int i = 0; i < points; ++i) {
            const double t = cs.window * (i + 0.5) / points;
            const double fid = exact_fidelity_pure_collective(psi, cs.basis, t);
            const double rel = (fid - tm_bound(cs.mean_qfi, t)) / std::max(fid, 1e-12);
            if (rel <= 0.01) ++covered;
        }
        const double frac = static_cast<double>(covered) / points;
        const bool ok = frac >= cs.floor && std::abs(frac - cs.quoted) <= 0.02;
        pass = pass && ok;
        detail += fmt("%s %.4f ", cs.state, frac);
    }
    return report(5, "bound within 1% over the quoted fraction of the time window", pass,
                  detail + fmt("%.1fs", timer.seconds()));
}

double g_min_spread = -1.0;  // filled by criterion 6, reused by criterion 8

// criterion 6: GHZ_5 populations against the closed form
bool criterion6() {
    Timer timer;
    double max_dev = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        const auto mc = ghz5_populations_mc(t, 100000, kSeed + 900);
        const auto z = ghz5_coefficients(t);
        const double expect[6] = {z.zeta[0], z.zeta[1], z.zeta[1],
                                  z.zeta[0], z.zeta[2], z.zeta[3]};
        for (int b = 0; b < 6; ++b)
            max_dev = std::max(max_dev, std::abs(mc.populations[b] - expect[b]));
    }

    double max_norm_err = 0.0, min_spread = 2.0;
    const double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < 10000; ++i) {
        const double t = two_pi * (i + 0.5) / 10000.0;
        const auto z = ghz5_coefficients(t);
        max_norm_err = std::max(
            max_norm_err,
            std::abs(2.0 * z.zeta[0] + 2.0 * z.zeta[1] + z.zeta[2] + z.zeta[3] - 1.0));
        const double hi = std::max({z.zeta[0], z.zeta[1], z.zeta[2], z.zeta[3]});
        const double lo = std::min({z.zeta[0], z.zeta[1], z.zeta[2], z.zeta[3]});
        min_spread = std::min(min_spread, hi - lo);
    }
    g_min_spread = min_spread;
    const bool pass = max_dev <= 5e-3 && max_norm_err <= 1e-12 && min_spread > 0.0;
    return report(6, "GHZ_5 populations match the closed form", pass,
                  fmt("max dev %.2e, norm err %.2e, min spread %.3f, %.1fs", max_dev,
                      max_norm_err, min_spread, timer.seconds()));
}

// criterion 7: non-collective noise is more destructive for generic states
bool criterion7() {
    Timer timer;
    const LocalBasis basis = pauli_basis();
    const HamiltonianEnsemble ens(EnsembleKind::SphereUniform, basis);
    int noncol_wins = 0;
    const int trials = 100;
    for (int k = 0; k < trials; ++k) {
        CounterRng rng(kSeed + 1700, static_cast<std::uint64_t>(k));
        const PureState psi = haar_random_state(4, 2, rng);
        if (mean_qfi_noncollective(psi, basis, ens) > mean_qfi_collective(psi, basis, ens))
            ++noncol_wins;
    }
    const PureState ghz = ghz_state(4, 2);
    const double ghz_col = mean_qfi_collective(ghz, basis, ens);
    const double ghz_non = mean_qfi_noncollective(ghz, basis, ens);
    const bool ghz_reversed = std::abs(ghz_col - 8.0) < 1e-9 &&
                              std::abs(ghz_non - 4.0) < 1e-9 && ghz_col > ghz_non;
    return report(7, "noncollective dominates for random states, GHZ reversed",
                  noncol_wins > trials / 2 && ghz_reversed,
                  fmt("%d/%d random states, GHZ %.0f > %.0f, %.1fs", noncol_wins, trials,
                      ghz_col, ghz_non, timer.seconds()));
}

// criterion 8: Haar twirl flattens the symmetric-subspace populations
bool criterion8() {
    Timer timer;
    const PureState ghz_plus = ghz_state(5, 2);
    PureState ghz_minus = ghz_plus;
    ghz_minus.amplitudes[31] = -ghz_minus.amplitudes[31];
    const std::vector<PureState> targets = {dicke_state(5, 1), dicke_state(5, 2),
                                            dicke_state(5, 3), dicke_state(5, 4),
                                            ghz_plus, ghz_minus};
    const std::size_t samples = 100000;
    std::vector<std::array<double, 6>> vals(samples);
    parallel_for(samples, [&](std::size_t k) {
        CounterRng rng(kSeed + 2100, k);
        const ComplexMatrix u = haar_random_unitary(2, rng);
        std::vector<cplx> v = ghz_plus.amplitudes;
        std::vector<cplx> scratch;
        for (std::size_t s = 0; s < 5; ++s)
            detail::apply_site_to_vector(v, u, 5, s, 2, scratch);
        for (std::size_t b = 0; b < 6; ++b) vals[k][b] = std::norm(overlap(targets[b], v));
    });
    double worst_sigma = 0.0;
    for (std::size_t b = 0; b < 6; ++b) {
        std::vector<double> col(samples);
        for (std::size_t k = 0; k < samples; ++k) col[k] = vals[k][b];
        const double mean = pairwise_sum(col) / samples;
        std::vector<double> dev2(samples);
        for (std::size_t k = 0; k < samples; ++k) {
            const double d = col[k] - mean;
            dev2[k] = d * d;
        }
        const double se =
            std::sqrt(pairwise_sum(dev2) / (static_cast<double>(samples) * (samples - 1.0)));
        worst_sigma = std::max(worst_sigma, std::abs(mean - 1.0 / 6.0) / se);
    }
    const bool pass = worst_sigma <= 3.0 && g_min_spread > 0.0;
    return report(8, "twirl populations uniform at 1/6, dynamics never uniform", pass,
                  fmt("worst %.2f sigma, dynamic min spread %.3f, %.1fs", worst_sigma,
                      g_min_spread, timer.seconds()));
}

// criterion 9: invariant suites under the default seed
bool criterion9() {
    Timer timer;
    const auto results = run_validation(kSeed);
    bool pass = true;
    std::string failing;
    for (const auto& r : results) {
        if (!r.pass) {
            pass = false;
            failing += r.group + " ";
        }
    }
    return report(9, "validation suites all green", pass,
                  (pass ? fmt("%zu groups, ", results.size()) : failing) +
                      fmt("%.1fs", timer.seconds()));
}

}  // namespace

int main() {
    bool all = true;
    all &= criterion1();
    all &= criterion2();
    all &= criterion3();
    all &= criterion4();
    all &= criterion5();
    all &= criterion6();
    all &= criterion7();
    all &= criterion8();
    all &= criterion9();
    std::printf("acceptance: %s\n", all ? "ALL PASS" : "FAILURES");
    return all ? 0 : 1;
}
