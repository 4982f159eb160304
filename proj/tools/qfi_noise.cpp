// qfi-noise: command-line front end for the averaged-QFI library.
//
// Subcommands:
//   table1      analytic (and optionally Monte Carlo) mean-QFI table
//   curve       fidelity / bound curve on a time grid, CSV or JSON
//   ghz5        five-qubit GHZ symmetric-subspace population report
//   validate    invariant suite with a machine-readable JSON verdict
//   sample-ham  dump sampled coefficient vectors and embedded Hamiltonians
//
// Exit codes: 0 = all checks pass, 1 = numeric mismatch, 2 = usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfn/io.hpp"
#include "qfn/table1.hpp"
#include "qfn/validate.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
    std::string state = "ghz4_2";
    std::string basis = "pauli";
    std::string ensemble = "sphere";
    std::string mode = "collective";
    double t_start = 0.0;
    double t_stop = -1.0;  // negative: default to t*
    std::size_t t_points = 50;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string out;  // empty: stdout
    std::string format = "csv";
    std::size_t mc = 0;  // table1: MC column sample count (0 = analytic only)
    std::size_t n = 4;   // sample-ham: particle count
    std::size_t d = 2;   // sample-ham: local dimension
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Loads defaults from a JSON file whose keys mirror the long flags
/// (without the leading dashes). Flags given on the command line
/// override these values because CLI11 only writes bound variables for
/// options that were actually passed.
void load_config(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    auto get = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("state", cfg.state);
    get("basis", cfg.basis);
    get("ensemble", cfg.ensemble);
    get("mode", cfg.mode);
    get("t-start", cfg.t_start);
    get("t-stop", cfg.t_stop);
    get("t-points", cfg.t_points);
    get("samples", cfg.samples);
    get("out", cfg.out);
    get("format", cfg.format);
    get("mc", cfg.mc);
    get("n", cfg.n);
    get("d", cfg.d);
    if (j.contains("seed")) {
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.seed_given = true;
    }
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) throw UsageError("cannot open output file: " + cfg.out);
    out << text;
}

void require_seed(const RunConfig& cfg) {
    if (!cfg.seed_given)
        throw UsageError("this command draws Monte Carlo samples; --seed is required");
}

std::vector<double> time_grid(const RunConfig& cfg, double fallback_stop) {
    const double stop = cfg.t_stop < 0.0 ? fallback_stop : cfg.t_stop;
    if (cfg.t_points == 0) throw UsageError("--t-points must be positive");
    if (cfg.t_points > 1 && stop <= cfg.t_start)
        throw UsageError("t grid must be strictly increasing (t-stop > t-start)");
    std::vector<double> grid;
    grid.reserve(cfg.t_points);
    if (cfg.t_points == 1) {
        grid.push_back(cfg.t_start);
        return grid;
    }
    for (std::size_t i = 0; i < cfg.t_points; ++i)
        grid.push_back(cfg.t_start +
                       (stop - cfg.t_start) * static_cast<double>(i) / (cfg.t_points - 1));
    return grid;
}

json matrix_to_json(const qfn::ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_table1(const RunConfig& cfg) {
    if (cfg.mc > 0) require_seed(cfg);

    struct Computed {
        const qfn::Table1Row* row;
        double col, noncol;
        qfn::McEstimate mc_col, mc_noncol;
    };
    std::vector<Computed> results;
    double max_dev = 0.0;
    for (const auto& row : qfn::table1_rows()) {
        const qfn::PureState psi = qfn::make_state(row.state_id);
        const qfn::LocalBasis basis = qfn::make_basis(row.basis_id, row.d);
        const qfn::HamiltonianEnsemble ens(qfn::EnsembleKind::SphereUniform, basis);
        Computed c;
        c.row = &row;
        c.col = qfn::mean_qfi_pure_tensor_collective(psi, basis, ens);
        c.noncol = qfn::mean_qfi_pure_tensor_noncollective(psi, basis, ens);
        max_dev = std::max({max_dev, std::abs(c.col - row.collective()),
                            std::abs(c.noncol - row.noncollective())});
        if (cfg.mc > 0) {
            const qfn::DensityMatrix rho = qfn::density_matrix(psi);
            c.mc_col = qfn::mc_mean_qfi(rho, basis, ens, qfn::EmbedMode::Collective,
                                        cfg.mc, cfg.seed);
            c.mc_noncol = qfn::mc_mean_qfi(rho, basis, ens, qfn::EmbedMode::Noncollective,
                                           cfg.mc, cfg.seed + 1);
        }
        results.push_back(c);
    }

    std::ostringstream text;
    text << std::setprecision(15);
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& c : results) {
            json r = {{"d", c.row->d},
                      {"n", c.row->n},
                      {"basis", c.row->basis_id},
                      {"state", c.row->state_id},
                      {"collective", c.col},
                      {"noncollective", c.noncol}};
            if (cfg.mc > 0) {
                r["mc_collective"] = c.mc_col.estimate;
                r["mc_collective_stderr"] = c.mc_col.std_error;
                r["mc_noncollective"] = c.mc_noncol.estimate;
                r["mc_noncollective_stderr"] = c.mc_noncol.std_error;
            }
            rows.push_back(std::move(r));
        }
        text << json{{"rows", rows}, {"max_deviation", max_dev}}.dump(2) << "\n";
    } else {
        text << "d,n,basis,state,collective,noncollective";
        if (cfg.mc > 0)
            text << ",mc_collective,mc_collective_stderr"
                    ",mc_noncollective,mc_noncollective_stderr";
        text << "\n";
        for (const auto& c : results) {
            text << c.row->d << ',' << c.row->n << ',' << c.row->basis_id << ','
                 << c.row->state_id << ',' << c.col << ',' << c.noncol;
            if (cfg.mc > 0)
                text << ',' << c.mc_col.estimate << ',' << c.mc_col.std_error << ','
                     << c.mc_noncol.estimate << ',' << c.mc_noncol.std_error;
            text << "\n";
        }
        text << "# max_deviation=" << max_dev << "\n";
    }
    write_output(cfg, text.str());
    return max_dev > 1e-9 ? 1 : 0;
}

int cmd_curve(const RunConfig& cfg) {
    const qfn::ChannelMode mode = qfn::parse_channel_mode(cfg.mode);
    if (mode == qfn::ChannelMode::Twirl)
        throw UsageError("curve: the twirl channel has no QFI bound; "
                         "use collective or noncollective");
    const qfn::PureState psi = qfn::make_state(cfg.state);
    const qfn::LocalBasis basis = qfn::make_basis(cfg.basis, psi.d);
    const qfn::HamiltonianEnsemble ens(qfn::parse_ensemble_kind(cfg.ensemble), basis);

    const double mean_qfi =
        mode == qfn::ChannelMode::Collective
            ? qfn::mean_qfi_pure_tensor_collective(psi, basis, ens)
            : qfn::mean_qfi_pure_tensor_noncollective(psi, basis, ens);
    const double ts = qfn::t_star(mean_qfi);
    const std::vector<double> grid = time_grid(cfg, ts);

    const bool quadrature = mode == qfn::ChannelMode::Collective &&
                            ens.kind == qfn::EnsembleKind::SphereUniform &&
                            basis.r() == 3;
    if (!quadrature) require_seed(cfg);

    qfn::ChannelSpec spec;
    spec.mode = mode;
    spec.ensemble = ens;
    spec.samples = cfg.samples;
    spec.seed = cfg.seed;
    const qfn::FidelityCurve curve =
        qfn::fidelity_curve(psi, spec, grid, mean_qfi, cfg.state);

    std::ostringstream text;
    text << std::setprecision(15);
    const bool beyond = grid.back() > 1.05 * ts;
    if (cfg.format == "json") {
        json j = {{"state", curve.state_id},
                  {"mode", qfn::to_string(curve.mode)},
                  {"ensemble", curve.ensemble_id},
                  {"seed", curve.seed},
                  {"samples", curve.samples},
                  {"mean_qfi", curve.mean_qfi},
                  {"t_star", curve.tstar},
                  {"t", curve.times},
                  {"fidelity", curve.fidelity},
                  {"fidelity_stderr", curve.std_error},
                  {"bound", curve.bound}};
        json win = json::array();
        for (bool v : curve.valid_window) win.push_back(v);
        j["valid_window"] = std::move(win);
        if (beyond) j["warning"] = "grid extends beyond 1.05 * t_star";
        text << j.dump(2) << "\n";
    } else {
        if (beyond) text << "# warning: grid extends beyond 1.05 * t_star\n";
        text << qfn::curve_to_csv(curve);
    }
    write_output(cfg, text.str());
    return 0;
}

int cmd_ghz5(const RunConfig& cfg) {
    require_seed(cfg);
    const double two_pi = 6.283185307179586476925286766559;
    const std::vector<double> grid = time_grid(cfg, two_pi);

    std::ostringstream text;
    text << std::setprecision(15);
    text << "t,zeta1,zeta2,zeta3,zeta4,pop_d1,pop_d2,pop_d3,pop_d4,pop_ghzp,pop_ghzm,"
            "max_dev,leakage\n";
    double overall_dev = 0.0;
    for (double t : grid) {
        const auto z = qfn::ghz5_coefficients(t);
        const auto mc = qfn::ghz5_populations_mc(t, cfg.samples, cfg.seed);
        const std::array<double, 6> expect = {z.zeta[0], z.zeta[1], z.zeta[1],
                                              z.zeta[0], z.zeta[2], z.zeta[3]};
        double dev = 0.0;
        for (std::size_t b = 0; b < 6; ++b)
            dev = std::max(dev, std::abs(mc.populations[b] - expect[b]));
        overall_dev = std::max(overall_dev, dev);
        text << t << ',' << z.zeta[0] << ',' << z.zeta[1] << ',' << z.zeta[2] << ','
             << z.zeta[3];
        for (double p : mc.populations) text << ',' << p;
        text << ',' << dev << ',' << mc.leakage << "\n";
    }

    // normalization and the never-uniform statistic on a fine grid
    double max_norm_err = 0.0, min_spread = 2.0;
    for (int i = 0; i < 10000; ++i) {
        const double t = two_pi * (i + 0.5) / 10000.0;
        const auto z = qfn::ghz5_coefficients(t);
        max_norm_err = std::max(
            max_norm_err,
            std::abs(2.0 * z.zeta[0] + 2.0 * z.zeta[1] + z.zeta[2] + z.zeta[3] - 1.0));
        const double hi = std::max({z.zeta[0], z.zeta[1], z.zeta[2], z.zeta[3]});
        const double lo = std::min({z.zeta[0], z.zeta[1], z.zeta[2], z.zeta[3]});
        min_spread = std::min(min_spread, hi - lo);
    }
    text << "# max_dev=" << overall_dev << " max_norm_err=" << max_norm_err
         << " min_spread=" << min_spread << "\n";
    write_output(cfg, text.str());

    const double tolerance = cfg.samples >= 100000 ? 5e-3 : 5e-2;
    return (overall_dev > tolerance || max_norm_err > 1e-12 || min_spread <= 0.0) ? 1 : 0;
}

int cmd_validate(const RunConfig& cfg) {
    const auto results = qfn::run_validation(cfg.seed);
    const json j = qfn::validation_to_json(results);
    write_output(cfg, j.dump(2) + "\n");
    return j.at("pass").get<bool>() ? 0 : 1;
}

int cmd_sample_ham(const RunConfig& cfg) {
    require_seed(cfg);
    const qfn::ChannelMode mode = qfn::parse_channel_mode(cfg.mode);
    if (mode == qfn::ChannelMode::Twirl)
        throw UsageError("sample-ham: twirling draws unitaries, not Hamiltonians");
    const qfn::LocalBasis basis = qfn::make_basis(cfg.basis, cfg.d);
    const qfn::HamiltonianEnsemble ens(qfn::parse_ensemble_kind(cfg.ensemble), basis);

    json dump = {{"basis", cfg.basis}, {"d", cfg.d},
                 {"n", cfg.n},         {"ensemble", cfg.ensemble},
                 {"mode", cfg.mode},   {"seed", cfg.seed},
                 {"mean_purity", qfn::mean_purity(ens)}};
    json samples = json::array();
    for (std::size_t k = 0; k < cfg.samples; ++k) {
        qfn::CounterRng rng(cfg.seed, k);
        json entry;
        if (mode == qfn::ChannelMode::Collective) {
            const auto alpha = qfn::sample(ens, rng);
            entry["alpha"] = alpha;
            entry["matrix"] =
                matrix_to_json(qfn::embed_collective(alpha, basis, cfg.n).matrix);
        } else {
            std::vector<std::vector<double>> alphas(cfg.n);
            for (auto& a : alphas) a = qfn::sample(ens, rng);
            entry["alphas"] = alphas;
            entry["matrix"] =
                matrix_to_json(qfn::embed_noncollective(alphas, basis, cfg.n).matrix);
        }
        samples.push_back(std::move(entry));
    }
    dump["samples"] = std::move(samples);
    write_output(cfg, dump.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // pre-pass: apply --config before CLI11 binds the flags, so that
    // explicit flags override file values
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                load_config(argv[i + 1], cfg);
            } else if (arg.rfind("--config=", 0) == 0) {
                load_config(arg.substr(9), cfg);
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Averaged quantum Fisher information and random-noise channels"};
    app.require_subcommand(1);

    std::string config_path;  // consumed by the pre-pass; registered so CLI11 accepts it

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file mirroring the flags");
        sub->add_option("--out", cfg.out, "output path (default: stdout)");
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        auto* seed = sub->add_option("--seed", cfg.seed, "Monte Carlo seed");
        seed->each([&](const std::string&) { cfg.seed_given = true; });
        sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    };

    CLI::App* table1 = app.add_subcommand("table1", "analytic mean-QFI table");
    add_common(table1);
    table1->add_option("--mc", cfg.mc, "append MC columns with this sample count");

    CLI::App* curve = app.add_subcommand("curve", "fidelity and bound on a time grid");
    add_common(curve);
    curve->add_option("--state", cfg.state, "state id (e.g. ghz4_2, dicke6_3, ame4_3)");
    curve->add_option("--basis", cfg.basis, "pauli, spin or gellmann")
        ->check(CLI::IsMember({"pauli", "spin", "gellmann"}));
    curve->add_option("--ensemble", cfg.ensemble, "sphere, gue or goe")
        ->check(CLI::IsMember({"sphere", "gue", "goe"}));
    curve->add_option("--mode", cfg.mode, "collective, noncollective or twirl")
        ->check(CLI::IsMember({"collective", "noncollective", "twirl"}));
    curve->add_option("--t-start", cfg.t_start, "grid start");
    curve->add_option("--t-stop", cfg.t_stop, "grid stop (default: t*)");
    curve->add_option("--t-points", cfg.t_points, "grid point count");

    CLI::App* ghz5 = app.add_subcommand("ghz5", "five-qubit GHZ population report");
    add_common(ghz5);
    ghz5->add_option("--t-start", cfg.t_start, "grid start");
    ghz5->add_option("--t-stop", cfg.t_stop, "grid stop (default: 2 pi)");
    ghz5->add_option("--t-points", cfg.t_points, "grid point count");

    CLI::App* validate = app.add_subcommand("validate", "run the invariant suites");
    add_common(validate);

    CLI::App* sample_ham = app.add_subcommand("sample-ham", "dump sampled Hamiltonians");
    add_common(sample_ham);
    sample_ham->add_option("--basis", cfg.basis, "pauli, spin or gellmann")
        ->check(CLI::IsMember({"pauli", "spin", "gellmann"}));
    sample_ham->add_option("--d", cfg.d, "local dimension");
    sample_ham->add_option("--n", cfg.n, "particle count");
    sample_ham->add_option("--ensemble", cfg.ensemble, "sphere, gue or goe")
        ->check(CLI::IsMember({"sphere", "gue", "goe"}));
    sample_ham->add_option("--mode", cfg.mode, "collective or noncollective")
        ->check(CLI::IsMember({"collective", "noncollective"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table1->parsed()) return cmd_table1(cfg);
        if (curve->parsed()) return cmd_curve(cfg);
        if (ghz5->parsed()) return cmd_ghz5(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        if (sample_ham->parsed()) return cmd_sample_ham(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
