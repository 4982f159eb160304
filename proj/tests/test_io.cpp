#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "qfn/io.hpp"
#include "qfn/table1.hpp"

using namespace qfn;

TEST_CASE("state JSON round-trip preserves amplitudes exactly") {
    CounterRng rng(3, 1);
    const PureState psi = haar_random_state(2, 3, rng);
    const PureState back = state_from_json(state_to_json(psi));
    REQUIRE(back.dim() == psi.dim());
    CHECK(back.n == psi.n);
    CHECK(back.d == psi.d);
    for (std::size_t i = 0; i < psi.dim(); ++i) CHECK(back.amplitudes[i] == psi.amplitudes[i]);
}

TEST_CASE("state JSON validates the amplitude count") {
    nlohmann::json j = state_to_json(ghz_state(2, 2));
    j["amplitudes"].erase(0);
    CHECK_THROWS_AS(state_from_json(j), std::invalid_argument);
}

TEST_CASE("summary JSON carries the analytic fields") {
    QfiSummary s;
    s.state_id = "ghz4_2";
    s.basis_id = "pauli";
    s.ensemble_id = "sphere";
    s.mean_qfi_collective = 8.0;
    s.mean_qfi_noncollective = 4.0;
    s.omega = 0.5 * std::sqrt(8.0);
    s.t_star = t_star(8.0);
    s.provenance = "tensor-form";
    const nlohmann::json j = summary_to_json(s);
    CHECK(j.at("state") == "ghz4_2");
    CHECK(j.at("mean_qfi_collective").get<double>() == 8.0);
    CHECK(j.at("t_star").get<double>() == doctest::Approx(t_star(8.0)));
}

TEST_CASE("curve CSV round-trips at 15 significant digits") {
    FidelityCurve c;
    c.state_id = "ghz4_2";
    c.mode = ChannelMode::Collective;
    c.ensemble_id = "sphere";
    c.seed = 42;
    c.samples = 0;
    c.mean_qfi = 8.0;
    c.tstar = t_star(8.0);
    c.times = {0.0, 0.1234567890123456, 0.777};
    c.fidelity = {1.0, 0.987654321098765, 0.5};
    c.std_error = {0.0, 1e-4, 2e-4};
    c.bound = {1.0, 0.9, 0.1};
    c.valid_window = {true, true, false};

    const std::string csv = curve_to_csv(c);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# state=ghz4_2", 0) == 0);
    std::getline(in, line);
    CHECK(line == "t,fidelity,fidelity_stderr,bound,valid_window");
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        REQUIRE(std::getline(in, line));
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        CHECK(std::stod(field) == doctest::Approx(c.times[i]).epsilon(1e-14));
        std::getline(row, field, ',');
        CHECK(std::stod(field) == doctest::Approx(c.fidelity[i]).epsilon(1e-14));
        std::getline(row, field, ',');
        CHECK(std::stod(field) == doctest::Approx(c.std_error[i]).epsilon(1e-14));
        std::getline(row, field, ',');
        CHECK(std::stod(field) == doctest::Approx(c.bound[i]).epsilon(1e-14));
        std::getline(row, field, ',');
        CHECK(field == (c.valid_window[i] ? "1" : "0"));
    }
    CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("table rows store exact rationals in reference order") {
    const auto& rows = table1_rows();
    REQUIRE(rows.size() == 18);
    CHECK(rows[0].collective() == doctest::Approx(8.0));
    CHECK(rows[1].collective() == doctest::Approx(20.0 / 3.0));
    CHECK(rows[15].collective() == doctest::Approx(806.0 / 49.0));
    CHECK(rows[15].noncollective() == doctest::Approx(991.0 / 98.0));
    CHECK(rows[17].noncollective() == doctest::Approx(506.0 / 49.0));
    // collective average always dominates or ties the non-collective one
    for (const auto& r : rows) CHECK(r.collective() >= r.noncollective() - 1e-12);
}
