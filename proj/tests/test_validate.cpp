#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfn/validate.hpp"

using namespace qfn;

TEST_CASE("KS p-value is calibrated on its null") {
    // exact uniform grid should look maximally compatible
    std::vector<double> grid;
    for (int i = 0; i < 1000; ++i) grid.push_back((i + 0.5) / 1000.0);
    CHECK(detail::ks_p_value(grid, [](double x) { return x; }) > 0.9);

    // grossly wrong CDF is rejected outright
    CHECK(detail::ks_p_value(grid, [](double x) { return x * x; }) < 1e-6);
}

TEST_CASE("individual validation groups pass with a fixed seed") {
    CHECK(check_linalg(1).pass);
    CHECK(check_trace_preservation(1).pass);
    CHECK(check_qfi_invariance(1).pass);
    CHECK(check_prefactor_scaling(1).pass);
}

TEST_CASE("validation report serializes one verdict per group") {
    std::vector<CheckResult> rs = {{"a", true, "ok"}, {"b", false, "boom"}};
    const nlohmann::json j = validation_to_json(rs);
    CHECK(j.at("pass") == false);
    REQUIRE(j.at("groups").size() == 2);
    CHECK(j["groups"][0].at("group") == "a");
    CHECK(j["groups"][1].at("pass") == false);
    CHECK(validation_to_json({{"a", true, "ok"}}).at("pass") == true);
}
