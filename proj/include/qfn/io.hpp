#pragma once

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "qfn/channels.hpp"
#include "qfn/qfi.hpp"
#include "qfn/states.hpp"

namespace qfn {

/// {n, d, amplitudes: [[re, im], ...]}
inline nlohmann::json state_to_json(const PureState& psi) {
    nlohmann::json j;
    j["n"] = psi.n;
    j["d"] = psi.d;
    auto& amps = j["amplitudes"] = nlohmann::json::array();
    for (const auto& a : psi.amplitudes) amps.push_back({a.real(), a.imag()});
    return j;
}

inline PureState state_from_json(const nlohmann::json& j) {
    PureState psi;
    psi.n = j.at("n").get<std::size_t>();
    psi.d = j.at("d").get<std::size_t>();
    for (const auto& a : j.at("amplitudes"))
        psi.amplitudes.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    if (psi.amplitudes.size() != pow_sz(psi.d, psi.n))
        throw std::invalid_argument("state_from_json: amplitude count != d^n");
    return psi;
}

inline nlohmann::json summary_to_json(const QfiSummary& s) {
    return nlohmann::json{{"state", s.state_id},
                          {"basis", s.basis_id},
                          {"ensemble", s.ensemble_id},
                          {"mean_qfi_collective", s.mean_qfi_collective},
                          {"mean_qfi_noncollective", s.mean_qfi_noncollective},
                          {"omega", s.omega},
                          {"t_star", s.t_star},
                          {"provenance", s.provenance}};
}

/// CSV schema: `t,fidelity,fidelity_stderr,bound,valid_window` after a
/// header comment carrying the run context.
inline std::string curve_to_csv(const FidelityCurve& c) {
    std::ostringstream out;
    out << "# state=" << c.state_id << " mode=" << to_string(c.mode)
        << " ensemble=" << c.ensemble_id << " seed=" << c.seed
        << " samples=" << c.samples << " mean_qfi=" << std::setprecision(15) << c.mean_qfi
        << " t_star=" << c.tstar << "\n";
    out << "t,fidelity,fidelity_stderr,bound,valid_window\n";
    out << std::setprecision(15);
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        out << c.times[i] << ',' << c.fidelity[i] << ',' << c.std_error[i] << ','
            << c.bound[i] << ',' << (c.valid_window[i] ? 1 : 0) << "\n";
    }
    return out.str();
}

}  // namespace qfn
