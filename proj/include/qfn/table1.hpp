#pragma once

#include <array>
#include <string>

#include "qfn/local_basis.hpp"
#include "qfn/states.hpp"

namespace qfn {

/// Expected mean-QFI values, stored as exact rationals in a fixed
/// reference row order. These are the regression surface for the
/// `table1` command and the acceptance suite.
struct Table1Row {
    std::size_t d;
    std::size_t n;
    const char* basis_id;
    const char* state_id;
    long col_num, col_den;        // collective mean QFI
    long noncol_num, noncol_den;  // non-collective mean QFI

    double collective() const { return static_cast<double>(col_num) / col_den; }
    double noncollective() const { return static_cast<double>(noncol_num) / noncol_den; }
};

inline const std::array<Table1Row, 18>& table1_rows() {
    static const std::array<Table1Row, 18> rows = {{
        {2, 4, "pauli", "ghz4_2", 8, 1, 4, 1},
        {2, 4, "pauli", "dicke4_1", 20, 3, 11, 3},
        {2, 4, "pauli", "dicke4_2", 8, 1, 4, 1},
        {2, 6, "pauli", "ghz6_2", 16, 1, 6, 1},
        {2, 6, "pauli", "ame6_2", 6, 1, 6, 1},
        {2, 6, "pauli", "dicke6_3", 16, 1, 6, 1},
        {3, 4, "spin", "ghz4_3", 64, 3, 32, 3},
        {3, 4, "spin", "ame4_3", 32, 3, 32, 3},
        {3, 4, "spin", "q4_1", 44, 3, 23, 3},
        {3, 4, "spin", "q4_2", 64, 3, 28, 3},
        {3, 4, "spin", "q4_3", 76, 3, 31, 3},
        {3, 4, "spin", "q4_4", 80, 3, 32, 3},
        {3, 4, "gellmann", "ghz4_3", 56, 3, 32, 3},
        {3, 4, "gellmann", "ame4_3", 32, 3, 32, 3},
        {3, 4, "gellmann", "q4_1", 14, 1, 19, 2},
        {3, 4, "gellmann", "q4_2", 806, 49, 991, 98},
        {3, 4, "gellmann", "q4_3", 842, 49, 1009, 98},
        {3, 4, "gellmann", "q4_4", 848, 49, 506, 49},
    }};
    return rows;
}

struct UnknownStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Constructs a named state from the catalog used in the table and the
/// figure data.
inline PureState make_state(const std::string& id) {
    if (id == "ghz4_2") return ghz_state(4, 2);
    if (id == "ghz6_2") return ghz_state(6, 2);
    if (id == "ghz4_3") return ghz_state(4, 3);
    if (id == "dicke4_1") return dicke_state(4, 1);
    if (id == "dicke4_2") return dicke_state(4, 2);
    if (id == "dicke6_3") return dicke_state(6, 3);
    if (id == "ame6_2") return ame_state(AmeId::Ame6Qubit);
    if (id == "ame4_3") return ame_state(AmeId::Ame4Qutrit);
    if (id == "q4_1") return qutrit_dicke(1);
    if (id == "q4_2") return qutrit_dicke(2);
    if (id == "q4_3") return qutrit_dicke(3);
    if (id == "q4_4") return qutrit_dicke(4);
    throw UnknownStateError("unknown state id: " + id);
}

}  // namespace qfn
