#pragma once

// Principal characters of the level-l standard modules L(s0, s1) of the
// twisted affine algebra A_2^(2), l = s0 + 2 s1.

#include <array>
#include <vector>

#include "a22/lattice.hpp"
#include "a22/laurent.hpp"

namespace a22 {

struct ModuleLabel {
    int s0 = 0;
    int s1 = 0;

    int level() const { return s0 + 2 * s1; }
    int modulus() const { return 2 * level() + 6; }

    friend bool operator==(const ModuleLabel&, const ModuleLabel&) = default;
};

/// RangeError unless s0, s1 >= 0 and level >= 1.
void validate(const ModuleLabel& m);

/// All labels (s0, s1) at the given level, s1 ascending.
std::vector<ModuleLabel> labels_at_level(int level);

/// Exponents b of the numerator factors (q^b; q^step)_inf: three with step
/// l + 3 followed by two with step 2l + 6.
std::array<Exponent, 5> product_bases(const ModuleLabel& m);

/// Product formula: (q^(s1+1), q^(s0+s1+2), q^(l+3); q^(l+3))_inf
/// (q^(s0+1), q^(s0+4s1+5); q^(2l+6))_inf / (q)_inf.
LaurentSeries char_product(const ModuleLabel& m, Exponent order);

/// Q(q^(l+3), q^(-s1-1)) / (q)_inf.
LaurentSeries char_qtpi(const ModuleLabel& m, Exponent order);

/// The module attached to a schedule by the schedule-to-module table.
ModuleLabel table2_module(int pair_id, Kind kind, int k, int i);
ModuleLabel table2_module(const Schedule& s);

/// sum_side * (a)_inf == alpha_side and alpha_side == rho * Q(q^(l+3), q^(-s1-1)),
/// with rho from alpha_side_factor.
bool verify_character_identity(int pair_id, Kind kind, int k, int i, Exponent order);
/// The same chain against an arbitrary label (for negative controls).
bool verify_character_identity(const Schedule& s, const ModuleLabel& m, Exponent order);

/// The constant N with sum_side = N * character: rho * (q; q)_(c-1) where
/// q^c is the registry base.
LaurentSeries normalization(const Schedule& s);

} // namespace a22
