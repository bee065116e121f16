#include "a22/characters.hpp"

#include "a22/errors.hpp"
#include "a22/qproducts.hpp"
#include "a22/registry.hpp"

namespace a22 {

void validate(const ModuleLabel& m) {
    if (m.s0 < 0 || m.s1 < 0) throw RangeError("module labels must be nonnegative");
    if (m.level() < 1) throw RangeError("module level must be at least 1");
}

std::vector<ModuleLabel> labels_at_level(int level) {
    if (level < 1) throw RangeError("level must be at least 1");
    std::vector<ModuleLabel> out;
    for (int s1 = 0; 2 * s1 <= level; ++s1) out.push_back({level - 2 * s1, s1});
    return out;
}

std::array<Exponent, 5> product_bases(const ModuleLabel& m) {
    const Exponent l = m.level();
    return {m.s1 + 1, m.s0 + m.s1 + 2, l + 3, m.s0 + 1, m.s0 + 4 * m.s1 + 5};
}

LaurentSeries char_product(const ModuleLabel& m, Exponent order) {
    validate(m);
    const Exponent l = m.level();
    const auto b = product_bases(m);
    const std::array<Exponent, 3> first{b[0], b[1], b[2]};
    const std::array<Exponent, 2> second{b[3], b[4]};
    LaurentSeries v = mul(poch_inf_product(first, l + 3, order), poch_inf_product(second, 2 * l + 6, order), order);
    return mul(v, partition_series(order), order);
}

LaurentSeries char_qtpi(const ModuleLabel& m, Exponent order) {
    validate(m);
    return mul(qtpi_product(m.level() + 3, -m.s1 - 1, order), partition_series(order), order);
}

ModuleLabel table2_module(int pair_id, Kind kind, int k, int i) {
    const Schedule s{kind, k, i, pair_id};
    validate(s);
    const Table2Row& row = table2_row(pair_id, kind);
    const int s1 = row.s1(k, i);
    return {row.level(k) - 2 * s1, s1};
}

ModuleLabel table2_module(const Schedule& s) { return table2_module(s.pair_id, s.kind, s.k, s.i); }

bool verify_character_identity(const Schedule& s, const ModuleLabel& m, Exponent order) {
    validate(m);
    if (!verify_limit_identity(s, order)) return false;
    const LaurentSeries product =
        mul(alpha_side_factor(s), qtpi_product(m.level() + 3, -m.s1 - 1, order), order);
    return eq_to_order(alpha_side(s, order), product, order);
}

bool verify_character_identity(int pair_id, Kind kind, int k, int i, Exponent order) {
    const Schedule s{kind, k, i, pair_id};
    return verify_character_identity(s, table2_module(s), order);
}

LaurentSeries normalization(const Schedule& s) {
    const int c = Registry::builtin().entry(s.pair_id).base_exp;
    return mul(alpha_side_factor(s), poch_finite(PochFactor{1, 1, 1}, c - 1, kExactOrder));
}

} // namespace a22
