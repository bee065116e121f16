#pragma once

// Nested sums over j_1 >= j_2 >= ... >= j_V >= 0 of the shape produced by
// the Bailey lattice:
//
//   prod_r (-1)^(sign_r j_r) a^(a_r j_r) q^(sq_r j_r^2 + lin_r j_r + bs_r C(j_r,2))
//          * (Pochhammer factors in j_r)
//   * prod_r q^(link_r C(j_r - j_(r+1), 2)) / (q)_(j_r - j_(r+1))
//   * beta_(j_V)
//
// with a = q^c. The finite version carries 1/(q)_(n - j_1), j_1 <= n and
// outer Pochhammer factors at index n; the limit version drops the former
// and takes the outer factors at infinity.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "a22/laurent.hpp"

namespace a22 {

/// (sign * a^a_power * q^q_offset; q)_index raised to power (+1 or -1).
struct PochTerm {
    int sign = -1;
    int a_power = 0;
    Exponent q_offset = 1;
    int power = 1;

    friend bool operator==(const PochTerm&, const PochTerm&) = default;
};

struct SumVariable {
    int a_coeff = 0;
    Exponent square = 0;
    Exponent linear = 0;
    Exponent binom_self = 0;
    bool sign = false;
    std::vector<PochTerm> poch;

    friend bool operator==(const SumVariable&, const SumVariable&) = default;
};

struct MultisumSpec {
    int pair_id = 0;
    int base_exp = 1;
    std::vector<SumVariable> vars;
    std::vector<Exponent> link_binom; // vars.size() - 1 entries
    std::vector<PochTerm> outer;
    int coefficient = 1; // overall +-1
    Exponent shift = 0;  // overall q^shift

    friend bool operator==(const MultisumSpec&, const MultisumSpec&) = default;
};

/// Throws RangeError for malformed specs (no variables, wrong link count,
/// inverted Pochhammer symbols that are not unit-leading).
void validate(const MultisumSpec& s);

Exponent variable_exponent(const MultisumSpec& s, std::size_t r, Exponent j);

/// The innermost sequence and a lower bound for the valuation of its terms.
struct BetaSource {
    std::function<LaurentSeries(int, Exponent)> beta;
    std::function<Exponent(int)> valuation;
};

BetaSource registry_beta_source(int pair_id);

struct MultisumStats {
    int cap = 0;           // largest j_1 that can contribute
    long cells = 0;        // (variable, value) cells evaluated
    long pruned = 0;       // cells skipped by the valuation bound
};

/// Limit n -> infinity, exact to order. extra_cap raises the j_1 cap (for the
/// stabilization check).
LaurentSeries evaluate_limit(const MultisumSpec& s, const BetaSource& b, Exponent order,
                             int extra_cap = 0, MultisumStats* stats = nullptr);
LaurentSeries evaluate_limit(const MultisumSpec& s, Exponent order, int extra_cap = 0,
                             MultisumStats* stats = nullptr);

/// Finite-n value, exact to order.
LaurentSeries evaluate_finite(const MultisumSpec& s, const BetaSource& b, int n, Exponent order);
LaurentSeries evaluate_finite(const MultisumSpec& s, int n, Exponent order);

/// Sums of several specs (collapsed numerators such as (1 - q^(2j)) split
/// into one spec per monomial).
LaurentSeries evaluate_limit(const std::vector<MultisumSpec>& terms, Exponent order);

/// True when raising the j_1 cap by 2 leaves the truncated limit unchanged.
bool certify_stable(const MultisumSpec& s, Exponent order);

nlohmann::json to_json(const MultisumSpec& s);
MultisumSpec multisum_from_json(const nlohmann::json& j);

/// LaTeX display of the limit sum with a written as q^c.
std::string to_latex(const MultisumSpec& s);

} // namespace a22
