#pragma once

// The five base-shifted Bailey pairs, stored as closed-form case tables and
// Pochhammer quotients. A built-in copy is compiled in; the same data can be
// loaded from (and written to) a JSON file.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "a22/bailey.hpp"
#include "a22/laurent.hpp"

namespace a22 {

/// alpha~_m = sign * q^((quadratic m^2 + linear m) / denominator) for m in
/// the given residue class mod 3 (-1, 0 or +1). sign 0 means alpha~_m = 0.
struct AlphaCase {
    int residue = 0;
    int sign = 0;
    Exponent quadratic = 0;
    Exponent linear = 0;

    friend bool operator==(const AlphaCase&, const AlphaCase&) = default;
};

/// (sign q^base_exp; q^step)_{length_mult * n}
struct BetaPoch {
    int sign = 1;
    Exponent base_exp = 1;
    Exponent step = 1;
    Exponent length_mult = 1;

    friend bool operator==(const BetaPoch&, const BetaPoch&) = default;
};

struct RegistryEntry {
    int id = 0;
    int base_exp = 1;
    std::string source;
    std::vector<std::string> moduli;

    Exponent alpha_denominator = 1;
    std::vector<AlphaCase> alpha_cases; // residues -1, 0, +1

    // beta_n = q^((q_quadratic n^2 + q_linear n) / q_denominator)
    //          * prod numerator / prod denominator
    Exponent beta_q_quadratic = 0;
    Exponent beta_q_linear = 0;
    Exponent beta_q_denominator = 1;
    std::vector<BetaPoch> beta_numerator;
    std::vector<BetaPoch> beta_denominator;

    friend bool operator==(const RegistryEntry&, const RegistryEntry&) = default;
};

/// Throws DataError describing the first inconsistency.
void validate(const RegistryEntry& e);

LaurentSeries registry_alpha_tilde(const RegistryEntry& e, int n, Exponent order);
LaurentSeries registry_beta(const RegistryEntry& e, int n, Exponent order);
/// Exponent of the monomial prefactor of beta_n, which is its valuation.
Exponent registry_beta_valuation(const RegistryEntry& e, int n);
BaileyPair make_pair(const RegistryEntry& e);

nlohmann::json to_json(const RegistryEntry& e);
RegistryEntry entry_from_json(const nlohmann::json& j);

class Registry {
public:
    /// The compiled-in copy of the five pairs.
    static const Registry& builtin();
    /// Parse and validate; DataError on any problem.
    static Registry from_json(const nlohmann::json& j);
    static Registry load(const std::filesystem::path& path);

    nlohmann::json to_json() const;

    const std::vector<RegistryEntry>& entries() const { return entries_; }
    /// RangeError for an unknown id.
    const RegistryEntry& entry(int id) const;
    /// A fresh pair with its own memo tables.
    BaileyPair pair(int id) const;

    friend bool operator==(const Registry&, const Registry&) = default;

private:
    std::vector<RegistryEntry> entries_;
};

} // namespace a22
