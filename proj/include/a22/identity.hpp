#pragma once

// Identity records: one verified sum = product identity per schedule, with
// JSON, text and LaTeX emitters and the level-ordered catalog.

#include <string>
#include <vector>

#include <json.hpp>

#include "a22/characters.hpp"
#include "a22/lattice.hpp"
#include "a22/multisum.hpp"

namespace a22 {

inline constexpr int kIdentitySchemaVersion = 1;

/// (q^b1, ..., q^bm; q^step)_inf
struct ProductFactor {
    std::vector<Exponent> bases;
    Exponent step = 1;
    friend bool operator==(const ProductFactor&, const ProductFactor&) = default;
};

struct SimplifiedRecord {
    std::string name;
    std::string latex;
    bool verified = false;
    friend bool operator==(const SimplifiedRecord&, const SimplifiedRecord&) = default;
};

struct IdentityRecord {
    int schema_version = kIdentitySchemaVersion;
    Schedule schedule;
    std::vector<std::string> moves;
    ModuleLabel label;
    /// sum_side = normalization * numerator / denominator
    std::string normalization;        // canonical series text
    std::string normalization_latex;  // e.g. "(1-q)"
    MultisumSpec sum_side;
    std::vector<ProductFactor> numerator;
    std::vector<ProductFactor> denominator;
    std::vector<SimplifiedRecord> simplified;
    Exponent order = 0;
    bool stable = false;  // sum side unchanged when the summation cap grows by 2
    std::string status;   // "verified" or "failed"
    friend bool operator==(const IdentityRecord&, const IdentityRecord&) = default;

    bool verified() const { return status == "verified"; }
};

/// Runs the full chain for s at the given order and fills in the record.
IdentityRecord build_record(const Schedule& s, Exponent order);

/// Every schedule whose module has level <= max_level, ordered by level,
/// pair, kind and i.
std::vector<Schedule> catalog_schedules(int max_level);

/// build_record over catalog_schedules on `jobs` threads; the output order
/// does not depend on jobs.
std::vector<IdentityRecord> build_catalog(int max_level, Exponent order, int jobs = 1);

nlohmann::json to_json(const IdentityRecord& r);
/// DataError on malformed input or an unknown schema version.
IdentityRecord identity_from_json(const nlohmann::json& j);

std::string to_text(const IdentityRecord& r);
/// One equation environment, plus one per simplified form.
std::string to_latex(const IdentityRecord& r);
/// A standalone amsmath document with a section per level.
std::string latex_document(const std::vector<IdentityRecord>& records);

/// Polynomial in q as LaTeX, parenthesized when it has several terms.
std::string polynomial_latex(const LaurentSeries& p);

} // namespace a22
