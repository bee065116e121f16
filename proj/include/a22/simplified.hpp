#pragma once

// Reduced forms of some sum sides, obtained by collapsing inner sums with the
// b1bc1 and f2b1 lemmas. Each form must agree with sum_side for its schedule.

#include <functional>
#include <string>
#include <vector>

#include "a22/lattice.hpp"
#include "a22/laurent.hpp"
#include "a22/multisum.hpp"

namespace a22 {

struct SimplifiedForm {
    Schedule schedule;
    std::string name;
    std::string latex;
    /// Either a signed combination of multisums...
    std::vector<MultisumSpec> terms;
    /// ...or a direct evaluator.
    std::function<LaurentSeries(Exponent)> custom;

    LaurentSeries evaluate(Exponent order) const;
};

const std::vector<SimplifiedForm>& simplified_catalog();

/// Forms cataloged for s, possibly none.
std::vector<const SimplifiedForm*> simplified_forms(const Schedule& s);

/// The first cataloged form for s. RangeError if there is none.
LaurentSeries simplified_sum_side(const Schedule& s, Exponent order);

} // namespace a22
