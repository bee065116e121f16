#pragma once

// q-Pochhammer symbols with bases of the form +-q^m, Euler's product, and
// the quintuple product identity in product form and three series forms.

#include <span>
#include <string>
#include <utility>

#include "a22/laurent.hpp"

namespace a22 {

/// The symbol (sign * q^base_exp; q^step).
struct PochFactor {
    int sign = 1;
    Exponent base_exp = 1;
    Exponent step = 1;

    friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

/// Renders e.g. "(q^2;q)" or "(-1;q^3)".
std::string to_string(const PochFactor& f);

/// prod_{0 <= t < n} (1 - sign * q^(base_exp + t*step)), exact to `order`.
LaurentSeries poch_finite(const PochFactor& f, Exponent n, Exponent order);

/// The infinite product, exact to `order`. Requires base_exp > 0, or
/// sign == -1 and base_exp >= 0; otherwise RangeError.
LaurentSeries poch_inf(const PochFactor& f, Exponent order);

/// (q^b_1, ..., q^b_r; q^step)_inf, exact to `order`.
LaurentSeries poch_inf_product(std::span<const Exponent> bases, Exponent step, Exponent order);

/// prod (1 - s_i q^(e_i)) over finitely many signed binomials, exact to
/// `order`. Exponents may be zero or negative.
LaurentSeries binomial_product(std::span<const std::pair<int, Exponent>> factors, Exponent order);

/// (q;q)_inf by the pentagonal number theorem.
LaurentSeries euler_product(Exponent order);

/// 1/(q;q)_inf, i.e. the partition generating function, by Euler's
/// pentagonal recurrence.
LaurentSeries partition_series(Exponent order);

enum class QtpiForm { I, II, III };

/// Q(q^u, q^v) from the five-fold infinite product.
LaurentSeries qtpi_product(Exponent u, Exponent v, Exponent order);

/// Q(q^u, q^v) from one of the three series rearrangements.
LaurentSeries qtpi_sum(Exponent u, Exponent v, QtpiForm form, Exponent order);

} // namespace a22
