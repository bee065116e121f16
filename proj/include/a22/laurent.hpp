#pragma once

// Truncated formal Laurent series in q with arbitrary-precision integer
// coefficients. A series with truncation order N is known exactly for every
// exponent <= N and unknown above. Values are immutable after construction.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace a22 {

using Exponent = std::int64_t;

/// Truncation order of series that are known exactly at every exponent
/// (polynomials, monomials). Arithmetic on it saturates.
inline constexpr Exponent kExactOrder = std::numeric_limits<Exponent>::max() / 4;

struct Term {
    Exponent exp;
    mpz_class coef;

    friend bool operator==(const Term&, const Term&) = default;
};

class LaurentSeries {
public:
    /// The exact zero series.
    LaurentSeries() = default;

    static LaurentSeries zero(Exponent trunc);
    static LaurentSeries one(Exponent trunc = kExactOrder);
    static LaurentSeries monomial(Exponent exp, const mpz_class& coef = 1,
                                  Exponent trunc = kExactOrder);
    /// Sorts, merges duplicate exponents, drops zeros and exponents above trunc.
    static LaurentSeries from_terms(std::vector<Term> terms, Exponent trunc);
    /// coefs[i] is the coefficient of q^(low + i).
    static LaurentSeries from_dense(Exponent low, std::vector<mpz_class> coefs,
                                    Exponent trunc);

    Exponent trunc() const { return trunc_; }
    bool is_exact() const { return trunc_ >= kExactOrder; }
    bool is_zero() const { return terms_.empty(); }
    /// Lowest stored exponent; trunc + 1 for a series that is zero to its
    /// truncation (a lower bound, since nothing above trunc is known).
    Exponent valuation() const;
    /// Highest stored exponent (requires a nonzero series).
    Exponent degree() const;
    std::span<const Term> terms() const { return terms_; }

    /// Exact coefficient of q^e. Throws PrecisionError when e > trunc.
    mpz_class coefficient(Exponent e) const;

    LaurentSeries truncated(Exponent order) const;

    /// Canonical text form: "trunc=N; e:c e:c ...", exponents ascending.
    /// Exact series print as "trunc=inf".
    std::string to_string() const;
    static LaurentSeries parse(std::string_view text);

    LaurentSeries operator-() const;

    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

private:
    std::vector<Term> terms_;
    Exponent trunc_ = kExactOrder;
};

LaurentSeries add(const LaurentSeries& x, const LaurentSeries& y);
LaurentSeries sub(const LaurentSeries& x, const LaurentSeries& y);
LaurentSeries scale(const LaurentSeries& x, const mpz_class& c);

/// Cauchy product. The result truncation is
/// min(x.trunc + val(y), y.trunc + val(x)), further capped at `cap`; every
/// coefficient at or below it is exact.
LaurentSeries mul(const LaurentSeries& x, const LaurentSeries& y,
                  Exponent cap = kExactOrder);

/// Multiplication by q^m.
LaurentSeries shift(const LaurentSeries& x, Exponent m);

/// Multiplicative inverse of a series whose lowest coefficient is +1 or -1.
/// For x = q^v * u the result is exact to x.trunc - 2v, capped at `order`;
/// exact inputs therefore need a finite `order`.
LaurentSeries invert(const LaurentSeries& x, Exponent order = kExactOrder);

/// True iff all coefficients at exponents <= n agree. Throws PrecisionError if
/// n exceeds either truncation.
bool eq_to_order(const LaurentSeries& x, const LaurentSeries& y, Exponent n);

/// Lowest exponent where x and y differ, if any at or below n.
std::optional<Exponent> first_difference(const LaurentSeries& x, const LaurentSeries& y,
                                         Exponent n);

inline LaurentSeries operator+(const LaurentSeries& x, const LaurentSeries& y) { return add(x, y); }
inline LaurentSeries operator-(const LaurentSeries& x, const LaurentSeries& y) { return sub(x, y); }
inline LaurentSeries operator*(const LaurentSeries& x, const LaurentSeries& y) { return mul(x, y); }

/// Factor for the valuation floor: results whose valuation drops below
/// -factor * max(trunc, 100) raise RunawayError. Default 10.
void set_valuation_guard(int factor);
int valuation_guard();

/// Dense accumulator for sums of many series truncated at a common order.
/// The result truncation is min(order, truncations of everything added).
class SeriesSum {
public:
    explicit SeriesSum(Exponent order);

    void add(const LaurentSeries& s, int sign = 1);
    void add_monomial(Exponent e, const mpz_class& c);
    void add_monomial(Exponent e, long c);
    Exponent order() const { return order_; }
    LaurentSeries result() const;

private:
    void reserve_low(Exponent e);

    Exponent order_;
    Exponent trunc_;
    Exponent low_ = 0;
    std::vector<mpz_class> dense_;
};

} // namespace a22
