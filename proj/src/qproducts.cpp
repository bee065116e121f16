#include "a22/qproducts.hpp"

#include <algorithm>
#include <vector>

#include "a22/errors.hpp"

namespace a22 {

std::string to_string(const PochFactor& f)
{
    std::string base;
    if (f.base_exp == 0)
        base = "1";
    else if (f.base_exp == 1)
        base = "q";
    else
        base = "q^" + std::to_string(f.base_exp);
    std::string step = f.step == 1 ? "q" : "q^" + std::to_string(f.step);
    return "(" + std::string(f.sign < 0 ? "-" : "") + base + ";" + step + ")";
}

LaurentSeries binomial_product(std::span<const std::pair<int, Exponent>> factors, Exponent order)
{
    mpz_class constant = 1;
    Exponent offset = 0;
    std::vector<std::pair<int, Exponent>> positive;
    positive.reserve(factors.size());
    for (auto [s, e] : factors) {
        if (e > 0) {
            positive.emplace_back(s, e);
        } else if (e == 0) {
            constant *= (1 - s);
        } else {
            // 1 - s q^e = -s q^e (1 - s q^-e)
            constant *= -s;
            offset += e;
            positive.emplace_back(s, -e);
        }
    }
    if (constant == 0)
        return LaurentSeries::zero(order);
    if (order - offset < 0)
        return LaurentSeries::zero(order);
    // the product is a polynomial, so nothing lies above its degree
    Exponent degree = 0;
    for (auto [s, e] : positive)
        degree = std::min(degree + e, order - offset);
    const Exponent top = degree;
    std::vector<mpz_class> c(static_cast<std::size_t>(top + 1));
    c[0] = 1;
    Exponent reach = 0;
    for (auto [s, e] : positive) {
        if (e > top)
            continue;
        reach = std::min(top, reach + e);
        for (Exponent i = reach; i >= e; --i) {
            auto& dst = c[static_cast<std::size_t>(i)];
            const auto& src = c[static_cast<std::size_t>(i - e)];
            if (src == 0)
                continue;
            if (s > 0)
                dst -= src;
            else
                dst += src;
        }
    }
    if (constant != 1) {
        for (auto& x : c)
            x *= constant;
    }
    return LaurentSeries::from_dense(offset, std::move(c), order);
}

LaurentSeries poch_finite(const PochFactor& f, Exponent n, Exponent order)
{
    if (f.step < 1)
        throw RangeError("Pochhammer step must be positive");
    std::vector<std::pair<int, Exponent>> factors;
    for (Exponent t = 0; t < n; ++t) {
        const Exponent e = f.base_exp + t * f.step;
        // factors with e > order (and no negative partners) are 1 mod q^(order+1)
        if (e > order && f.base_exp >= 0)
            break;
        factors.emplace_back(f.sign, e);
    }
    return binomial_product(factors, order);
}

LaurentSeries poch_inf(const PochFactor& f, Exponent order)
{
    if (f.step < 1)
        throw RangeError("Pochhammer step must be positive");
    if (!(f.base_exp > 0 || (f.sign < 0 && f.base_exp >= 0)))
        throw RangeError("divergent or vanishing infinite product " + to_string(f));
    std::vector<std::pair<int, Exponent>> factors;
    for (Exponent e = f.base_exp; e <= order; e += f.step)
        factors.emplace_back(f.sign, e);
    return binomial_product(factors, order);
}

LaurentSeries poch_inf_product(std::span<const Exponent> bases, Exponent step, Exponent order)
{
    std::vector<std::pair<int, Exponent>> factors;
    for (Exponent b : bases) {
        if (b <= 0)
            throw RangeError("infinite product base exponent must be positive");
        for (Exponent e = b; e <= order; e += step)
            factors.emplace_back(1, e);
    }
    return binomial_product(factors, order);
}

LaurentSeries euler_product(Exponent order)
{
    SeriesSum sum(order);
    for (Exponent k = 0;; ++k) {
        const Exponent e1 = k * (3 * k - 1) / 2;
        const Exponent e2 = k * (3 * k + 1) / 2;
        if (e1 > order)
            break;
        const long sign = (k % 2 == 0) ? 1 : -1;
        sum.add_monomial(e1, sign);
        if (k > 0)
            sum.add_monomial(e2, sign);
    }
    return sum.result();
}

LaurentSeries partition_series(Exponent order)
{
    if (order < 0)
        return LaurentSeries::zero(order);
    std::vector<mpz_class> p(static_cast<std::size_t>(order + 1));
    p[0] = 1;
    for (Exponent n = 1; n <= order; ++n) {
        mpz_class acc = 0;
        for (Exponent k = 1;; ++k) {
            const Exponent g1 = k * (3 * k - 1) / 2;
            if (g1 > n)
                break;
            const Exponent g2 = k * (3 * k + 1) / 2;
            const bool plus = (k % 2) == 1;
            const auto& a = p[static_cast<std::size_t>(n - g1)];
            if (plus)
                acc += a;
            else
                acc -= a;
            if (g2 <= n) {
                const auto& b = p[static_cast<std::size_t>(n - g2)];
                if (plus)
                    acc += b;
                else
                    acc -= b;
            }
        }
        p[static_cast<std::size_t>(n)] = acc;
    }
    return LaurentSeries::from_dense(0, std::move(p), order);
}

LaurentSeries qtpi_product(Exponent u, Exponent v, Exponent order)
{
    if (u < 1)
        throw RangeError("QTPI requires u >= 1");
    std::vector<std::pair<int, Exponent>> factors;
    Exponent offset = 0;
    for (Exponent n = 1;; ++n) {
        const Exponent es[5] = {u * n, u * n + v, u * (n - 1) - v, u * (2 * n - 1) + 2 * v,
                                u * (2 * n - 1) - 2 * v};
        Exponent lowest = es[0];
        for (Exponent e : es) {
            lowest = std::min(lowest, e);
            if (e < 0)
                offset += e;
        }
        for (Exponent e : es)
            factors.emplace_back(1, e);
        // Every exponent grows with n, so once the smallest is positive and
        // beyond the reach of the accumulated negative offset nothing more
        // contributes.
        if (lowest > 0 && lowest > order - offset)
            break;
    }
    return binomial_product(factors, order);
}

namespace {

// sign * sum over n = start, start+dir, ... of q^((a n^2 + b n + c) / 2)
struct QuadraticFamily {
    int sign;
    Exponent a, b, c;
    Exponent start;
    int dir;
};

void add_family(SeriesSum& sum, const QuadraticFamily& f)
{
    int above = 0;
    Exponent prev = 0;
    bool have_prev = false;
    for (Exponent n = f.start;; n += f.dir) {
        const Exponent twice = f.a * n * n + f.b * n + f.c;
        if (twice % 2 != 0)
            throw std::logic_error("non-integral QTPI exponent");
        const Exponent e = twice / 2;
        sum.add_monomial(e, static_cast<long>(f.sign));
        const bool rising = have_prev && e > prev;
        if (e > sum.order() && rising) {
            if (++above >= 3)
                break;
        } else {
            above = 0;
        }
        prev = e;
        have_prev = true;
    }
}

} // namespace

LaurentSeries qtpi_sum(Exponent u, Exponent v, QtpiForm form, Exponent order)
{
    if (u < 1)
        throw RangeError("QTPI requires u >= 1");
    const Exponent a = 3 * u;
    std::vector<QuadraticFamily> fams;
    switch (form) {
    case QtpiForm::I:
        fams = {{+1, a, u + 6 * v, 0, 0, +1},
                {+1, a, u + 6 * v, 0, -1, -1},
                {-1, a, u - 6 * v, -2 * v, 0, +1},
                {-1, a, u - 6 * v, -2 * v, -1, -1}};
        break;
    case QtpiForm::II:
        fams = {{+1, a, u + 6 * v, 0, 0, +1},
                {+1, a, -u - 6 * v, 0, 1, +1},
                {-1, a, u - 6 * v, -2 * v, 0, +1},
                {-1, a, -u + 6 * v, -2 * v, 1, +1}};
        break;
    case QtpiForm::III:
        fams = {{+1, a, -u - 6 * v, 0, 0, +1},
                {+1, a, 7 * u + 6 * v, 4 * u + 6 * v, 0, +1},
                {-1, a, u - 6 * v, -2 * v, 0, +1},
                {-1, a, 5 * u + 6 * v, 2 * u + 4 * v, 0, +1}};
        break;
    }
    SeriesSum sum(order);
    for (const auto& f : fams)
        add_family(sum, f);
    return sum.result();
}

} // namespace a22
