#include "a22/laurent.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <sstream>

#include "a22/errors.hpp"

namespace a22 {

namespace {

std::atomic<int> g_guard_factor{10};

Exponent sat_add(Exponent a, Exponent b)
{
    if (a >= kExactOrder || b >= kExactOrder)
        return kExactOrder;
    return std::min(a + b, kExactOrder);
}

void check_guard(const LaurentSeries& s)
{
    if (s.is_zero() || s.is_exact())
        return;
    const Exponent floor = -static_cast<Exponent>(g_guard_factor.load()) * std::max<Exponent>(s.trunc(), 100);
    if (s.valuation() < floor)
        throw RunawayError("valuation " + std::to_string(s.valuation()) + " below guard floor " +
                           std::to_string(floor));
}

} // namespace

void set_valuation_guard(int factor)
{
    g_guard_factor.store(factor);
}

int valuation_guard()
{
    return g_guard_factor.load();
}

LaurentSeries LaurentSeries::zero(Exponent trunc)
{
    LaurentSeries s;
    s.trunc_ = std::min(trunc, kExactOrder);
    return s;
}

LaurentSeries LaurentSeries::one(Exponent trunc)
{
    return monomial(0, 1, trunc);
}

LaurentSeries LaurentSeries::monomial(Exponent exp, const mpz_class& coef, Exponent trunc)
{
    LaurentSeries s;
    s.trunc_ = std::min(trunc, kExactOrder);
    if (coef != 0 && exp <= s.trunc_)
        s.terms_.push_back({exp, coef});
    return s;
}

LaurentSeries LaurentSeries::from_terms(std::vector<Term> terms, Exponent trunc)
{
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    LaurentSeries s;
    s.trunc_ = std::min(trunc, kExactOrder);
    for (auto& t : terms) {
        if (t.exp > s.trunc_)
            break;
        if (!s.terms_.empty() && s.terms_.back().exp == t.exp)
            s.terms_.back().coef += t.coef;
        else
            s.terms_.push_back(std::move(t));
        if (s.terms_.back().coef == 0)
            s.terms_.pop_back();
    }
    return s;
}

LaurentSeries LaurentSeries::from_dense(Exponent low, std::vector<mpz_class> coefs, Exponent trunc)
{
    LaurentSeries s;
    s.trunc_ = std::min(trunc, kExactOrder);
    for (std::size_t i = 0; i < coefs.size(); ++i) {
        const Exponent e = low + static_cast<Exponent>(i);
        if (e > s.trunc_)
            break;
        if (coefs[i] != 0)
            s.terms_.push_back({e, std::move(coefs[i])});
    }
    return s;
}

Exponent LaurentSeries::valuation() const
{
    if (terms_.empty())
        return sat_add(trunc_, 1);
    return terms_.front().exp;
}

Exponent LaurentSeries::degree() const
{
    if (terms_.empty())
        throw std::logic_error("degree of zero series");
    return terms_.back().exp;
}

mpz_class LaurentSeries::coefficient(Exponent e) const
{
    if (e > trunc_)
        throw PrecisionError("coefficient of q^" + std::to_string(e) + " unknown beyond truncation " +
                             std::to_string(trunc_));
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, Exponent x) { return t.exp < x; });
    if (it != terms_.end() && it->exp == e)
        return it->coef;
    return 0;
}

LaurentSeries LaurentSeries::truncated(Exponent order) const
{
    LaurentSeries s;
    s.trunc_ = std::min(trunc_, order);
    for (const auto& t : terms_) {
        if (t.exp > s.trunc_)
            break;
        s.terms_.push_back(t);
    }
    return s;
}

std::string LaurentSeries::to_string() const
{
    std::ostringstream out;
    out << "trunc=";
    if (is_exact())
        out << "inf";
    else
        out << trunc_;
    out << ';';
    for (const auto& t : terms_)
        out << ' ' << t.exp << ':' << t.coef.get_str();
    return out.str();
}

LaurentSeries LaurentSeries::parse(std::string_view text)
{
    auto fail = [&](const std::string& why) {
        return DataError("malformed series text (" + why + "): " + std::string(text));
    };
    if (text.substr(0, 6) != "trunc=")
        throw fail("missing trunc=");
    const auto semi = text.find(';');
    if (semi == std::string_view::npos)
        throw fail("missing ';'");
    const auto trunc_text = text.substr(6, semi - 6);
    Exponent trunc = 0;
    if (trunc_text == "inf") {
        trunc = kExactOrder;
    } else {
        auto [p, ec] = std::from_chars(trunc_text.data(), trunc_text.data() + trunc_text.size(), trunc);
        if (ec != std::errc{} || p != trunc_text.data() + trunc_text.size())
            throw fail("bad trunc");
    }
    std::vector<Term> terms;
    std::istringstream in{std::string(text.substr(semi + 1))};
    std::string token;
    Exponent last = 0;
    while (in >> token) {
        const auto colon = token.find(':');
        if (colon == std::string::npos)
            throw fail("bad term '" + token + "'");
        Exponent e = 0;
        auto [p, ec] = std::from_chars(token.data(), token.data() + colon, e);
        if (ec != std::errc{} || p != token.data() + colon)
            throw fail("bad exponent '" + token + "'");
        mpz_class c;
        if (c.set_str(token.substr(colon + 1), 10) != 0 || c == 0)
            throw fail("bad coefficient '" + token + "'");
        if ((!terms.empty() && e <= last) || e > trunc)
            throw fail("non-canonical term order");
        last = e;
        terms.push_back({e, c});
    }
    return from_terms(std::move(terms), trunc);
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries s = *this;
    for (auto& t : s.terms_)
        t.coef = -t.coef;
    return s;
}

LaurentSeries add(const LaurentSeries& x, const LaurentSeries& y)
{
    const Exponent trunc = std::min(x.trunc(), y.trunc());
    std::vector<Term> out;
    auto xs = x.terms();
    auto ys = y.terms();
    std::size_t i = 0, j = 0;
    while (i < xs.size() || j < ys.size()) {
        Term t;
        if (j == ys.size() || (i < xs.size() && xs[i].exp < ys[j].exp)) {
            t = xs[i++];
        } else if (i == xs.size() || ys[j].exp < xs[i].exp) {
            t = ys[j++];
        } else {
            t = {xs[i].exp, xs[i].coef + ys[j].coef};
            ++i;
            ++j;
        }
        if (t.exp > trunc)
            break;
        if (t.coef != 0)
            out.push_back(std::move(t));
    }
    return LaurentSeries::from_terms(std::move(out), trunc);
}

LaurentSeries sub(const LaurentSeries& x, const LaurentSeries& y)
{
    return add(x, -y);
}

LaurentSeries scale(const LaurentSeries& x, const mpz_class& c)
{
    if (c == 0)
        return LaurentSeries::zero(x.trunc());
    std::vector<Term> out(x.terms().begin(), x.terms().end());
    for (auto& t : out)
        t.coef *= c;
    return LaurentSeries::from_terms(std::move(out), x.trunc());
}

LaurentSeries mul(const LaurentSeries& x, const LaurentSeries& y, Exponent cap)
{
    const Exponent vx = x.valuation();
    const Exponent vy = y.valuation();
    const Exponent trunc = std::min({sat_add(x.trunc(), vy), sat_add(y.trunc(), vx), cap});
    if (x.is_zero() || y.is_zero())
        return LaurentSeries::zero(trunc);
    const Exponent lo = vx + vy;
    const Exponent hi = std::min(trunc, x.degree() + y.degree());
    if (hi < lo)
        return LaurentSeries::zero(trunc);
    std::vector<mpz_class> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& a : x.terms()) {
        if (a.exp + vy > hi)
            break;
        for (const auto& b : y.terms()) {
            const Exponent e = a.exp + b.exp;
            if (e > hi)
                break;
            mpz_addmul(acc[static_cast<std::size_t>(e - lo)].get_mpz_t(), a.coef.get_mpz_t(),
                       b.coef.get_mpz_t());
        }
    }
    auto result = LaurentSeries::from_dense(lo, std::move(acc), trunc);
    check_guard(result);
    return result;
}

LaurentSeries shift(const LaurentSeries& x, Exponent m)
{
    std::vector<Term> out(x.terms().begin(), x.terms().end());
    for (auto& t : out)
        t.exp += m;
    const Exponent trunc = x.is_exact() ? kExactOrder : x.trunc() + m;
    auto result = LaurentSeries::from_terms(std::move(out), trunc);
    check_guard(result);
    return result;
}

LaurentSeries invert(const LaurentSeries& x, Exponent order)
{
    if (x.is_zero())
        throw NonUnitError("cannot invert a series that is zero to order " + std::to_string(x.trunc()));
    const auto& lead = x.terms().front();
    if (lead.coef != 1 && lead.coef != -1)
        throw NonUnitError("cannot invert series with leading coefficient " + lead.coef.get_str());
    const Exponent v = lead.exp;
    Exponent trunc = x.is_exact() ? kExactOrder : x.trunc() - 2 * v;
    trunc = std::min(trunc, order);
    if (trunc >= kExactOrder)
        throw NonUnitError("inverse of an exact series needs a finite order");
    // x = q^v u, 1/x = q^-v w with w = 1/u.
    const Exponent len = trunc + v; // w known for indices 0..len
    if (len < 0)
        return LaurentSeries::zero(trunc);
    std::vector<mpz_class> u(static_cast<std::size_t>(len + 1));
    for (const auto& t : x.terms()) {
        const Exponent k = t.exp - v;
        if (k > len)
            break;
        u[static_cast<std::size_t>(k)] = t.coef;
    }
    std::vector<mpz_class> w(u.size());
    const mpz_class& u0 = u[0];
    w[0] = u0;
    mpz_class acc;
    for (std::size_t k = 1; k < w.size(); ++k) {
        acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            if (u[i] != 0)
                mpz_addmul(acc.get_mpz_t(), u[i].get_mpz_t(), w[k - i].get_mpz_t());
        }
        w[k] = -u0 * acc;
    }
    auto result = LaurentSeries::from_dense(-v, std::move(w), trunc);
    check_guard(result);
    return result;
}

std::optional<Exponent> first_difference(const LaurentSeries& x, const LaurentSeries& y, Exponent n)
{
    if (n > x.trunc() || n > y.trunc())
        throw PrecisionError("comparison order " + std::to_string(n) + " exceeds truncation (" +
                             std::to_string(x.trunc()) + ", " + std::to_string(y.trunc()) + ")");
    auto xs = x.terms();
    auto ys = y.terms();
    std::size_t i = 0, j = 0;
    while (true) {
        const bool xe = i == xs.size() || xs[i].exp > n;
        const bool ye = j == ys.size() || ys[j].exp > n;
        if (xe && ye)
            return std::nullopt;
        if (xe)
            return ys[j].exp;
        if (ye)
            return xs[i].exp;
        if (xs[i].exp != ys[j].exp)
            return std::min(xs[i].exp, ys[j].exp);
        if (xs[i].coef != ys[j].coef)
            return xs[i].exp;
        ++i;
        ++j;
    }
}

bool eq_to_order(const LaurentSeries& x, const LaurentSeries& y, Exponent n)
{
    return !first_difference(x, y, n).has_value();
}

SeriesSum::SeriesSum(Exponent order) : order_(order), trunc_(order) {}

void SeriesSum::reserve_low(Exponent e)
{
    if (dense_.empty()) {
        low_ = e;
        return;
    }
    if (e < low_) {
        std::vector<mpz_class> grown(static_cast<std::size_t>(low_ - e) + dense_.size());
        for (std::size_t i = 0; i < dense_.size(); ++i)
            grown[static_cast<std::size_t>(low_ - e) + i].swap(dense_[i]);
        dense_.swap(grown);
        low_ = e;
    }
}

void SeriesSum::add(const LaurentSeries& s, int sign)
{
    trunc_ = std::min(trunc_, s.trunc());
    for (const auto& t : s.terms()) {
        if (t.exp > order_)
            break;
        if (sign >= 0)
            add_monomial(t.exp, t.coef);
        else
            add_monomial(t.exp, -t.coef);
    }
}

void SeriesSum::add_monomial(Exponent e, const mpz_class& c)
{
    if (e > order_ || c == 0)
        return;
    reserve_low(e);
    const auto idx = static_cast<std::size_t>(e - low_);
    if (idx >= dense_.size())
        dense_.resize(idx + 1);
    dense_[idx] += c;
}

void SeriesSum::add_monomial(Exponent e, long c)
{
    add_monomial(e, mpz_class(c));
}

LaurentSeries SeriesSum::result() const
{
    return LaurentSeries::from_dense(low_, dense_, trunc_);
}

} // namespace a22
