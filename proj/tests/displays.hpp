#pragma once

// The worked examples at levels 2-7, transcribed term by term from their
// printed form, with the printed product side. Sums are evaluated naively
// over j_1 <= cap and checked for stability in the cap.

#include <array>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "a22/lattice.hpp"
#include "oracle.hpp"

namespace displays {

using oracle::binom2;

/// (sign q^base; q^step)_n, or its inverse.
struct Factor {
    long sign, base, step, n;
    bool inverse;
};

inline Factor qinv(long n) { return {1, 1, 1, n, true}; }          // 1/(q)_n
inline Factor mq(long n) { return {-1, 1, 1, n, false}; }          // (-q)_n
inline Factor mqinv(long n) { return {-1, 1, 1, n, true}; }        // 1/(-q)_n
inline Factor q2inv(long n) { return {1, 2, 1, n, true}; }         // 1/(q^2;q)_n

struct Summand {
    int sign = 1;
    long exponent = 0;
    std::vector<Factor> factors;
};

/// beta_j of registry pair `pair`, as an exponent plus factors.
inline void add_beta(int pair, long j, Summand& t) {
    switch (pair) {
    case 1: t.factors.push_back(qinv(2 * j)); break;
    case 2: t.factors.push_back(q2inv(2 * j)); break;
    case 3:
        t.exponent += j * j - j;
        t.factors.push_back(qinv(2 * j));
        break;
    case 4:
        t.exponent += j * j;
        t.factors.push_back(q2inv(2 * j));
        break;
    default:
        // (-1;q^3)_j / (-1;q)_j = (-q^3;q^3)_(j-1) / (-q;q)_(j-1) for j >= 1
        t.factors.push_back(qinv(2 * j));
        if (j > 0) {
            t.factors.push_back({-1, 3, 3, j - 1, false});
            t.factors.push_back({-1, 1, 1, j - 1, true});
        }
    }
}

enum class Outer { None, MinusQ, MinusQ2 }; // 1, 1/(-q)_inf, 1/(-q^2;q)_inf

struct Display {
    std::string label;
    a22::Schedule schedule;
    int vars;
    Outer outer;
    /// Summand for j_1 >= ... >= j_vars >= 0 (beta included).
    std::function<Summand(const std::vector<long>&)> term;
    /// Printed right-hand side: norm * (q^b;q^m)(q^b';q^m')/(q)_inf.
    std::vector<long> norm;          // coefficients of the polynomial prefactor
    std::array<long, 3> bases3;
    std::array<long, 2> bases2;
    std::string erratum;             // non-empty when the printed product was corrected
};

class Evaluator {
public:
    explicit Evaluator(long order) : N(order) {}

    /// The display summed over j_1 <= cap.
    a22::LaurentSeries evaluate(const Display& d, long cap) {
        oracle::Acc acc{N, {}};
        std::vector<long> js(d.vars);
        walk(d, js, 0, cap, acc);
        auto s = acc.series();
        if (d.outer == Outer::None) return s;
        const long base = d.outer == Outer::MinusQ ? 1 : 2;
        const auto inv = oracle::to_series(oracle::inv_poch(-1, base, 1, -1, N - std::min(0L, s.valuation())));
        return a22::mul(s, inv, N);
    }

    /// Smallest cap in steps of 2 from `start` at which the sum is unchanged by cap + 2.
    std::pair<a22::LaurentSeries, long> stable(const Display& d, long start = 4, long limit = 40) {
        auto prev = evaluate(d, start);
        for (long cap = start + 2; cap <= limit; cap += 2) {
            auto next = evaluate(d, cap);
            if (next == prev) return {next, cap - 2};
            prev = std::move(next);
        }
        return {prev, -1};
    }

private:
    void walk(const Display& d, std::vector<long>& js, int r, long top, oracle::Acc& acc) {
        if (r == d.vars) {
            const Summand t = d.term(js);
            if (t.exponent > N) return;
            const long M = N - t.exponent;
            oracle::Poly p = oracle::one(M);
            for (const auto& f : t.factors) p = oracle::mul(p, factor(f, M));
            acc.add(t.exponent, p, t.sign);
            return;
        }
        for (long j = 0; j <= top; ++j) {
            js[r] = j;
            walk(d, js, r + 1, j, acc);
        }
    }

    const oracle::Poly& factor(const Factor& f, long M) {
        const auto key = std::make_tuple(f.sign, f.base, f.step, f.n, f.inverse, M);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, f.inverse ? oracle::inv_poch(f.sign, f.base, f.step, f.n, M)
                                              : oracle::poch(f.sign, f.base, f.step, f.n, M)).first;
        return it->second;
    }

    long N;
    std::map<std::tuple<long, long, long, long, bool, long>, oracle::Poly> cache;
};

inline int sgn(long e) { return (e & 1) ? -1 : 1; }

inline std::vector<Display> all() {
    using a22::Kind;
    std::vector<Display> v;

    // (1/(-q)_inf) sum q^(j + C(j,2)) (-q)_j beta_j   (lim3, i = 0)
    auto lim3_i0 = [](int pair) {
        return [pair](const std::vector<long>& j) {
            Summand t;
            t.exponent = j[0] + binom2(j[0]);
            t.factors = {mq(j[0])};
            add_beta(pair, j[0], t);
            return t;
        };
    };
    // the triple sum of lim3, k = 1, i = 1
    auto lim3_i1 = [](int pair) {
        return [pair](const std::vector<long>& j) {
            Summand t;
            t.sign = sgn(j[0] + j[1]);
            t.exponent = j[2] - j[0] + binom2(j[0] - j[1]) + binom2(j[2]);
            t.factors = {mq(j[2]), qinv(j[0] - j[1]), qinv(j[1] - j[2]), mqinv(j[1])};
            add_beta(pair, j[2], t);
            return t;
        };
    };
    // sum (-q)_j q^(lin j + C(j,2)) beta_j   (lim2, i = 0, 1)
    auto lim2_single = [](int pair, long lin) {
        return [pair, lin](const std::vector<long>& j) {
            Summand t;
            t.exponent = lin * j[0] + binom2(j[0]);
            t.factors = {mq(j[0])};
            add_beta(pair, j[0], t);
            return t;
        };
    };
    // sum q^(lin j + j^2) beta_j   (lim1, i = 0, 1)
    auto lim1_single = [](int pair, long lin) {
        return [pair, lin](const std::vector<long>& j) {
            Summand t;
            t.exponent = lin * j[0] + j[0] * j[0];
            add_beta(pair, j[0], t);
            return t;
        };
    };
    // lim1, k = 1, i = 2 with the linear coefficient lin of j_1 (1 for base q, 2 for base q^2)
    auto lim1_triple = [](int pair, long lin) {
        return [pair, lin](const std::vector<long>& j) {
            Summand t;
            t.sign = sgn(j[1] + j[2]);
            t.exponent = lin * j[0] + j[0] * j[0] - (j[0] + j[1]) + binom2(j[1] - j[2]);
            t.factors = {qinv(j[0] - j[1]), qinv(j[1] - j[2])};
            add_beta(pair, j[2], t);
            return t;
        };
    };
    // lim1, k = 1, i = 3 (base q: scale 1; base q^2: scale 2)
    auto lim1_quintuple = [](int pair, long scale) {
        return [pair, scale](const std::vector<long>& j) {
            Summand t;
            t.sign = sgn(j[2] + j[4]);
            t.exponent = scale * (j[0] + j[1] - j[3]) + j[0] * j[0] + j[1] * j[1] - j[3] * j[3] -
                         (j[0] + j[1] + j[2]) + binom2(j[2] - j[3]) + binom2(j[3] - j[4]);
            t.factors = {qinv(j[0] - j[1]), qinv(j[1] - j[2]), qinv(j[2] - j[3]), qinv(j[3] - j[4])};
            add_beta(pair, j[4], t);
            return t;
        };
    };

    // level 2
    v.push_back({"level 2, pair 3, i=0", {Kind::Lim3, 1, 0, 3}, 1, Outer::MinusQ, lim3_i0(3), {1}, {1, 4, 5}, {3, 7}, ""});
    v.push_back({"level 2, pair 3, i=1", {Kind::Lim3, 1, 1, 3}, 3, Outer::None, lim3_i1(3), {1}, {2, 3, 5}, {1, 9}, ""});
    v.push_back({"level 2, pair 4, i=0", {Kind::Lim2, 1, 0, 4}, 1, Outer::MinusQ2, lim2_single(4, 2), {1, 0, -1},
                 {2, 3, 5}, {1, 9}, ""});
    v.push_back({"level 2, pair 4, i=1", {Kind::Lim2, 1, 1, 4}, 1, Outer::MinusQ, lim2_single(4, 1), {1, -1},
                 {1, 4, 5}, {3, 7}, "denominator printed as (q^2;q)_inf, should be (q)_inf"});
    // level 3
    v.push_back({"level 3, pair 5, i=0", {Kind::Lim3, 1, 0, 5}, 1, Outer::MinusQ, lim3_i0(5), {1}, {1, 5, 6}, {4, 8}, ""});
    v.push_back({"level 3, pair 5, i=1", {Kind::Lim3, 1, 1, 5}, 3, Outer::None, lim3_i1(5), {1}, {2, 4, 6}, {2, 10}, ""});
    // level 4
    v.push_back({"level 4, pair 1, i=0", {Kind::Lim3, 1, 0, 1}, 1, Outer::MinusQ, lim3_i0(1), {1}, {1, 6, 7}, {5, 9}, ""});
    v.push_back({"level 4, pair 1, i=1", {Kind::Lim3, 1, 1, 1}, 3, Outer::None, lim3_i1(1), {1}, {2, 5, 7}, {3, 11}, ""});
    v.push_back({"level 4, pair 1, i=2", {Kind::Lim3, 1, 2, 1}, 5, Outer::None,
                 [](const std::vector<long>& j) {
                     Summand t;
                     t.sign = sgn(j[1] + j[3]);
                     t.exponent = j[0] - j[2] + j[4] + j[0] * j[0] - j[2] * j[2] - (j[0] + j[1]) +
                                  binom2(j[1] - j[2]) + binom2(j[2] - j[3]) + binom2(j[4]);
                     t.factors = {mq(j[4]),          qinv(j[0] - j[1]), qinv(j[1] - j[2]),
                                  qinv(j[2] - j[3]), qinv(j[3] - j[4]), mqinv(j[3])};
                     add_beta(1, j[4], t);
                     return t;
                 },
                 {1}, {3, 4, 7}, {1, 13}, ""});
    v.push_back({"level 4, pair 2, i=0", {Kind::Lim2, 1, 0, 2}, 1, Outer::MinusQ2, lim2_single(2, 2), {1, 0, -1},
                 {3, 4, 7}, {1, 13}, ""});
    v.push_back({"level 4, pair 2, i=1", {Kind::Lim2, 1, 1, 2}, 1, Outer::MinusQ, lim2_single(2, 1), {1, -1},
                 {2, 5, 7}, {3, 11}, ""});
    v.push_back({"level 4, pair 2, i=2", {Kind::Lim2, 1, 2, 2}, 3, Outer::MinusQ,
                 [](const std::vector<long>& j) {
                     Summand t;
                     t.sign = sgn(j[1] + j[2]);
                     t.exponent = 2 * j[0] + binom2(j[0]) - (j[0] + j[1]) + binom2(j[1] - j[2]);
                     t.factors = {mq(j[0]), qinv(j[0] - j[1]), qinv(j[1] - j[2])};
                     add_beta(2, j[2], t);
                     return t;
                 },
                 {1, -1}, {1, 6, 7}, {5, 9}, ""});
    // level 5
    v.push_back({"level 5, pair 3, i=0", {Kind::Lim1, 1, 0, 3}, 1, Outer::None, lim1_single(3, 1), {1}, {1, 7, 8}, {6, 10}, ""});
    v.push_back({"level 5, pair 3, i=1", {Kind::Lim1, 1, 1, 3}, 1, Outer::None, lim1_single(3, 0), {1}, {2, 6, 8}, {4, 12}, ""});
    v.push_back({"level 5, pair 3, i=2", {Kind::Lim1, 1, 2, 3}, 3, Outer::None, lim1_triple(3, 1), {1}, {3, 5, 8},
                 {2, 14}, "printed (q^2,q^10;q^16), should be (q^2,q^14;q^16)"});
    v.push_back({"level 5, pair 4, i=0", {Kind::Lim1, 1, 0, 4}, 1, Outer::None, lim1_single(4, 2), {1, -1}, {3, 5, 8},
                 {2, 14}, "printed (q^2,q^10;q^16), should be (q^2,q^14;q^16)"});
    v.push_back({"level 5, pair 4, i=1", {Kind::Lim1, 1, 1, 4}, 1, Outer::None, lim1_single(4, 1), {1, -1}, {2, 6, 8}, {4, 12}, ""});
    v.push_back({"level 5, pair 4, i=2", {Kind::Lim1, 1, 2, 4}, 3, Outer::None, lim1_triple(4, 2), {1, -1}, {1, 7, 8}, {6, 10}, ""});
    // level 6
    v.push_back({"level 6, pair 5, i=0", {Kind::Lim1, 1, 0, 5}, 1, Outer::None, lim1_single(5, 1), {1}, {1, 8, 9}, {7, 11}, ""});
    v.push_back({"level 6, pair 5, i=1", {Kind::Lim1, 1, 1, 5}, 1, Outer::None, lim1_single(5, 0), {1}, {2, 7, 9}, {5, 13}, ""});
    v.push_back({"level 6, pair 5, i=2", {Kind::Lim1, 1, 2, 5}, 3, Outer::None, lim1_triple(5, 1), {1}, {3, 6, 9}, {3, 15}, ""});
    v.push_back({"level 6, pair 5, i=3", {Kind::Lim1, 1, 3, 5}, 5, Outer::None, lim1_quintuple(5, 1), {1}, {4, 5, 9}, {1, 17}, ""});
    // level 7
    v.push_back({"level 7, pair 1, i=0", {Kind::Lim1, 1, 0, 1}, 1, Outer::None, lim1_single(1, 1), {1}, {1, 9, 10}, {8, 12}, ""});
    v.push_back({"level 7, pair 1, i=1", {Kind::Lim1, 1, 1, 1}, 1, Outer::None, lim1_single(1, 0), {1}, {2, 8, 10}, {6, 14}, ""});
    v.push_back({"level 7, pair 1, i=2", {Kind::Lim1, 1, 2, 1}, 3, Outer::None, lim1_triple(1, 1), {1}, {3, 7, 10}, {4, 16}, ""});
    v.push_back({"level 7, pair 1, i=3", {Kind::Lim1, 1, 3, 1}, 5, Outer::None, lim1_quintuple(1, 1), {1}, {4, 6, 10}, {2, 18}, ""});
    v.push_back({"level 7, pair 2, i=0", {Kind::Lim1, 1, 0, 2}, 1, Outer::None, lim1_single(2, 2), {1, -1}, {4, 6, 10}, {2, 18}, ""});
    v.push_back({"level 7, pair 2, i=1", {Kind::Lim1, 1, 1, 2}, 1, Outer::None, lim1_single(2, 1), {1, -1}, {3, 7, 10}, {4, 16}, ""});
    v.push_back({"level 7, pair 2, i=2", {Kind::Lim1, 1, 2, 2}, 3, Outer::None, lim1_triple(2, 2), {1, -1}, {2, 8, 10}, {6, 14}, ""});
    v.push_back({"level 7, pair 2, i=3", {Kind::Lim1, 1, 3, 2}, 5, Outer::None, lim1_quintuple(2, 2), {1, -1}, {1, 9, 10}, {8, 12}, ""});
    return v;
}

/// Printed right-hand side: norm * (q^b;q^m)_inf (q^b';q^2m)_inf / (q)_inf to order N.
inline a22::LaurentSeries printed_product(const Display& d, long N) {
    const long m = d.bases3[2];
    oracle::Poly p = oracle::partitions(N);
    for (long b : d.bases3)
        for (long e = b; e <= N; e += m) oracle::mul_binomial(p, -1, e);
    for (long b : d.bases2)
        for (long e = b; e <= N; e += 2 * m) oracle::mul_binomial(p, -1, e);
    oracle::Poly n(N + 1);
    for (long e = 0; e < long(d.norm.size()) && e <= N; ++e) n[e] = d.norm[e];
    return oracle::to_series(oracle::mul(n, p));
}

} // namespace displays
