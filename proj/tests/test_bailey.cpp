#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "a22/bailey.hpp"
#include "a22/errors.hpp"
#include "a22/registry.hpp"
#include "oracle.hpp"

using namespace a22;

namespace {

/// Printed alpha~_m of the five pairs, transcribed case by case.
LaurentSeries table1_alpha_tilde(int id, long m) {
    const long r = ((m + 1) % 3) - 1; // m = 3n + r, r in {-1, 0, 1}
    auto mono = [](int sign, long num, long den) {
        REQUIRE(num % den == 0);
        return LaurentSeries::monomial(num / den, sign);
    };
    switch (id) {
    case 1: return r == 1 ? LaurentSeries() : mono(r == -1 ? -1 : 1, 2 * m * m - m, 3);
    case 2: return r == -1 ? LaurentSeries() : mono(r == 1 ? -1 : 1, 2 * m * m + m, 3);
    case 3: return r == 1 ? LaurentSeries() : mono(r == -1 ? -1 : 1, m * m - 2 * m, 3);
    case 4: return r == -1 ? LaurentSeries() : mono(r == 1 ? -1 : 1, m * m - m, 3);
    default: return r == 1 ? LaurentSeries() : mono(r == -1 ? -1 : 1, m * m - m, 2);
    }
}

/// Printed beta_n of the five pairs.
oracle::Poly table1_beta(int id, long n, long N) {
    switch (id) {
    case 1: return oracle::inv_poch(1, 1, 1, 2 * n, N);
    case 2: return oracle::inv_poch(1, 2, 1, 2 * n, N);
    case 3: {
        oracle::Acc a{N, {}};
        a.add(n * n - n, oracle::inv_poch(1, 1, 1, 2 * n, N));
        return oracle::to_poly(a.series(), N);
    }
    case 4: {
        oracle::Acc a{N, {}};
        a.add(n * n, oracle::inv_poch(1, 2, 1, 2 * n, N));
        return oracle::to_poly(a.series(), N);
    }
    default: {
        // (-1;q^3)_n / (-1;q)_n: the leading 2s cancel for n >= 1
        oracle::Poly p = oracle::poch(-1, 3, 3, n > 0 ? n - 1 : 0, N);
        p = oracle::mul(p, oracle::inv_poch(-1, 1, 1, n > 0 ? n - 1 : 0, N));
        return oracle::mul(p, oracle::inv_poch(1, 1, 1, 2 * n, N));
    }
    }
}

/// sum_t alpha_t / ((q)_(n-t) (q^(c+1); q)_(n+t)) with the dense oracle.
LaurentSeries oracle_bailey_rhs(const BaileyPair& p, int n, long N) {
    oracle::Acc acc{N, {}};
    for (int t = 0; t <= n; ++t) {
        const auto a = p.alpha(t, N);
        if (a.is_zero()) continue;
        const long M = N - a.valuation();
        if (M < 0) continue;
        const auto w = oracle::mul(oracle::inv_poch(1, 1, 1, n - t, M), oracle::inv_poch(1, p.base_exp() + 1, 1, n + t, M));
        for (const Term& term : a.terms()) {
            oracle::Poly scaled = w;
            for (auto& x : scaled) x *= term.coef;
            acc.add(term.exp, scaled);
        }
    }
    return acc.series();
}

bool oracle_verify(const BaileyPair& p, int n_max, long N) {
    for (int n = 0; n <= n_max; ++n)
        if (!eq_to_order(p.beta(n, N), oracle_bailey_rhs(p, n, N), N)) return false;
    return true;
}

} // namespace

TEST_CASE("registry alpha~ and beta match the printed pairs") {
    const auto& reg = Registry::builtin();
    REQUIRE(reg.entries().size() == 5);
    for (int id = 1; id <= 5; ++id) {
        INFO("pair " << id);
        for (int m = 0; m <= 20; ++m) CHECK(eq_to_order(reg.pair(id).alpha_tilde(m, 200), table1_alpha_tilde(id, m), 200));
        for (int n = 0; n <= 8; ++n) CHECK(reg.pair(id).beta(n, 40) == oracle::to_series(table1_beta(id, n, 40)));
        CHECK(reg.pair(id).alpha_tilde(0, 10) == LaurentSeries::one(10));
    }
    CHECK(reg.entry(1).source == "A1");
    CHECK(reg.entry(5).source == "P1");
    CHECK(reg.entry(2).base_exp == 2);
    CHECK(reg.entry(3).moduli == std::vector<std::string>{"12k+4", "12k-2"});
    CHECK_THROWS_AS(reg.entry(9), RangeError);
}

TEST_CASE("registry pairs satisfy the Bailey relation") {
    const auto& reg = Registry::builtin();
    for (int id = 1; id <= 5; ++id) {
        INFO("pair " << id);
        CHECK(verify_pair(reg.pair(id), 10, 50).all());
        CHECK(oracle_verify(reg.pair(id), 8, 40));
    }
    CHECK(verify_pair(reg.pair(5), 8, 40).all());
}

TEST_CASE("alpha_from_tilde") {
    const auto p = Registry::builtin().pair(1);
    CHECK(alpha_from_tilde(p, 0, 30) == p.alpha_tilde(0, 30));
    // alpha~_3 = q^5 and alpha_3 = (1 - q^7)/(1 - q) q^5
    CHECK(p.alpha_tilde(3, 30) == LaurentSeries::monomial(5, 1, 30));
    CHECK(alpha_from_tilde(p, 3, 30) == LaurentSeries::from_dense(5, std::vector<mpz_class>(7, 1), 30));
    CHECK(alpha_from_tilde(p, 4, 30).is_zero());
    CHECK(p.alpha(3, 30) == alpha_from_tilde(p, 3, 30));
}

TEST_CASE("a flipped alpha~ sign is caught at the first affected n") {
    const auto& e = Registry::builtin().entry(1);
    Sequence tilde([e](int n, Exponent order, const Sequence&) {
        auto a = registry_alpha_tilde(e, n, order);
        return n == 3 ? -a : a;
    });
    Sequence beta([e](int n, Exponent order, const Sequence&) { return registry_beta(e, n, order); });
    const auto bad = BaileyPair::from_alpha_tilde(1, tilde, beta, {"corrupted"});
    const auto report = verify_pair(bad, 8, 40);
    CHECK_FALSE(report.all());
    CHECK(report.first_failure() == 3);
    CHECK_FALSE(oracle_verify(bad, 8, 40));
}

TEST_CASE("base shift of Slater A1 gives pair 1") {
    const auto a1 = slater_a1();
    CHECK(a1.base_exp() == 0);
    CHECK(verify_pair(a1, 8, 40).all());
    const auto shifted = base_shift(a1);
    CHECK(shifted.base_exp() == 1);
    for (int m = 0; m <= 15; ++m) {
        CHECK(eq_to_order(shifted.alpha_tilde(m, 400), table1_alpha_tilde(1, m), 400));
        CHECK(eq_to_order(base_shift_alpha_tilde_closed(a1, m, 400), table1_alpha_tilde(1, m), 400));
    }
    // Slater's alpha'_m as printed
    CHECK(a1.alpha(0, 50) == LaurentSeries::one(50));
    CHECK(a1.alpha(2, 50) == LaurentSeries::monomial(6 - 5 + 1, -1, 50));
    CHECK(a1.alpha(3, 50) == LaurentSeries::from_terms({{5, 1}, {7, 1}}, 50));
    CHECK(a1.alpha(4, 50) == LaurentSeries::monomial(12, -1, 50));
}

TEST_CASE("base shift of the delta sequence") {
    for (int c : {0, 1, 2}) {
        Sequence delta([](int n, Exponent order, const Sequence&) {
            return n == 0 ? LaurentSeries::one(order) : LaurentSeries::zero(order);
        });
        Sequence zero([](int, Exponent order, const Sequence&) { return LaurentSeries::zero(order); });
        const auto p = BaileyPair::from_alpha(c, delta, zero, {"delta"});
        const auto s = base_shift(p);
        for (int n = 0; n <= 10; ++n) {
            CHECK(eq_to_order(s.alpha_tilde(n, 300), LaurentSeries::monomial(c * n + n * n), 300));
            CHECK(eq_to_order(s.alpha_tilde(n, 300), base_shift_alpha_tilde_closed(p, n, 300), 300));
        }
    }
}

TEST_CASE("F1 beta as a direct sum") {
    const auto f1 = apply_move(Registry::builtin().pair(1), Move::F1);
    for (long n = 0; n <= 6; ++n) {
        oracle::Acc acc{40, {}};
        for (long j = 0; j <= n; ++j)
            acc.add(j + j * j, oracle::mul(oracle::inv_poch(1, 1, 1, n - j, 40), oracle::inv_poch(1, 1, 1, 2 * j, 40)));
        CHECK(f1.beta(int(n), 40) == acc.series());
    }
}

TEST_CASE("every single move preserves the Bailey property") {
    const auto& reg = Registry::builtin();
    for (int id = 1; id <= 5; ++id)
        for (Move m : {Move::F1, Move::B1, Move::F2, Move::B2, Move::BC1, Move::BC2, Move::BaseShift}) {
            const auto p = reg.pair(id);
            if (m == Move::BC2 && p.base_exp() < 2) {
                CHECK_THROWS_AS(apply_move(p, m), RangeError);
                continue;
            }
            INFO("pair " << id << " move " << to_string(m));
            const auto q = apply_move(p, m);
            CHECK(q.base_exp() == p.base_exp() + base_delta(m));
            CHECK(oracle_verify(q, 6, 40));
        }
}

TEST_CASE("move words of length <= 3 preserve the Bailey property") {
    const Move ms[] = {Move::F1, Move::B1, Move::F2, Move::B2};
    const auto& reg = Registry::builtin();
    for (int id : {1, 2, 5})
        for (Move a : ms)
            for (Move b : ms)
                for (Move c : ms) {
                    INFO("pair " << id << " " << to_string(a) << " " << to_string(b) << " " << to_string(c));
                    CHECK(verify_pair(apply_moves(reg.pair(id), {a, b, c}), 6, 40).all());
                }
    for (int id = 1; id <= 5; ++id) {
        CHECK(verify_pair(apply_moves(reg.pair(id), {Move::B1, Move::BC1, Move::F1}), 6, 40).all());
        CHECK(verify_pair(apply_moves(reg.pair(id), {Move::F2, Move::B1, Move::BC1}), 6, 40).all());
        // F2 after BC1 needs the base to stay at q or above
        const std::vector<Move> w{Move::B1, Move::BC1, Move::F2};
        if (reg.entry(id).base_exp >= 2)
            CHECK(verify_pair(apply_moves(reg.pair(id), w), 6, 40).all());
        else
            CHECK_THROWS_AS(apply_moves(reg.pair(id), w), RangeError);
    }
}

TEST_CASE("backward moves undo forward moves") {
    const auto& reg = Registry::builtin();
    for (int id = 1; id <= 5; ++id) {
        const auto p = reg.pair(id);
        for (auto w : {std::vector<Move>{Move::F1, Move::B1}, std::vector<Move>{Move::F2, Move::B2}}) {
            const auto q = apply_moves(p, w);
            for (int n = 0; n <= 6; ++n) {
                CHECK(eq_to_order(q.alpha(n, 40), p.alpha(n, 40), 40));
                CHECK(eq_to_order(q.beta(n, 40), p.beta(n, 40), 40));
            }
        }
    }
}

TEST_CASE("move tags") {
    for (Move m : {Move::F1, Move::B1, Move::F2, Move::B2, Move::BC1, Move::BC2, Move::BaseShift})
        CHECK(parse_move(to_string(m)) == m);
    CHECK_THROWS_AS(parse_move("F3"), RangeError);
    CHECK(base_delta(Move::BC1) == -1);
    CHECK(base_delta(Move::BaseShift) == 1);
    CHECK(base_delta(Move::F2) == 0);
}

TEST_CASE("provenance records the moves") {
    const auto p = apply_moves(Registry::builtin().pair(2), {Move::F2, Move::BC2});
    REQUIRE(p.provenance().size() == 3);
    CHECK(p.provenance()[2] == "BC2");
}

TEST_CASE("alpha~ is undefined at base exponent 0") {
    const auto p = apply_move(Registry::builtin().pair(1), Move::BC1);
    CHECK(p.base_exp() == 0);
    CHECK_THROWS_AS(p.alpha_tilde(1, 10), RangeError);
    CHECK_NOTHROW(p.alpha(1, 10));
}

TEST_CASE("sequences are safe to share across threads") {
    const auto p = apply_moves(Registry::builtin().pair(5), {Move::F1, Move::F2});
    std::vector<LaurentSeries> got(4);
    std::vector<std::thread> ts;
    for (int t = 0; t < 4; ++t) ts.emplace_back([&, t] { got[t] = p.beta(8, 40); });
    for (auto& t : ts) t.join();
    for (int t = 1; t < 4; ++t) CHECK(got[t] == got[0]);
}
