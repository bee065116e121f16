#include "a22/bailey.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "a22/errors.hpp"

namespace a22 {

namespace {

Exponent binom2(Exponent n) { return n * (n - 1) / 2; }

const PochFactor kQ{1, 1, 1};        // (q;q)
const PochFactor kMinusQ{-1, 1, 1};  // (-q;q)

PochFactor minus_qc(Exponent c) { return PochFactor{-1, c, 1}; }

LaurentSeries one_minus_qe(Exponent e) {
    return LaurentSeries::from_terms({{0, 1}, {e, -1}}, kExactOrder);
}

} // namespace

// ---------------------------------------------------------------- moves

std::string_view to_string(Move m) {
    switch (m) {
    case Move::F1: return "F1";
    case Move::B1: return "B1";
    case Move::F2: return "F2";
    case Move::B2: return "B2";
    case Move::BC1: return "BC1";
    case Move::BC2: return "BC2";
    case Move::BaseShift: return "BaseShift";
    }
    return "?";
}

Move parse_move(std::string_view tag) {
    for (Move m : {Move::F1, Move::B1, Move::F2, Move::B2, Move::BC1, Move::BC2, Move::BaseShift})
        if (to_string(m) == tag) return m;
    throw RangeError("unknown move '" + std::string(tag) + "'");
}

int base_delta(Move m) {
    switch (m) {
    case Move::BC1:
    case Move::BC2: return -1;
    case Move::BaseShift: return 1;
    default: return 0;
    }
}

// ------------------------------------------------------------- Sequence

struct Sequence::State {
    Fn fn;
    std::mutex mu;
    std::unordered_map<int, LaurentSeries> memo;
};

Sequence::Sequence(Fn fn) : state_(std::make_shared<State>()) { state_->fn = std::move(fn); }

LaurentSeries Sequence::operator()(int n, Exponent order) const {
    if (!state_) throw std::logic_error("empty sequence");
    if (n < 0) throw RangeError("negative sequence index");
    {
        std::lock_guard lock(state_->mu);
        auto it = state_->memo.find(n);
        if (it != state_->memo.end() && it->second.trunc() >= order)
            return it->second.trunc() == order ? it->second : it->second.truncated(order);
    }
    LaurentSeries v = state_->fn(n, order, *this);
    if (v.trunc() < order)
        throw std::logic_error("sequence term computed below the requested order");
    if (v.trunc() > order) v = v.truncated(order);
    std::lock_guard lock(state_->mu);
    auto [it, inserted] = state_->memo.try_emplace(n, v);
    if (!inserted && it->second.trunc() < v.trunc()) it->second = v;
    return v;
}

// ------------------------------------------------------------ factors

LaurentSeries times_factor(const LaurentSeries& s, const std::function<LaurentSeries(Exponent)>& f,
                           Exponent order) {
    if (s.trunc() < order) throw PrecisionError("times_factor: operand below requested order");
    if (s.is_zero()) return LaurentSeries::zero(order);
    const Exponent need = std::max<Exponent>(order - s.valuation(), 0);
    return mul(s, f(need), order);
}

namespace {

using FactorKey = std::tuple<int, Exponent, Exponent, Exponent, bool>;

LaurentSeries cached(const PochFactor& f, Exponent n, Exponent order, bool inverse) {
    thread_local std::map<FactorKey, LaurentSeries> cache;
    const FactorKey key{f.sign, f.base_exp, f.step, n, inverse};
    auto it = cache.find(key);
    if (it != cache.end() && it->second.trunc() >= order)
        return it->second.trunc() == order ? it->second : it->second.truncated(order);
    LaurentSeries v = poch_finite(f, n, order);
    if (inverse) v = invert(v, order);
    if (v.trunc() > order) v = v.truncated(order);
    cache[key] = v;
    return v;
}

} // namespace

LaurentSeries cached_poch(const PochFactor& f, Exponent n, Exponent order) {
    return cached(f, n, order, false);
}

LaurentSeries cached_inv_poch(const PochFactor& f, Exponent n, Exponent order) {
    return cached(f, n, order, true);
}

// ---------------------------------------------------------- BaileyPair

namespace {

Sequence alpha_tilde_from_alpha(int c, Sequence alpha) {
    if (c < 1)
        return Sequence([](int, Exponent, const Sequence&) -> LaurentSeries {
            throw RangeError("alpha~ is undefined at base exponent 0");
        });
    return Sequence([c, alpha](int n, Exponent order, const Sequence&) {
        if (n == 0) return alpha(0, order);
        return times_factor(alpha(n, order), [&](Exponent k) {
            return mul(one_minus_qe(c), invert(one_minus_qe(c + 2 * n), k), k);
        }, order);
    });
}

Sequence alpha_from_alpha_tilde(int c, Sequence tilde) {
    return Sequence([c, tilde](int n, Exponent order, const Sequence&) {
        if (n == 0) return tilde(0, order);
        return times_factor(tilde(n, order), [&](Exponent k) {
            return mul(one_minus_qe(c + 2 * n), invert(one_minus_qe(c), k), k);
        }, order);
    });
}

} // namespace

BaileyPair BaileyPair::from_alpha(int base_exp, Sequence alpha, Sequence beta,
                                  std::vector<std::string> provenance) {
    if (base_exp < 0) throw RangeError("negative base exponent");
    BaileyPair p;
    p.base_exp_ = base_exp;
    p.alpha_ = alpha;
    p.alpha_tilde_ = alpha_tilde_from_alpha(base_exp, alpha);
    p.beta_ = std::move(beta);
    p.provenance_ = std::move(provenance);
    return p;
}

BaileyPair BaileyPair::from_alpha_tilde(int base_exp, Sequence alpha_tilde, Sequence beta,
                                        std::vector<std::string> provenance) {
    if (base_exp < 1) throw RangeError("alpha~ needs base exponent >= 1");
    BaileyPair p;
    p.base_exp_ = base_exp;
    p.alpha_tilde_ = alpha_tilde;
    p.alpha_ = alpha_from_alpha_tilde(base_exp, alpha_tilde);
    p.beta_ = std::move(beta);
    p.provenance_ = std::move(provenance);
    return p;
}

LaurentSeries BaileyPair::alpha(int n, Exponent order) const { return alpha_(n, order); }
LaurentSeries BaileyPair::alpha_tilde(int n, Exponent order) const { return alpha_tilde_(n, order); }
LaurentSeries BaileyPair::beta(int n, Exponent order) const { return beta_(n, order); }

LaurentSeries alpha_from_tilde(const BaileyPair& p, int n, Exponent order) {
    if (n < 0) throw RangeError("negative index");
    const int c = p.base_exp();
    if (c < 1) throw RangeError("alpha~ is undefined at base exponent 0");
    if (n == 0) return p.alpha_tilde(0, order);
    return times_factor(p.alpha_tilde(n, order), [&](Exponent k) {
        return mul(one_minus_qe(c + 2 * n), invert(one_minus_qe(c), k), k);
    }, order);
}

// ------------------------------------------------------ defining relation

LaurentSeries bailey_relation_rhs(const BaileyPair& p, int n, Exponent order) {
    const Exponent c = p.base_exp();
    SeriesSum sum(order);
    for (int t = 0; t <= n; ++t) {
        sum.add(times_factor(p.alpha(t, order), [&](Exponent k) {
            return mul(cached_inv_poch(kQ, n - t, k), cached_inv_poch(PochFactor{1, c + 1, 1}, n + t, k), k);
        }, order));
    }
    return sum.result();
}

bool PairReport::all() const {
    return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

std::optional<int> PairReport::first_failure() const {
    for (std::size_t n = 0; n < holds.size(); ++n)
        if (!holds[n]) return static_cast<int>(n);
    return std::nullopt;
}

PairReport verify_pair(const BaileyPair& p, int n_max, Exponent order) {
    PairReport r;
    for (int n = 0; n <= n_max; ++n)
        r.holds.push_back(eq_to_order(p.beta(n, order), bailey_relation_rhs(p, n, order), order));
    return r;
}

// ----------------------------------------------------------- base shift

BaileyPair base_shift(const BaileyPair& p) {
    const Exponent c = p.base_exp();
    Sequence tilde([p, c](int n, Exponent order, const Sequence& self) {
        if (n == 0) return p.alpha(0, order);
        const Exponent e = c + 2 * (n - 1) + 1;
        return add(shift(self(n - 1, order - e), e), p.alpha(n, order));
    });
    auto prov = p.provenance();
    prov.emplace_back("BaseShift");
    return BaileyPair::from_alpha_tilde(static_cast<int>(c + 1), tilde,
                                        Sequence([p](int n, Exponent order, const Sequence&) {
                                            return p.beta(n, order);
                                        }),
                                        std::move(prov));
}

LaurentSeries base_shift_alpha_tilde_closed(const BaileyPair& p, int n, Exponent order) {
    const Exponent c = p.base_exp();
    SeriesSum sum(order);
    for (int r = 0; r <= n; ++r) {
        const Exponent e = c * (n - r) + Exponent(n) * n - Exponent(r) * r;
        sum.add(shift(p.alpha(r, order - e), e));
    }
    return sum.result();
}

// ---------------------------------------------------------------- moves

namespace {

using Factor = std::function<LaurentSeries(int j, Exponent need)>;

/// sum_{j<=n} sign(j) q^{e(j)} factor(j) beta_j, exact to order.
template <class ExpFn, class SignFn>
LaurentSeries beta_sum(const BaileyPair& p, int n, Exponent order, ExpFn e, SignFn sign,
                       const Factor& factor) {
    SeriesSum sum(order);
    for (int j = 0; j <= n; ++j) {
        const Exponent ej = e(j);
        LaurentSeries b = shift(p.beta(j, order - ej), ej);
        sum.add(times_factor(b, [&](Exponent k) { return factor(j, k); }, order), sign(j));
    }
    return sum.result();
}

int parity_sign(Exponent n) { return (n & 1) ? -1 : 1; }

/// {alpha~_n - a q^(2n-2) alpha~_(n-1)} for the base-change moves.
LaurentSeries bc_brace(const BaileyPair& p, int n, Exponent order) {
    const Exponent c = p.base_exp();
    const Exponent e = c + 2 * n - 2;
    return sub(p.alpha_tilde(n, order), shift(p.alpha_tilde(n - 1, order - e), e));
}

} // namespace

BaileyPair apply_move(const BaileyPair& p, Move m) {
    const Exponent c = p.base_exp();
    auto prov = p.provenance();
    prov.emplace_back(to_string(m));

    switch (m) {
    case Move::F1: {
        Sequence beta([p, c](int n, Exponent order, const Sequence&) {
            return beta_sum(
                p, n, order, [&](Exponent j) { return c * j + j * j; }, [](Exponent) { return 1; },
                [&](int j, Exponent k) { return cached_inv_poch(kQ, n - j, k); });
        });
        Sequence alpha([p, c](int n, Exponent order, const Sequence&) {
            const Exponent e = c * n + Exponent(n) * n;
            return shift(p.alpha(n, order - e), e);
        });
        return BaileyPair::from_alpha(static_cast<int>(c), alpha, beta, std::move(prov));
    }
    case Move::B1: {
        Sequence beta([p, c](int n, Exponent order, const Sequence&) {
            const Exponent pre = c * n + Exponent(n) * n;
            LaurentSeries inner = beta_sum(
                p, n, order + pre, [&](Exponent j) { return binom2(n - j); }, parity_sign,
                [&](int j, Exponent k) { return cached_inv_poch(kQ, n - j, k); });
            return scale(shift(inner, -pre), parity_sign(n));
        });
        Sequence alpha([p, c](int n, Exponent order, const Sequence&) {
            const Exponent e = c * n + Exponent(n) * n;
            return shift(p.alpha(n, order + e), -e);
        });
        return BaileyPair::from_alpha(static_cast<int>(c), alpha, beta, std::move(prov));
    }
    case Move::F2: {
        if (c < 1) throw RangeError("F2 needs base exponent >= 1");
        Sequence beta([p, c](int n, Exponent order, const Sequence&) {
            return beta_sum(
                p, n, order, [&](Exponent j) { return binom2(j) + c * j; }, [](Exponent) { return 1; },
                [&](int j, Exponent k) {
                    return mul(mul(cached_poch(kMinusQ, j, k), cached_inv_poch(kQ, n - j, k), k),
                               cached_inv_poch(minus_qc(c), n, k), k);
                });
        });
        Sequence alpha([p, c](int n, Exponent order, const Sequence&) {
            const Exponent e = binom2(n) + c * n;
            return times_factor(shift(p.alpha(n, order - e), e), [&](Exponent k) {
                return mul(cached_poch(kMinusQ, n, k), cached_inv_poch(minus_qc(c), n, k), k);
            }, order);
        });
        return BaileyPair::from_alpha(static_cast<int>(c), alpha, beta, std::move(prov));
    }
    case Move::B2: {
        Sequence beta([p, c](int n, Exponent order, const Sequence&) {
            const Exponent pre = c * n + binom2(n);
            LaurentSeries inner = beta_sum(
                p, n, order + pre, [&](Exponent j) { return binom2(n - j); }, parity_sign,
                [&](int j, Exponent k) {
                    return mul(cached_poch(minus_qc(c), j, k), cached_inv_poch(kQ, n - j, k), k);
                });
            LaurentSeries s = scale(shift(inner, -pre), parity_sign(n));
            return times_factor(s, [&](Exponent k) { return cached_inv_poch(kMinusQ, n, k); }, order);
        });
        Sequence alpha([p, c](int n, Exponent order, const Sequence&) {
            const Exponent e = binom2(n) + c * n;
            LaurentSeries s = shift(p.alpha(n, order + e), -e);
            return times_factor(s, [&](Exponent k) {
                return mul(cached_poch(minus_qc(c), n, k), cached_inv_poch(kMinusQ, n, k), k);
            }, order);
        });
        return BaileyPair::from_alpha(static_cast<int>(c), alpha, beta, std::move(prov));
    }
    case Move::BC1: {
        if (c < 1) throw RangeError("BC1 needs base exponent >= 1");
        Sequence beta([p, c](int n, Exponent order, const Sequence&) {
            return beta_sum(
                p, n, order, [&](Exponent j) { return c * j + j * j - j; }, [](Exponent) { return 1; },
                [&](int j, Exponent k) { return cached_inv_poch(kQ, n - j, k); });
        });
        Sequence alpha([p, c](int n, Exponent order, const Sequence&) {
            if (n == 0) return p.alpha(0, order);
            const Exponent e = c * n + Exponent(n) * n - n;
            return shift(bc_brace(p, n, order - e), e);
        });
        return BaileyPair::from_alpha(static_cast<int>(c - 1), alpha, beta, std::move(prov));
    }
    case Move::BC2: {
        if (c < 2) throw RangeError("BC2 needs base exponent >= 2");
        Sequence beta([p, c](int n, Exponent order, const Sequence&) {
            return beta_sum(
                p, n, order, [&](Exponent j) { return c * j + binom2(j) - j; },
                [](Exponent) { return 1; },
                [&](int j, Exponent k) {
                    return mul(mul(cached_poch(kMinusQ, j, k), cached_inv_poch(kQ, n - j, k), k),
                               cached_inv_poch(minus_qc(c - 1), n, k), k);
                });
        });
        Sequence alpha([p, c](int n, Exponent order, const Sequence&) {
            if (n == 0) return p.alpha(0, order);
            const Exponent e = c * n + binom2(n) - n;
            return times_factor(shift(bc_brace(p, n, order - e), e), [&](Exponent k) {
                return mul(cached_poch(kMinusQ, n, k), cached_inv_poch(minus_qc(c - 1), n, k), k);
            }, order);
        });
        return BaileyPair::from_alpha(static_cast<int>(c - 1), alpha, beta, std::move(prov));
    }
    case Move::BaseShift:
        return base_shift(p);
    }
    throw std::logic_error("unreachable");
}

BaileyPair apply_moves(const BaileyPair& p, const std::vector<Move>& moves) {
    BaileyPair r = p;
    for (Move m : moves) r = apply_move(r, m);
    return r;
}

// ----------------------------------------------------------- Slater A1

BaileyPair slater_a1() {
    Sequence alpha([](int n, Exponent order, const Sequence&) {
        if (n == 0) return LaurentSeries::one(order);
        const Exponent m = (n + 1) / 3; // n = 3m-1, 3m or 3m+1
        std::vector<Term> terms;
        switch (n - 3 * m) {
        case -1: terms.push_back({6 * m * m - 5 * m + 1, -1}); break;
        case 0:
            terms.push_back({6 * m * m - m, 1});
            terms.push_back({6 * m * m + m, 1});
            break;
        default: terms.push_back({6 * m * m + 5 * m + 1, -1}); break;
        }
        return LaurentSeries::from_terms(std::move(terms), order);
    });
    Sequence beta([](int n, Exponent order, const Sequence&) {
        return cached_inv_poch(kQ, 2 * n, order);
    });
    return BaileyPair::from_alpha(0, alpha, beta, {"A1"});
}

} // namespace a22
