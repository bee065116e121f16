#pragma once

// Bailey pairs relative to a base a = q^c, the moves that produce new pairs
// from old ones, and the defining-relation check.
//
// A pair is a base exponent plus three lazily evaluated, memoized sequences
// alpha_n, alpha~_n = (1 - a)/(1 - a q^(2n)) alpha_n and beta_n. Every
// sequence accessor returns a series exact to at least the requested order.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a22/laurent.hpp"
#include "a22/qproducts.hpp"

namespace a22 {

enum class Move { F1, B1, F2, B2, BC1, BC2, BaseShift };

std::string_view to_string(Move m);
/// Accepts the tags printed by to_string. Throws RangeError otherwise.
Move parse_move(std::string_view tag);
/// Change in base exponent caused by the move.
int base_delta(Move m);

/// Thread-safe memoized sequence n -> series. The generating function may
/// recurse through `self`.
class Sequence {
public:
    using Fn = std::function<LaurentSeries(int n, Exponent order, const Sequence& self)>;

    Sequence() = default;
    explicit Sequence(Fn fn);

    LaurentSeries operator()(int n, Exponent order) const;
    explicit operator bool() const { return static_cast<bool>(state_); }

private:
    struct State;
    std::shared_ptr<State> state_;
};

class BaileyPair {
public:
    /// Pair given by alpha_n; alpha~ is derived (needs base_exp >= 1).
    static BaileyPair from_alpha(int base_exp, Sequence alpha, Sequence beta,
                                 std::vector<std::string> provenance);
    /// Pair given by alpha~_n; alpha is derived. Requires base_exp >= 1.
    static BaileyPair from_alpha_tilde(int base_exp, Sequence alpha_tilde, Sequence beta,
                                       std::vector<std::string> provenance);

    int base_exp() const { return base_exp_; }
    LaurentSeries alpha(int n, Exponent order) const;
    /// Throws RangeError at base exponent 0, where alpha~ degenerates.
    LaurentSeries alpha_tilde(int n, Exponent order) const;
    LaurentSeries beta(int n, Exponent order) const;
    const std::vector<std::string>& provenance() const { return provenance_; }

private:
    BaileyPair() = default;

    int base_exp_ = 0;
    Sequence alpha_;
    Sequence alpha_tilde_;
    Sequence beta_;
    std::vector<std::string> provenance_;
};

/// alpha_n = (1 - q^(c+2n)) / (1 - q^c) * alpha~_n.
LaurentSeries alpha_from_tilde(const BaileyPair& p, int n, Exponent order);

/// Right-hand side of the defining relation,
/// sum_{t<=n} alpha_t / ((q)_{n-t} (aq)_{n+t}).
LaurentSeries bailey_relation_rhs(const BaileyPair& p, int n, Exponent order);

struct PairReport {
    std::vector<bool> holds; // indexed by n

    bool all() const;
    std::optional<int> first_failure() const;
};

PairReport verify_pair(const BaileyPair& p, int n_max, Exponent order);

/// The same beta with a new alpha relative to base a*q, from the recurrence
/// alpha~_0 = alpha'_0, alpha~_{n+1} = a q^(2n+1) alpha~_n + alpha'_{n+1}.
BaileyPair base_shift(const BaileyPair& p);

/// alpha~_n of the base-shifted pair from the closed sum
/// sum_{r<=n} a^(n-r) q^(n^2-r^2) alpha'_r.
LaurentSeries base_shift_alpha_tilde_closed(const BaileyPair& p, int n, Exponent order);

/// F1, B1, F2, B2 keep the base; BC1, BC2 map a to a/q; BaseShift maps a to
/// aq. F2 and BC1 need c >= 1 and BC2 needs c >= 2 so that every inverted
/// Pochhammer symbol has a unit leading coefficient (RangeError otherwise).
BaileyPair apply_move(const BaileyPair& p, Move m);
BaileyPair apply_moves(const BaileyPair& p, const std::vector<Move>& moves);

/// Slater's A1 relative to a = 1, the source of registry pair 1.
BaileyPair slater_a1();

/// s * f(need) truncated at `order`, where f(k) returns a series of
/// nonnegative valuation exact to k. The factor is requested at the precision
/// that the valuation of s demands. Requires s.trunc() >= order.
LaurentSeries times_factor(const LaurentSeries& s, const std::function<LaurentSeries(Exponent)>& f,
                           Exponent order);

/// Cached (f)_n and 1/(f)_n, exact to order; per thread.
LaurentSeries cached_poch(const PochFactor& f, Exponent n, Exponent order);
LaurentSeries cached_inv_poch(const PochFactor& f, Exponent n, Exponent order);

} // namespace a22
