#include "a22/lattice.hpp"

#include <algorithm>
#include <cctype>

#include "a22/errors.hpp"
#include "a22/qproducts.hpp"
#include "a22/registry.hpp"

namespace a22 {

namespace {

Exponent binom2(Exponent n) { return n * (n - 1) / 2; }

const PochFactor kQ{1, 1, 1};
const PochFactor kMinusQ{-1, 1, 1};

PochTerm minus_q() { return {-1, 0, 1, 1}; }            // (-q)_j
PochTerm inv_minus_a() { return {-1, 1, 0, -1}; }       // 1/(-a)_j
PochTerm inv_minus_a_over_q() { return {-1, 1, -1, -1}; } // 1/(-a/q)_j

SumVariable var(int a, Exponent sq, Exponent lin) {
    SumVariable v;
    v.a_coeff = a;
    v.square = sq;
    v.linear = lin;
    return v;
}

void repeat(std::vector<Move>& out, Move m, int times) {
    for (int t = 0; t < times; ++t) out.push_back(m);
}

} // namespace

// ---------------------------------------------------------------- kinds

std::string_view to_string(Kind k) {
    switch (k) {
    case Kind::Lim1: return "lim1";
    case Kind::Lim2: return "lim2";
    case Kind::Lim3: return "lim3";
    }
    return "?";
}

Kind parse_kind(std::string_view s) {
    std::string low(s);
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char ch) { return std::tolower(ch); });
    for (Kind k : {Kind::Lim1, Kind::Lim2, Kind::Lim3})
        if (to_string(k) == low) return k;
    throw RangeError("unknown schedule kind '" + std::string(s) + "'");
}

const std::vector<Table2Row>& table2_rows() {
    static const std::vector<Table2Row> rows = {
        {1, Kind::Lim1, 1, 0, false, 0},  {1, Kind::Lim3, -2, -1, false, 0},
        {2, Kind::Lim1, 1, 0, true, 0},   {2, Kind::Lim2, -2, -1, true, -1},
        {3, Kind::Lim1, -1, -1, false, 0}, {3, Kind::Lim3, -4, -2, false, 0},
        {4, Kind::Lim1, -1, -1, true, -1}, {4, Kind::Lim2, -4, -2, true, -2},
        {5, Kind::Lim1, 0, 0, false, 0},  {5, Kind::Lim3, -3, -2, false, 0},
    };
    return rows;
}

const Table2Row& table2_row(int pair_id, Kind kind) {
    for (const auto& r : table2_rows())
        if (r.pair_id == pair_id && r.kind == kind) return r;
    throw RangeError("pair " + std::to_string(pair_id) + " is not used with " + std::string(to_string(kind)));
}

std::string to_string(const Schedule& s) {
    return "pair " + std::to_string(s.pair_id) + " " + std::string(to_string(s.kind)) +
           " k=" + std::to_string(s.k) + " i=" + std::to_string(s.i);
}

void validate(const Schedule& s) {
    const Table2Row& row = table2_row(s.pair_id, s.kind);
    if (s.k < 1) throw RangeError("k must be at least 1");
    if (s.i < 0 || s.i > row.i_max(s.k))
        throw RangeError(to_string(s) + ": i must lie in [0, " + std::to_string(row.i_max(s.k)) + "]");
}

// ------------------------------------------------------------ schedules

std::vector<Move> expand_schedule(const Schedule& s) {
    validate(s);
    const int k = s.k, i = s.i;
    std::vector<Move> m;
    auto forward_or_back = [&](int d) { d >= 0 ? repeat(m, Move::F1, d) : repeat(m, Move::B1, -d); };
    switch (s.kind) {
    case Kind::Lim1:
        forward_or_back(k - i);
        if (i >= 1) {
            m.push_back(Move::BC1);
            repeat(m, Move::F1, i - 1);
        }
        break;
    case Kind::Lim2:
        if (i == 0) {
            repeat(m, Move::F1, k - 1);
            m.push_back(Move::F2);
        } else if (i == 1) {
            repeat(m, Move::F1, k - 1);
            m.push_back(Move::BC2);
        } else {
            forward_or_back(k - i);
            m.push_back(Move::BC1);
            repeat(m, Move::F1, i - 2);
            m.push_back(Move::F2);
        }
        break;
    case Kind::Lim3:
        m.push_back(Move::F2);
        forward_or_back(k - i - 1);
        if (i >= 1) {
            m.push_back(Move::BC1);
            repeat(m, Move::F1, i - 1);
        }
        break;
    }
    return m;
}

BaileyPair final_pair(const Schedule& s) {
    return apply_moves(Registry::builtin().pair(s.pair_id), expand_schedule(s));
}

// ------------------------------------------------------------ multisums

namespace {

/// Variables for the stretch with backward moves: j_1..j_(i-1) carry
/// a q^(j^2 - j), j_i carries q^(-j) and a sign, j_(i+1)..j_last carry
/// a^-1 q^(-j^2), and the binomial links start at j_i.
void backward_block(MultisumSpec& m, int i, int last) {
    for (int r = 1; r < i; ++r) m.vars.push_back(var(1, 1, -1));
    SumVariable vi = var(0, 0, -1);
    vi.sign = true;
    m.vars.push_back(vi);
    for (int r = i + 1; r <= last; ++r) m.vars.push_back(var(-1, -1, 0));
}

void finish_links(MultisumSpec& m, int first_binom, int last_binom) {
    m.link_binom.assign(m.vars.size() - 1, 0);
    for (int r = first_binom; r <= last_binom; ++r) m.link_binom[r - 1] = 1;
}

} // namespace

MultisumSpec multisum_spec(const Schedule& s) {
    validate(s);
    const int k = s.k, i = s.i;
    MultisumSpec m;
    m.pair_id = s.pair_id;
    m.base_exp = Registry::builtin().entry(s.pair_id).base_exp;

    switch (s.kind) {
    case Kind::Lim1:
        if (i <= k) {
            for (int r = 1; r <= k; ++r) m.vars.push_back(var(1, 1, r <= i ? -1 : 0));
            finish_links(m, 1, 0);
        } else {
            const int V = 2 * i - k;
            backward_block(m, i, V - 1);
            SumVariable last;
            last.sign = true;
            m.vars.push_back(last);
            finish_links(m, i, V - 1);
        }
        break;
    case Kind::Lim2: {
        SumVariable first = var(1, 0, i >= 1 ? -1 : 0);
        first.binom_self = 1;
        first.poch.push_back(minus_q());
        m.outer.push_back(i == 0 ? inv_minus_a() : inv_minus_a_over_q());
        if (i <= k) {
            m.vars.push_back(first);
            for (int r = 2; r <= k; ++r) m.vars.push_back(var(1, 1, r <= i ? -1 : 0));
            finish_links(m, 1, 0);
        } else {
            const int V = 2 * i - k;
            backward_block(m, i, V - 1);
            m.vars[0] = first;
            SumVariable last;
            last.sign = true;
            m.vars.push_back(last);
            finish_links(m, i, V - 1);
        }
        break;
    }
    case Kind::Lim3: {
        SumVariable last = var(1, 0, 0);
        last.binom_self = 1;
        last.poch.push_back(minus_q());
        if (k - i - 1 >= 0) {
            for (int r = 1; r <= k - 1; ++r) m.vars.push_back(var(1, 1, r <= i ? -1 : 0));
            if (k >= 2)
                m.vars.back().poch.push_back(inv_minus_a());
            else
                m.outer.push_back(inv_minus_a());
            m.vars.push_back(last);
            finish_links(m, 1, 0);
        } else {
            const int V = 2 * i - k + 2;
            backward_block(m, i, V - 2);
            SumVariable before_last;
            before_last.sign = true;
            before_last.poch.push_back(inv_minus_a());
            m.vars.push_back(before_last);
            m.vars.push_back(last);
            finish_links(m, i, V - 2);
        }
        break;
    }
    }
    validate(m);
    return m;
}

LaurentSeries sum_side(const Schedule& s, Exponent order) { return evaluate_limit(multisum_spec(s), order); }

// ----------------------------------------------------------- alpha sides

namespace {

struct DisplayTerm {
    Exponent exponent;  // monomial prefactor
    bool ratio;         // carries (-q)_t / (-q^ratio_base)_t
    Exponent ratio_base;
    Exponent bracket;   // exponent E in the bracket 1 - X q^E
    bool damped;        // X = (1 + q^(t+1)) / (1 + q^(c+t-1)), else X = 1
};

DisplayTerm display_term(AlphaDisplay d, Exponent c, Exponent k, Exponent i, Exponent t) {
    switch (d) {
    case AlphaDisplay::Lim1:
        return {c * k * t + k * t * t - i * t, false, 0, c * (i + 1) + 2 * i * t + 2 * t, false};
    case AlphaDisplay::Lim1I0:
        return {c * k * t + k * t * t, false, 0, c + 2 * t, false};
    case AlphaDisplay::Lim2I0:
        return {c * k * t + (k - 1) * t * t + binom2(t), true, c, c + 2 * t, false};
    case AlphaDisplay::Lim2I1:
        return {c * k * t + (k - 1) * t * t + binom2(t) - t, true, c - 1, 2 * c + 3 * t - 1, true};
    case AlphaDisplay::Lim2General:
        return {c * k * t + k * t * t - i * t - (t * t + t) / 2, true, c - 1, c * (i + 1) + t - 1 + 2 * i * t,
                true};
    case AlphaDisplay::Lim3:
        return {c * k * t + k * t * t - i * t - (t * t + t) / 2, true, c, c * (i + 1) + 2 * t * (i + 1), false};
    }
    throw std::logic_error("unreachable");
}

} // namespace

LaurentSeries alpha_display(const BaileyPair& p, AlphaDisplay d, int k, int i, Exponent order) {
    const Exponent c = p.base_exp();
    const bool lim2 = d == AlphaDisplay::Lim2I0 || d == AlphaDisplay::Lim2I1 || d == AlphaDisplay::Lim2General;
    if (c < 1 || (lim2 && c < 2)) throw RangeError("alpha-side display needs a larger base exponent");
    if (k < 1 || i < 0) throw RangeError("alpha-side display needs k >= 1 and i >= 0");

    SeriesSum sum(order);
    Exponent prev = 0;
    Exponent min_val = 0;
    int above = 0;
    for (Exponent t = 0;; ++t) {
        const DisplayTerm dt = display_term(d, c, k, i, t);
        LaurentSeries at = p.alpha_tilde(static_cast<int>(t), order - dt.exponent);
        if (!at.is_zero()) min_val = std::min(min_val, at.valuation());
        LaurentSeries term = shift(at, dt.exponent);
        term = times_factor(term, [&](Exponent K) {
            LaurentSeries x = LaurentSeries::monomial(dt.bracket, 1, K);
            if (dt.damped) {
                LaurentSeries num = LaurentSeries::from_terms({{0, 1}, {t + 1, 1}}, kExactOrder);
                LaurentSeries den = LaurentSeries::from_terms({{0, 1}, {c + t - 1, 1}}, kExactOrder);
                x = mul(x, mul(num, invert(den, K), K), K);
            }
            LaurentSeries f = sub(LaurentSeries::one(K), x);
            if (dt.ratio)
                f = mul(f, mul(cached_poch(kMinusQ, t, K), cached_inv_poch(PochFactor{-1, dt.ratio_base, 1}, t, K), K), K);
            return f;
        }, order);
        sum.add(term);

        const bool rising = t == 0 || dt.exponent > prev;
        above = (rising && dt.exponent + min_val > order) ? above + 1 : 0;
        prev = dt.exponent;
        if (above >= 3) break;
        if (t > 100000) throw RunawayError("alpha-side sum does not terminate");
    }
    return sum.result();
}

AlphaDisplay alpha_display_for(const Schedule& s) {
    switch (s.kind) {
    case Kind::Lim1: return AlphaDisplay::Lim1;
    case Kind::Lim2:
        return s.i == 0 ? AlphaDisplay::Lim2I0 : s.i == 1 ? AlphaDisplay::Lim2I1 : AlphaDisplay::Lim2General;
    case Kind::Lim3: return AlphaDisplay::Lim3;
    }
    throw std::logic_error("unreachable");
}

LaurentSeries alpha_side(const Schedule& s, Exponent order) {
    validate(s);
    return alpha_display(Registry::builtin().pair(s.pair_id), alpha_display_for(s), s.k, s.i, order);
}

LaurentSeries alpha_side_factor(const Schedule& s) {
    if (s.kind == Kind::Lim2 && s.i == 0) return LaurentSeries::from_terms({{0, 1}, {1, 1}}, kExactOrder);
    return LaurentSeries::one();
}

bool verify_limit_identity(const Schedule& s, const MultisumSpec& spec, Exponent order) {
    validate(s);
    const Exponent c = Registry::builtin().entry(s.pair_id).base_exp;
    const LaurentSeries lhs = mul(evaluate_limit(spec, order), poch_inf(PochFactor{1, c, 1}, order), order);
    return eq_to_order(lhs, alpha_side(s, order), order);
}

bool verify_limit_identity(const Schedule& s, Exponent order) {
    return verify_limit_identity(s, multisum_spec(s), order);
}

bool verify_remark_relations(int k, Exponent order) {
    if (k < 1) throw RangeError("k must be at least 1");
    const Registry& reg = Registry::builtin();
    const LaurentSeries one_plus_q = LaurentSeries::from_terms({{0, 1}, {1, 1}}, kExactOrder);
    bool ok = true;
    for (const auto& e : reg.entries()) {
        const BaileyPair p = make_pair(e);
        ok = ok && eq_to_order(alpha_display(p, AlphaDisplay::Lim1, k, 0, order),
                               alpha_display(p, AlphaDisplay::Lim1I0, k, 0, order), order);
        if (e.base_exp != 2) continue;
        ok = ok && eq_to_order(alpha_display(p, AlphaDisplay::Lim2General, k, 1, order),
                               alpha_display(p, AlphaDisplay::Lim2I1, k, 1, order), order);
        ok = ok && eq_to_order(mul(one_plus_q, alpha_display(p, AlphaDisplay::Lim2General, k, 0, order), order),
                               alpha_display(p, AlphaDisplay::Lim2I0, k, 0, order), order);
    }
    return ok;
}

bool cross_validate(const Schedule& s, int n_max, Exponent order) {
    const BaileyPair p = final_pair(s);
    const MultisumSpec spec = multisum_spec(s);
    for (int n = 0; n <= n_max; ++n)
        if (!eq_to_order(p.beta(n, order), evaluate_finite(spec, n, order), order)) return false;
    return true;
}

// ---------------------------------------------------------------- lemmas

bool lemma_b1bc1(int j1, int j3, Exponent order) {
    if (j3 < 0 || j1 < j3) throw RangeError("need j1 >= j3 >= 0");
    SeriesSum lhs(order);
    for (int j2 = j3; j2 <= j1; ++j2) {
        const Exponent e = -j2 + binom2(j2 - j3);
        LaurentSeries t = times_factor(LaurentSeries::monomial(e, 1, kExactOrder).truncated(order), [&](Exponent K) {
            return mul(cached_inv_poch(kQ, j1 - j2, K), cached_inv_poch(kQ, j2 - j3, K), K);
        }, order);
        lhs.add(t, ((j2 + j3) & 1) ? -1 : 1);
    }
    const int rhs_coef = j1 == j3 ? 1 : j1 == j3 + 1 ? -1 : 0;
    const LaurentSeries rhs = LaurentSeries::monomial(-j1, rhs_coef, kExactOrder).truncated(order);
    return eq_to_order(lhs.result(), rhs, order);
}

bool lemma_f2b1(int j1, int j3, int c, Exponent order) {
    if (j3 < 0 || j1 < j3) throw RangeError("need j1 >= j3 >= 0");
    if (c < 1) throw RangeError("need base exponent >= 1");
    const PochFactor minus_a{-1, c, 1};
    SeriesSum lhs(order);
    for (int j2 = j3; j2 <= j1; ++j2) {
        const Exponent e = binom2(j1 - j2);
        LaurentSeries t = times_factor(LaurentSeries::monomial(e, 1, kExactOrder).truncated(order), [&](Exponent K) {
            return mul(mul(cached_inv_poch(kQ, j1 - j2, K), cached_inv_poch(kQ, j2 - j3, K), K),
                       cached_inv_poch(minus_a, j2, K), K);
        }, order);
        lhs.add(t, (j2 & 1) ? -1 : 1);
    }
    const Exponent e = Exponent(c) * (j1 - j3) + binom2(j1 - j3) + binom2(j1) - binom2(j3);
    LaurentSeries rhs = times_factor(LaurentSeries::monomial(e, (j3 & 1) ? -1 : 1, kExactOrder).truncated(order),
                                     [&](Exponent K) {
                                         return mul(cached_inv_poch(minus_a, j1, K), cached_inv_poch(kQ, j1 - j3, K), K);
                                     },
                                     order);
    return eq_to_order(lhs.result(), rhs, order);
}

namespace {

LaurentSeries f2b1_lhs(int n, int t, int c, Exponent order) {
    const PochFactor minus_a{-1, c, 1};
    SeriesSum sum(order);
    for (int i = 0; i <= n; ++i) {
        LaurentSeries v = times_factor(LaurentSeries::monomial(binom2(i), 1, kExactOrder).truncated(order),
                                       [&](Exponent K) {
                                           LaurentSeries g = mul(cached_poch(kQ, n, K), cached_inv_poch(kQ, i, K), K);
                                           g = mul(g, cached_inv_poch(kQ, n - i, K), K);
                                           return mul(g, cached_inv_poch(minus_a, n - i + t, K), K);
                                       },
                                       order);
        sum.add(v, (i & 1) ? -1 : 1);
    }
    return sum.result();
}

LaurentSeries f2b1_rhs(int n, int t, int c, Exponent order) {
    const Exponent e = Exponent(c) * n + Exponent(n) * (n + t - 1);
    return times_factor(LaurentSeries::monomial(e, (n & 1) ? -1 : 1, kExactOrder).truncated(order),
                        [&](Exponent K) { return cached_inv_poch(PochFactor{-1, c, 1}, n + t, K); }, order);
}

} // namespace

bool f2b1_recurrence(int big_n, int t, int c, Exponent order) {
    if (big_n < 0 || t < 0) throw RangeError("need N, t >= 0");
    if (c < 1) throw RangeError("need base exponent >= 1");
    using F = LaurentSeries (*)(int, int, int, Exponent);
    bool ok = true;
    for (F f : {F(f2b1_lhs), F(f2b1_rhs)}) {
        const LaurentSeries step = sub(f(big_n, t + 1, c, order), shift(f(big_n, t, c, order), big_n));
        ok = ok && eq_to_order(f(big_n + 1, t, c, order), step, order);
        ok = ok && eq_to_order(f(0, t, c, order), cached_inv_poch(PochFactor{-1, c, 1}, t, order), order);
    }
    return ok && eq_to_order(f2b1_lhs(big_n, t, c, order), f2b1_rhs(big_n, t, c, order), order);
}

} // namespace a22
