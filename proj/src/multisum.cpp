#include "a22/multisum.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "a22/bailey.hpp"
#include "a22/errors.hpp"
#include "a22/qproducts.hpp"
#include "a22/registry.hpp"

namespace a22 {

namespace {

constexpr Exponent kInf = std::numeric_limits<Exponent>::max() / 8;

Exponent binom2(Exponent n) { return n * (n - 1) / 2; }

const PochFactor kQ{1, 1, 1};

PochFactor concrete(const PochTerm& t, int c) {
    return PochFactor{t.sign, Exponent(c) * t.a_power + t.q_offset, 1};
}

void check_poch(const PochTerm& t, int c) {
    if (t.sign != 1 && t.sign != -1) throw RangeError("Pochhammer sign must be +-1");
    if (t.power != 1 && t.power != -1) throw RangeError("Pochhammer power must be +-1");
    const Exponent base = Exponent(c) * t.a_power + t.q_offset;
    if (t.power == -1 && base < 1) throw RangeError("inverted Pochhammer symbol is not unit-leading");
    if (base < 0 || (base == 0 && t.sign == 1)) throw RangeError("Pochhammer base has negative exponent or vanishes");
}

/// prod of the Pochhammer terms at index j (finite) or at infinity.
LaurentSeries poch_product(const std::vector<PochTerm>& ts, int c, std::optional<Exponent> j,
                           Exponent order) {
    LaurentSeries v = LaurentSeries::one(order);
    for (const auto& t : ts) {
        const PochFactor f = concrete(t, c);
        LaurentSeries p;
        if (j) {
            p = t.power == 1 ? cached_poch(f, *j, order) : cached_inv_poch(f, *j, order);
        } else {
            p = poch_inf(f, order);
            if (t.power == -1) p = invert(p, order);
        }
        v = mul(v, p, order);
    }
    return v;
}

struct Tables {
    int cap = 0;
    std::vector<std::vector<Exponent>> M; // min exponent of the suffix from (r, x)
    std::vector<std::vector<Exponent>> P; // min exponent of the prefix down to (r, x)
};

Exponent link_exp(const MultisumSpec& s, std::size_t r, Exponent d) { return s.link_binom[r] * binom2(d); }

std::vector<std::vector<Exponent>> suffix_min(const MultisumSpec& s, const BetaSource& b, int cap) {
    const std::size_t V = s.vars.size();
    std::vector<std::vector<Exponent>> M(V, std::vector<Exponent>(cap + 1, kInf));
    for (int x = 0; x <= cap; ++x) M[V - 1][x] = variable_exponent(s, V - 1, x) + b.valuation(x);
    for (std::size_t r = V - 1; r-- > 0;) {
        for (int x = 0; x <= cap; ++x) {
            Exponent best = kInf;
            for (int y = 0; y <= x; ++y) best = std::min(best, link_exp(s, r, x - y) + M[r + 1][y]);
            M[r][x] = variable_exponent(s, r, x) + best;
        }
    }
    return M;
}

std::vector<std::vector<Exponent>> prefix_min(const MultisumSpec& s, int cap) {
    const std::size_t V = s.vars.size();
    std::vector<std::vector<Exponent>> P(V, std::vector<Exponent>(cap + 1, kInf));
    for (int x = 0; x <= cap; ++x) P[0][x] = 0;
    for (std::size_t r = 0; r + 1 < V; ++r) {
        for (int y = 0; y <= cap; ++y) {
            Exponent best = kInf;
            for (int x = y; x <= cap; ++x)
                if (P[r][x] < kInf)
                    best = std::min(best, P[r][x] + variable_exponent(s, r, x) + link_exp(s, r, x - y));
            P[r + 1][y] = best;
        }
    }
    return P;
}

struct CoreResult {
    LaurentSeries total;
    std::vector<Exponent> slice_valuation; // valuation of each j_1 slice, kInf if zero
};

/// Sum over j_1 <= cap of top_weight(j_1) * S_1(j_1), exact to order.
CoreResult evaluate_core(const MultisumSpec& s, const BetaSource& b, int cap, Exponent order,
                            const std::function<LaurentSeries(int, Exponent)>* top_weight,
                            MultisumStats* stats) {
    const std::size_t V = s.vars.size();
    const int c = s.base_exp;
    const auto M = suffix_min(s, b, cap);
    const auto P = prefix_min(s, cap);
    auto needed = [&](std::size_t r, int x) { return P[r][x] < kInf && P[r][x] + M[r][x] <= order; };

    std::vector<std::vector<std::optional<LaurentSeries>>> S(V, std::vector<std::optional<LaurentSeries>>(cap + 1));
    long cells = 0, pruned = 0;
    for (std::size_t r = V; r-- > 0;) {
        const SumVariable& v = s.vars[r];
        for (int x = 0; x <= cap; ++x) {
            if (!needed(r, x)) {
                ++pruned;
                continue;
            }
            ++cells;
            const Exponent K = order - P[r][x];
            const Exponent e = variable_exponent(s, r, x);
            LaurentSeries inner;
            if (r == V - 1) {
                inner = b.beta(x, K - e);
            } else {
                SeriesSum sum(K - e);
                for (int y = 0; y <= x; ++y) {
                    if (!S[r + 1][y]) continue;
                    const Exponent l = link_exp(s, r, x - y);
                    LaurentSeries t = shift(*S[r + 1][y], l);
                    sum.add(times_factor(t, [&](Exponent k) { return cached_inv_poch(kQ, x - y, k); }, K - e));
                }
                inner = sum.result();
            }
            LaurentSeries val = shift(inner, e);
            if (!v.poch.empty())
                val = times_factor(val, [&](Exponent k) { return poch_product(v.poch, c, Exponent(x), k); }, K);
            if (v.sign && (x & 1)) val = -val;
            S[r][x] = std::move(val);
        }
    }

    SeriesSum total(order);
    std::vector<Exponent> slice(cap + 1, kInf);
    for (int x = 0; x <= cap; ++x) {
        if (!S[0][x]) continue;
        if (!S[0][x]->is_zero()) slice[x] = S[0][x]->valuation();
        if (top_weight)
            total.add(times_factor(*S[0][x], [&](Exponent k) { return (*top_weight)(x, k); }, order));
        else
            total.add(*S[0][x]);
    }
    if (stats) {
        stats->cap = cap;
        stats->cells = cells;
        stats->pruned = pruned;
    }
    return {total.result(), std::move(slice)};
}

constexpr int kMaxWindow = 1024;

/// Largest j_1 whose termwise suffix bound stays within order, found by
/// doubling the search window until it is well past the last contributing
/// value. Empty when the bound does not grow, i.e. when the j_1 slices only
/// become small through cancellation.
std::optional<int> find_cap(const MultisumSpec& s, const BetaSource& b, Exponent order) {
    for (int window = 8; window <= kMaxWindow; window *= 2) {
        const auto M = suffix_min(s, b, window);
        int last_ok = -1;
        for (int x = 0; x <= window; ++x)
            if (M[0][x] <= order) last_ok = x;
        if (window >= 2 * last_ok + 4) return std::max(last_ok, 0);
    }
    return std::nullopt;
}

/// Evaluates whole j_1 slices exactly and doubles the cap until every slice
/// in the upper half of the window vanishes to order.
CoreResult evaluate_by_slices(const MultisumSpec& s, const BetaSource& b, Exponent order, int extra_cap,
                              MultisumStats* stats) {
    // A convergent sum has slice valuations growing with j_1, so nonzero
    // slices far past the order mean the cancellation is broken.
    const Exponent limit = std::min<Exponent>(kMaxWindow, 4 * std::max<Exponent>(order, 0) + 64);
    for (int cap = 8; cap <= limit; cap *= 2) {
        CoreResult r = evaluate_core(s, b, cap, order, nullptr, stats);
        int last = -1;
        for (int x = 0; x <= cap; ++x)
            if (r.slice_valuation[x] <= order) last = x;
        if (cap >= 2 * last + 4) {
            if (extra_cap == 0) return r;
            return evaluate_core(s, b, cap + extra_cap, order, nullptr, stats);
        }
    }
    throw RunawayError("multisum slices do not vanish");
}

} // namespace

void validate(const MultisumSpec& s) {
    if (s.vars.empty()) throw RangeError("multisum needs at least one variable");
    if (s.link_binom.size() + 1 != s.vars.size()) throw RangeError("multisum link count mismatch");
    if (s.coefficient != 1 && s.coefficient != -1) throw RangeError("multisum coefficient must be +-1");
    for (const auto& v : s.vars)
        for (const auto& t : v.poch) check_poch(t, s.base_exp);
    for (const auto& t : s.outer) check_poch(t, s.base_exp);
}

Exponent variable_exponent(const MultisumSpec& s, std::size_t r, Exponent j) {
    const SumVariable& v = s.vars[r];
    return Exponent(s.base_exp) * v.a_coeff * j + v.square * j * j + v.linear * j + v.binom_self * binom2(j);
}

BetaSource registry_beta_source(int pair_id) {
    const RegistryEntry e = Registry::builtin().entry(pair_id);
    return BetaSource{
        [e](int n, Exponent order) { return registry_beta(e, n, order); },
        [e](int n) { return registry_beta_valuation(e, n); },
    };
}

LaurentSeries evaluate_limit(const MultisumSpec& s, const BetaSource& b, Exponent order, int extra_cap,
                             MultisumStats* stats) {
    validate(s);
    const Exponent inner = order - s.shift;
    const std::optional<int> cap = find_cap(s, b, inner);
    LaurentSeries v = cap ? evaluate_core(s, b, *cap + extra_cap, inner, nullptr, stats).total
                          : evaluate_by_slices(s, b, inner, extra_cap, stats).total;
    if (!s.outer.empty())
        v = times_factor(v, [&](Exponent k) { return poch_product(s.outer, s.base_exp, std::nullopt, k); }, inner);
    v = shift(v, s.shift);
    return s.coefficient == 1 ? v : -v;
}

LaurentSeries evaluate_limit(const MultisumSpec& s, Exponent order, int extra_cap, MultisumStats* stats) {
    return evaluate_limit(s, registry_beta_source(s.pair_id), order, extra_cap, stats);
}

LaurentSeries evaluate_finite(const MultisumSpec& s, const BetaSource& b, int n, Exponent order) {
    validate(s);
    const Exponent inner = order - s.shift;
    const std::function<LaurentSeries(int, Exponent)> top = [n](int x, Exponent k) {
        return cached_inv_poch(kQ, n - x, k);
    };
    LaurentSeries v = evaluate_core(s, b, n, inner, &top, nullptr).total;
    if (!s.outer.empty())
        v = times_factor(v, [&](Exponent k) { return poch_product(s.outer, s.base_exp, Exponent(n), k); }, inner);
    v = shift(v, s.shift);
    return s.coefficient == 1 ? v : -v;
}

LaurentSeries evaluate_finite(const MultisumSpec& s, int n, Exponent order) {
    return evaluate_finite(s, registry_beta_source(s.pair_id), n, order);
}

LaurentSeries evaluate_limit(const std::vector<MultisumSpec>& terms, Exponent order) {
    SeriesSum sum(order);
    for (const auto& t : terms) sum.add(evaluate_limit(t, order));
    return sum.result();
}

bool certify_stable(const MultisumSpec& s, Exponent order) {
    return eq_to_order(evaluate_limit(s, order), evaluate_limit(s, order, 2), order);
}

// ------------------------------------------------------------------ JSON

namespace {

nlohmann::json poch_json(const std::vector<PochTerm>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& t : v)
        a.push_back({{"sign", t.sign}, {"a_power", t.a_power}, {"q_offset", t.q_offset}, {"power", t.power}});
    return a;
}

std::vector<PochTerm> poch_from(const nlohmann::json& a) {
    std::vector<PochTerm> v;
    for (const auto& t : a)
        v.push_back({t.at("sign").get<int>(), t.at("a_power").get<int>(), t.at("q_offset").get<Exponent>(),
                     t.at("power").get<int>()});
    return v;
}

} // namespace

nlohmann::json to_json(const MultisumSpec& s) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : s.vars)
        vars.push_back({{"a_coeff", v.a_coeff},
                        {"square", v.square},
                        {"linear", v.linear},
                        {"binom_self", v.binom_self},
                        {"sign", v.sign},
                        {"poch", poch_json(v.poch)}});
    return {{"pair_id", s.pair_id},     {"base_exp", s.base_exp},       {"variables", vars},
            {"link_binom", s.link_binom}, {"outer", poch_json(s.outer)}, {"coefficient", s.coefficient},
            {"shift", s.shift},           {"beta", "pair " + std::to_string(s.pair_id)}};
}

MultisumSpec multisum_from_json(const nlohmann::json& j) {
    try {
        MultisumSpec s;
        s.pair_id = j.at("pair_id").get<int>();
        s.base_exp = j.at("base_exp").get<int>();
        for (const auto& v : j.at("variables"))
            s.vars.push_back({v.at("a_coeff").get<int>(), v.at("square").get<Exponent>(),
                              v.at("linear").get<Exponent>(), v.at("binom_self").get<Exponent>(),
                              v.at("sign").get<bool>(), poch_from(v.at("poch"))});
        s.link_binom = j.at("link_binom").get<std::vector<Exponent>>();
        s.outer = poch_from(j.at("outer"));
        s.coefficient = j.at("coefficient").get<int>();
        s.shift = j.at("shift").get<Exponent>();
        validate(s);
        return s;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(std::string("malformed multisum: ") + ex.what());
    } catch (const RangeError& ex) {
        throw DataError(std::string("invalid multisum: ") + ex.what());
    }
}

// ----------------------------------------------------------------- LaTeX

namespace {

std::string jname(std::size_t r) { return "j_{" + std::to_string(r + 1) + "}"; }

std::string qpower(Exponent e) {
    if (e == 1) return "q";
    return "q^{" + std::to_string(e) + "}";
}

std::string poch_latex(int sign, Exponent base, Exponent step, const std::string& index) {
    std::string b = base == 0 ? "1" : qpower(base);
    if (sign == -1) b = "-" + b;
    if (step == 1 && base == 1) return "(" + b + ")_{" + index + "}";
    return "(" + b + ";" + qpower(step) + ")_{" + index + "}";
}

/// Appends "+ coef*term" to a running exponent expression.
void add_term(std::string& out, Exponent coef, const std::string& term) {
    if (coef == 0) return;
    if (!out.empty()) out += coef > 0 ? "+" : "-";
    else if (coef < 0) out += "-";
    const Exponent m = coef < 0 ? -coef : coef;
    if (term.empty()) {
        out += std::to_string(m);
        return;
    }
    if (m != 1) out += std::to_string(m);
    out += term;
}

std::string beta_latex(const RegistryEntry& e, const std::string& j) {
    std::string num, den, ex;
    add_term(ex, e.beta_q_quadratic, j + "^2");
    add_term(ex, e.beta_q_linear, j);
    if (!ex.empty()) {
        if (e.beta_q_denominator != 1) ex = "(" + ex + ")/" + std::to_string(e.beta_q_denominator);
        num = "q^{" + ex + "}";
    }
    auto len = [&](Exponent m) { return m == 1 ? j : std::to_string(m) + j; };
    for (const auto& p : e.beta_numerator) num += poch_latex(p.sign, p.base_exp, p.step, len(p.length_mult));
    for (const auto& p : e.beta_denominator) den += poch_latex(p.sign, p.base_exp, p.step, len(p.length_mult));
    if (num.empty()) num = "1";
    return den.empty() ? num : "\\frac{" + num + "}{" + den + "}";
}

} // namespace

std::string to_latex(const MultisumSpec& s) {
    const std::size_t V = s.vars.size();
    const int c = s.base_exp;
    std::ostringstream o;
    if (s.coefficient == -1) o << "-";
    o << "\\sum_{";
    for (std::size_t r = 0; r < V; ++r) o << jname(r) << "\\geq ";
    o << "0}";

    std::string signs;
    for (std::size_t r = 0; r < V; ++r)
        if (s.vars[r].sign) signs += (signs.empty() ? "" : "+") + jname(r);
    if (!signs.empty()) o << "(-1)^{" << signs << "}";

    std::string ex;
    add_term(ex, s.shift, "");
    for (std::size_t r = 0; r < V; ++r) {
        const auto& v = s.vars[r];
        add_term(ex, v.square, jname(r) + "^2");
        add_term(ex, Exponent(c) * v.a_coeff + v.linear, jname(r));
        add_term(ex, v.binom_self, "\\binom{" + jname(r) + "}{2}");
    }
    for (std::size_t r = 0; r + 1 < V; ++r)
        add_term(ex, s.link_binom[r], "\\binom{" + jname(r) + "-" + jname(r + 1) + "}{2}");

    std::string num = ex.empty() ? "" : "q^{" + ex + "}";
    std::string den;
    for (std::size_t r = 0; r < V; ++r)
        for (const auto& t : s.vars[r].poch) {
            const std::string p = poch_latex(t.sign, Exponent(c) * t.a_power + t.q_offset, 1, jname(r));
            (t.power == 1 ? num : den) += p;
        }
    for (const auto& t : s.outer) {
        const std::string p = poch_latex(t.sign, Exponent(c) * t.a_power + t.q_offset, 1, "\\infty");
        (t.power == 1 ? num : den) += p;
    }
    for (std::size_t r = 0; r + 1 < V; ++r) den += "(q)_{" + jname(r) + "-" + jname(r + 1) + "}";
    if (num.empty()) num = "1";
    if (den.empty())
        o << num;
    else
        o << "\\frac{" << num << "}{" << den << "}";
    o << beta_latex(Registry::builtin().entry(s.pair_id), jname(V - 1));
    return o.str();
}

} // namespace a22
