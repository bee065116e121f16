#include "a22/simplified.hpp"

#include "a22/bailey.hpp"
#include "a22/errors.hpp"
#include "a22/qproducts.hpp"

namespace a22 {

namespace {

const PochFactor kQ{1, 1, 1};

PochTerm minus_q() { return {-1, 0, 1, 1}; }
PochTerm inv_minus_q() { return {-1, 0, 1, -1}; }

SumVariable v(Exponent sq, Exponent lin, bool sign = false, Exponent bs = 0, std::vector<PochTerm> poch = {}) {
    SumVariable x;
    x.square = sq;
    x.linear = lin;
    x.sign = sign;
    x.binom_self = bs;
    x.poch = std::move(poch);
    return x;
}

MultisumSpec spec(int pair, int base, std::vector<SumVariable> vars, std::vector<Exponent> links,
                  int coefficient = 1, Exponent shift = 0, std::vector<PochTerm> outer = {}) {
    MultisumSpec m;
    m.pair_id = pair;
    m.base_exp = base;
    m.vars = std::move(vars);
    m.link_binom = std::move(links);
    m.coefficient = coefficient;
    m.shift = shift;
    m.outer = std::move(outer);
    return m;
}

/// sum_{j>=j0} term(j, K), stopping once `bound` (a lower bound for the
/// valuation of term j) has exceeded order three times in a row while rising.
LaurentSeries single_sum(Exponent order, int j0, const std::function<Exponent(Exponent)>& bound,
                         const std::function<LaurentSeries(Exponent, Exponent)>& term) {
    SeriesSum sum(order);
    int above = 0;
    for (Exponent j = j0;; ++j) {
        const Exponent b = bound(j);
        if (b <= order) sum.add(term(j, order));
        above = (b > order && (j == j0 || b > bound(j - 1))) ? above + 1 : 0;
        if (above >= 3) break;
    }
    return sum.result();
}

LaurentSeries monomial_times(Exponent e, Exponent order, const std::function<LaurentSeries(Exponent)>& f) {
    return times_factor(LaurentSeries::monomial(e, 1, kExactOrder).truncated(order), f, order);
}

/// The f2b1-collapsed double sum over j1 >= j3 with beta of the given pair.
MultisumSpec f2b1_double(int pair) {
    return spec(pair, 1, {v(0, 0, true, 1, {inv_minus_q()}), v(0, 0, true, 0, {minus_q()})}, {1});
}

/// q^(j^2 - j) (1 - q^(2j)) beta_j.
std::vector<MultisumSpec> b1bc1_single_base1(int pair) {
    return {spec(pair, 1, {v(1, -1)}, {}), spec(pair, 1, {v(1, 1)}, {}, -1)};
}

/// q^(j^2) (1 - q^(2j+1)) beta_j.
std::vector<MultisumSpec> b1bc1_single_base2(int pair) {
    return {spec(pair, 2, {v(1, 0)}, {}), spec(pair, 2, {v(1, 2)}, {}, -1, 1)};
}

/// sum_{j1>=j4>=j5} (-1)^(j4+j5) (-q^(j1^2 + lin_a j1 + shift_a) + q^(j1^2 + lin_b j1 - 2 j4))
/// q^binom(j4-j5, 2) / ((q)_(j1-j4) (q)_(j4-j5)) beta_(j5).
std::vector<MultisumSpec> collapsed_triple(int pair, int base, Exponent lin_a, Exponent shift_a, Exponent lin_b) {
    return {
        spec(pair, base, {v(1, lin_a), v(0, 0, true), v(0, 0, true)}, {0, 1}, -1, shift_a),
        spec(pair, base, {v(1, lin_b), v(0, -2, true), v(0, 0, true)}, {0, 1}),
    };
}

std::vector<SimplifiedForm> build() {
    std::vector<SimplifiedForm> c;
    auto put = [&](Schedule s, std::string name, std::string latex, std::vector<MultisumSpec> terms) {
        c.push_back({s, std::move(name), std::move(latex), std::move(terms), {}});
    };
    auto put_custom = [&](Schedule s, std::string name, std::string latex, std::function<LaurentSeries(Exponent)> f) {
        c.push_back({s, std::move(name), std::move(latex), {}, std::move(f)});
    };
    const std::string f2b1_tex =
        "\\sum_{j_1\\geq j_3\\geq 0}(-1)^{j_1+j_3}\\frac{q^{\\binom{j_1}{2}+\\binom{j_1-j_3}{2}}(-q)_{j_3}}"
        "{(q)_{j_1-j_3}(-q)_{j_1}}";

    // level 2
    put({Kind::Lim3, 1, 1, 3}, "f2b1 double sum", f2b1_tex + "\\frac{q^{j_3^2-j_3}}{(q)_{2j_3}}", {f2b1_double(3)});

    // level 3
    put_custom({Kind::Lim3, 1, 0, 5}, "single sum with (-q^3;q^3)",
               "\\frac{1}{(-q)_{\\infty}}\\left(1+\\sum_{j_1\\geq 1}\\frac{q^{j_1}q^{\\binom{j_1}{2}}(1+q^{j_1})"
               "(-q^3;q^3)_{j_1-1}}{(q;q)_{2j_1}}\\right)",
               [](Exponent order) {
                   LaurentSeries s = single_sum(
                       order, 1, [](Exponent j) { return j + j * (j - 1) / 2; },
                       [](Exponent j, Exponent N) {
                           return monomial_times(j + j * (j - 1) / 2, N, [&](Exponent K) {
                               LaurentSeries f = LaurentSeries::from_terms({{0, 1}, {j, 1}}, kExactOrder);
                               f = mul(f, cached_poch(PochFactor{-1, 3, 3}, j - 1, K), K);
                               return mul(f, cached_inv_poch(kQ, 2 * j, K), K);
                           });
                       });
                   s = a22::add(s, LaurentSeries::one(order));
                   return mul(s, invert(poch_inf(PochFactor{-1, 1, 1}, order), order), order);
               });
    put({Kind::Lim3, 1, 1, 5}, "f2b1 double sum",
        f2b1_tex + "\\frac{(-1;q^3)_{j_3}}{(q)_{2j_3}(-1;q)_{j_3}}", {f2b1_double(5)});

    // level 4
    put({Kind::Lim3, 1, 1, 1}, "f2b1 double sum", f2b1_tex + "\\frac{1}{(q)_{2j_3}}", {f2b1_double(1)});
    put({Kind::Lim3, 1, 2, 1}, "quadruple sum",
        "\\sum_{j_1\\geq j_2\\geq j_3\\geq j_5\\geq 0}(-1)^{j_2+j_5}\\frac{(-q)_{j_5}q^{j_1^2-j_3^2-j_2+"
        "\\binom{j_2-j_3}{2}+\\binom{j_3-j_5}{2}+\\binom{j_3}{2}}}{(q)_{j_1-j_2}(q)_{j_2-j_3}(q)_{j_3-j_5}"
        "(-q)_{j_3}}\\frac{1}{(q)_{2j_5}}",
        {spec(1, 1,
              {v(1, 0), v(0, -1, true), v(-1, 0, false, 1, {inv_minus_q()}), v(0, 0, true, 0, {minus_q()})},
              {0, 1, 1})});
    {
        auto a = spec(1, 1, {v(0, 1, true, 1, {inv_minus_q()}), v(0, 0, true, 0, {minus_q()})}, {1}, -1);
        auto b = spec(1, 1, {v(0, -1, true, 1, {inv_minus_q()}), v(0, 0, true, 0, {minus_q()})}, {1});
        put({Kind::Lim3, 1, 2, 1}, "double sum",
            "\\sum_{j_3\\geq j_5\\geq 0}(-1)^{j_3+j_5}(-q^{j_3}+q^{-j_3})\\frac{(-q)_{j_5}q^{\\binom{j_3-j_5}{2}"
            "+\\binom{j_3}{2}}}{(q)_{j_3-j_5}(-q)_{j_3}}\\frac{1}{(q)_{2j_5}}",
            {a, b});
    }
    {
        const std::vector<PochTerm> outer{inv_minus_q()};
        put({Kind::Lim2, 1, 2, 2}, "single sum",
            "\\sum_{j_3\\geq 0}\\frac{(-q)_{j_3}q^{\\binom{j_3}{2}}}{(-q)_{\\infty}}[1-q^{j_3}-q^{2j_3+1}]"
            "\\frac{1}{(q^2;q)_{2j_3}}",
            {spec(2, 2, {v(0, 0, false, 1, {minus_q()})}, {}, 1, 0, outer),
             spec(2, 2, {v(0, 1, false, 1, {minus_q()})}, {}, -1, 0, outer),
             spec(2, 2, {v(0, 2, false, 1, {minus_q()})}, {}, -1, 1, outer)});
    }

    // level 5
    put({Kind::Lim1, 1, 2, 3}, "single sum",
        "\\sum_{j_3\\geq 0}q^{j_3^2-j_3}(1-q^{2j_3})\\frac{q^{j_3^2-j_3}}{(q)_{2j_3}}", b1bc1_single_base1(3));
    put_custom({Kind::Lim1, 1, 2, 3}, "single sum, shifted", "\\sum_{j_3\\geq 0}\\frac{q^{2(j_3^2+j_3)}}{(q)_{2j_3+1}}",
               [](Exponent order) {
                   return single_sum(
                       order, 0, [](Exponent j) { return 2 * (j * j + j); },
                       [](Exponent j, Exponent N) {
                           return monomial_times(2 * (j * j + j), N,
                                                 [&](Exponent K) { return cached_inv_poch(kQ, 2 * j + 1, K); });
                       });
               });
    put({Kind::Lim1, 1, 2, 4}, "single sum",
        "\\sum_{j_3\\geq 0}q^{j_3^2}(1-q^{2j_3+1})\\frac{q^{j_3^2}}{(q^2;q)_{2j_3}}", b1bc1_single_base2(4));
    put_custom({Kind::Lim1, 1, 2, 4}, "single sum, shifted",
               "(1-q)+\\sum_{j_3\\geq 1}\\frac{q^{2j_3^2}}{(q^2;q)_{2j_3-1}}", [](Exponent order) {
                   LaurentSeries s = single_sum(
                       order, 1, [](Exponent j) { return 2 * j * j; },
                       [](Exponent j, Exponent N) {
                           return monomial_times(2 * j * j, N, [&](Exponent K) {
                               return cached_inv_poch(PochFactor{1, 2, 1}, 2 * j - 1, K);
                           });
                       });
                   return a22::add(s, LaurentSeries::from_terms({{0, 1}, {1, -1}}, order));
               });

    // level 6
    put({Kind::Lim1, 1, 2, 5}, "single sum",
        "\\sum_{j_3\\geq 0}q^{j_3^2-j_3}(1-q^{2j_3})\\frac{(-1;q^3)_{j_3}}{(q)_{2j_3}(-1;q)_{j_3}}",
        b1bc1_single_base1(5));
    put_custom({Kind::Lim1, 1, 2, 5}, "single sum, shifted",
               "\\sum_{j_3\\geq 0}q^{j_3^2+j_3}\\frac{(-q^3;q^3)_{j_3}}{(q)_{2j_3+1}(-q;q)_{j_3}}",
               [](Exponent order) {
                   return single_sum(
                       order, 0, [](Exponent j) { return j * j + j; },
                       [](Exponent j, Exponent N) {
                           return monomial_times(j * j + j, N, [&](Exponent K) {
                               LaurentSeries f = mul(cached_poch(PochFactor{-1, 3, 3}, j, K),
                                                     cached_inv_poch(kQ, 2 * j + 1, K), K);
                               return mul(f, cached_inv_poch(PochFactor{-1, 1, 1}, j, K), K);
                           });
                       });
               });
    const std::string triple_tex =
        "\\sum_{j_1\\geq j_4\\geq j_5\\geq 0}(-1)^{j_4+j_5}\\frac{(-q^{j_1^2+2j_1+1}+q^{j_1^2-2j_4})q^{\\binom{j_4-j_5}{2}}}"
        "{(q)_{j_1-j_4}(q)_{j_4-j_5}}";
    put({Kind::Lim1, 1, 3, 5}, "triple sum", triple_tex + "\\frac{(-1;q^3)_{j_5}}{(q)_{2j_5}(-1;q)_{j_5}}",
        collapsed_triple(5, 1, 2, 1, 0));

    // level 7
    put({Kind::Lim1, 1, 2, 1}, "single sum", "\\sum_{j_3\\geq 0}q^{j_3^2-j_3}(1-q^{2j_3})\\frac{1}{(q)_{2j_3}}",
        b1bc1_single_base1(1));
    put_custom({Kind::Lim1, 1, 2, 1}, "single sum, shifted", "\\sum_{j_3\\geq 0}\\frac{q^{j_3^2+j_3}}{(q)_{2j_3+1}}",
               [](Exponent order) {
                   return single_sum(
                       order, 0, [](Exponent j) { return j * j + j; },
                       [](Exponent j, Exponent N) {
                           return monomial_times(j * j + j, N,
                                                 [&](Exponent K) { return cached_inv_poch(kQ, 2 * j + 1, K); });
                       });
               });
    put({Kind::Lim1, 1, 3, 1}, "triple sum", triple_tex + "\\frac{1}{(q)_{2j_5}}", collapsed_triple(1, 1, 2, 1, 0));
    put({Kind::Lim1, 1, 2, 2}, "single sum", "\\sum_{j_3\\geq 0}q^{j_3^2}(1-q^{2j_3+1})\\frac{1}{(q^2;q)_{2j_3}}",
        b1bc1_single_base2(2));
    put_custom({Kind::Lim1, 1, 2, 2}, "single sum, shifted",
               "(1-q)+\\sum_{j_3\\geq 1}\\frac{q^{j_3^2}}{(q^2;q)_{2j_3-1}}", [](Exponent order) {
                   LaurentSeries s = single_sum(
                       order, 1, [](Exponent j) { return j * j; },
                       [](Exponent j, Exponent N) {
                           return monomial_times(j * j, N, [&](Exponent K) {
                               return cached_inv_poch(PochFactor{1, 2, 1}, 2 * j - 1, K);
                           });
                       });
                   return a22::add(s, LaurentSeries::from_terms({{0, 1}, {1, -1}}, order));
               });
    put({Kind::Lim1, 1, 3, 2}, "triple sum",
        "\\sum_{j_1\\geq j_4\\geq j_5\\geq 0}(-1)^{j_4+j_5}\\frac{(-q^{j_1^2+3j_1+3}+q^{j_1^2+j_1-2j_4})q^{\\binom{j_4-j_5}{2}}}"
        "{(q)_{j_1-j_4}(q)_{j_4-j_5}}\\frac{1}{(q^2;q)_{2j_5}}",
        collapsed_triple(2, 2, 3, 3, 1));
    return c;
}

} // namespace

LaurentSeries SimplifiedForm::evaluate(Exponent order) const {
    if (custom) return custom(order);
    return evaluate_limit(terms, order);
}

const std::vector<SimplifiedForm>& simplified_catalog() {
    static const std::vector<SimplifiedForm> c = build();
    return c;
}

std::vector<const SimplifiedForm*> simplified_forms(const Schedule& s) {
    std::vector<const SimplifiedForm*> out;
    for (const auto& f : simplified_catalog())
        if (f.schedule == s) out.push_back(&f);
    return out;
}

LaurentSeries simplified_sum_side(const Schedule& s, Exponent order) {
    const auto forms = simplified_forms(s);
    if (forms.empty()) throw RangeError("no simplified form is cataloged for " + to_string(s));
    return forms.front()->evaluate(order);
}

} // namespace a22
