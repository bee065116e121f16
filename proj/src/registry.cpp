#include "a22/registry.hpp"

#include <fstream>
#include <set>

#include "a22/errors.hpp"
#include "a22/qproducts.hpp"

namespace a22 {

namespace {

int residue_of(int n) {
    const int r = n % 3;
    return r == 2 ? -1 : r;
}

const AlphaCase& case_for(const RegistryEntry& e, int residue) {
    for (const auto& c : e.alpha_cases)
        if (c.residue == residue) return c;
    throw DataError("pair " + std::to_string(e.id) + ": no alpha~ case for residue " +
                    std::to_string(residue));
}

Exponent floor_mod(Exponent x, Exponent m) { return ((x % m) + m) % m; }

[[noreturn]] void fail(const RegistryEntry& e, const std::string& what) {
    throw DataError("registry pair " + std::to_string(e.id) + ": " + what);
}

void validate_poch(const RegistryEntry& e, const BetaPoch& p, bool denominator) {
    if (p.sign != 1 && p.sign != -1) fail(e, "Pochhammer sign must be +1 or -1");
    if (p.base_exp < 0) fail(e, "Pochhammer base exponent must be nonnegative");
    if (p.step < 1) fail(e, "Pochhammer step must be positive");
    if (p.length_mult < 0) fail(e, "Pochhammer length multiplier must be nonnegative");
    if (denominator && p.sign == 1 && p.base_exp == 0 && p.length_mult > 0)
        fail(e, "denominator vanishes");
}

} // namespace

void validate(const RegistryEntry& e) {
    if (e.id < 1) fail(e, "id must be positive");
    if (e.base_exp < 1) fail(e, "base exponent must be at least 1");
    if (e.alpha_denominator < 1) fail(e, "alpha~ denominator must be positive");
    if (e.alpha_cases.size() != 3) fail(e, "alpha~ needs exactly three residue cases");
    std::set<int> seen;
    for (const auto& c : e.alpha_cases) {
        if (c.residue < -1 || c.residue > 1) fail(e, "residue must be -1, 0 or 1");
        if (!seen.insert(c.residue).second) fail(e, "duplicate residue");
        if (c.sign < -1 || c.sign > 1) fail(e, "alpha~ sign must be -1, 0 or 1");
        if (c.sign == 0) continue;
        const Exponent rep = c.residue < 0 ? 2 : c.residue;
        for (Exponent t = 0; t < e.alpha_denominator; ++t) {
            const Exponent m = rep + 3 * t;
            if (floor_mod(c.quadratic * m * m + c.linear * m, e.alpha_denominator) != 0)
                fail(e, "alpha~ exponent is not integral");
        }
    }
    const auto& c0 = case_for(e, 0);
    if (c0.sign != 1) fail(e, "alpha~_0 must be 1");
    if (e.beta_q_denominator < 1) fail(e, "beta exponent denominator must be positive");
    for (Exponent n = 0; n < e.beta_q_denominator; ++n)
        if (floor_mod(e.beta_q_quadratic * n * n + e.beta_q_linear * n, e.beta_q_denominator) != 0)
            fail(e, "beta exponent is not integral");
    for (const auto& p : e.beta_numerator) validate_poch(e, p, false);
    for (const auto& p : e.beta_denominator) validate_poch(e, p, true);
}

LaurentSeries registry_alpha_tilde(const RegistryEntry& e, int n, Exponent order) {
    const auto& c = case_for(e, residue_of(n));
    if (c.sign == 0) return LaurentSeries::zero(order);
    const Exponent m = n;
    const Exponent exp = (c.quadratic * m * m + c.linear * m) / e.alpha_denominator;
    return LaurentSeries::monomial(exp, c.sign, kExactOrder).truncated(order);
}

Exponent registry_beta_valuation(const RegistryEntry& e, int n) {
    const Exponent nn = n;
    return (e.beta_q_quadratic * nn * nn + e.beta_q_linear * nn) / e.beta_q_denominator;
}

LaurentSeries registry_beta(const RegistryEntry& e, int n, Exponent order) {
    const Exponent nn = n;
    const Exponent pre = registry_beta_valuation(e, n);
    const Exponent k = order - pre;

    // Factors (-1; q^d)_L contribute a constant 2 each; those are counted
    // separately so that every remaining product is unit-leading.
    long twos = 0;
    auto reduce = [&](const BetaPoch& p, int dir, bool& vanishes) {
        const Exponent len = p.length_mult * nn;
        PochFactor f{p.sign, p.base_exp, p.step};
        if (len > 0 && p.base_exp == 0) {
            if (p.sign == 1) vanishes = true;
            twos += dir;
            return std::pair{PochFactor{p.sign, p.step, p.step}, len - 1};
        }
        return std::pair{f, len};
    };

    bool vanishes = false;
    std::vector<std::pair<PochFactor, Exponent>> num, den;
    for (const auto& p : e.beta_numerator) num.push_back(reduce(p, 1, vanishes));
    for (const auto& p : e.beta_denominator) den.push_back(reduce(p, -1, vanishes));
    if (vanishes) return LaurentSeries::zero(order);
    if (k < 0) return LaurentSeries::zero(order);

    LaurentSeries v = LaurentSeries::one(k);
    for (const auto& [f, len] : num) v = mul(v, cached_poch(f, len, k), k);
    for (const auto& [f, len] : den) v = mul(v, cached_inv_poch(f, len, k), k);

    if (twos > 0) {
        v = scale(v, mpz_class(1) << twos);
    } else if (twos < 0) {
        const mpz_class d = mpz_class(1) << -twos;
        std::vector<Term> terms;
        for (const auto& t : v.terms()) {
            if (!mpz_divisible_p(t.coef.get_mpz_t(), d.get_mpz_t()))
                throw NonUnitError("registry pair " + std::to_string(e.id) +
                                   ": beta is not integral");
            terms.push_back({t.exp, t.coef / d});
        }
        v = LaurentSeries::from_terms(std::move(terms), v.trunc());
    }
    return shift(v, pre);
}

BaileyPair make_pair(const RegistryEntry& e) {
    validate(e);
    Sequence tilde([e](int n, Exponent order, const Sequence&) { return registry_alpha_tilde(e, n, order); });
    Sequence beta([e](int n, Exponent order, const Sequence&) { return registry_beta(e, n, order); });
    return BaileyPair::from_alpha_tilde(e.base_exp, tilde, beta, {"pair " + std::to_string(e.id)});
}

// ------------------------------------------------------------------ JSON

nlohmann::json to_json(const RegistryEntry& e) {
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : e.alpha_cases)
        cases.push_back({{"residue", c.residue}, {"sign", c.sign}, {"quadratic", c.quadratic},
                         {"linear", c.linear}});
    auto poch_list = [](const std::vector<BetaPoch>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& p : v)
            a.push_back({{"sign", p.sign}, {"base_exp", p.base_exp}, {"step", p.step},
                         {"length_mult", p.length_mult}});
        return a;
    };
    return {
        {"id", e.id},
        {"base_exp", e.base_exp},
        {"source", e.source},
        {"moduli", e.moduli},
        {"alpha_tilde", {{"denominator", e.alpha_denominator}, {"cases", cases}}},
        {"beta",
         {{"q_quadratic", e.beta_q_quadratic},
          {"q_linear", e.beta_q_linear},
          {"q_denominator", e.beta_q_denominator},
          {"numerator", poch_list(e.beta_numerator)},
          {"denominator", poch_list(e.beta_denominator)}}},
    };
}

RegistryEntry entry_from_json(const nlohmann::json& j) {
    try {
        RegistryEntry e;
        e.id = j.at("id").get<int>();
        e.base_exp = j.at("base_exp").get<int>();
        e.source = j.at("source").get<std::string>();
        e.moduli = j.at("moduli").get<std::vector<std::string>>();
        const auto& a = j.at("alpha_tilde");
        e.alpha_denominator = a.at("denominator").get<Exponent>();
        for (const auto& c : a.at("cases"))
            e.alpha_cases.push_back({c.at("residue").get<int>(), c.at("sign").get<int>(),
                                     c.at("quadratic").get<Exponent>(), c.at("linear").get<Exponent>()});
        const auto& b = j.at("beta");
        e.beta_q_quadratic = b.at("q_quadratic").get<Exponent>();
        e.beta_q_linear = b.at("q_linear").get<Exponent>();
        e.beta_q_denominator = b.at("q_denominator").get<Exponent>();
        auto polist = [](const nlohmann::json& arr) {
            std::vector<BetaPoch> v;
            for (const auto& p : arr)
                v.push_back({p.at("sign").get<int>(), p.at("base_exp").get<Exponent>(),
                             p.at("step").get<Exponent>(), p.at("length_mult").get<Exponent>()});
            return v;
        };
        e.beta_numerator = polist(b.at("numerator"));
        e.beta_denominator = polist(b.at("denominator"));
        validate(e);
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(std::string("malformed registry entry: ") + ex.what());
    }
}

const Registry& Registry::builtin() {
    static const Registry r = [] {
        using V = std::vector<BetaPoch>;
        const BetaPoch q2n{1, 1, 1, 2};   // (q)_{2n}
        const BetaPoch q2q2n{1, 2, 1, 2}; // (q^2;q)_{2n}
        Registry reg;
        reg.entries_ = {
            {1, 1, "A1", {"12k+8", "12k+2"}, 3, {{-1, -1, 2, -1}, {0, 1, 2, -1}, {1, 0, 0, 0}},
             0, 0, 1, V{}, V{q2n}},
            {2, 2, "A2", {"12k+8", "12k+2"}, 3, {{-1, 0, 0, 0}, {0, 1, 2, 1}, {1, -1, 2, 1}},
             0, 0, 1, V{}, V{q2q2n}},
            {3, 1, "A7", {"12k+4", "12k-2"}, 3, {{-1, -1, 1, -2}, {0, 1, 1, -2}, {1, 0, 0, 0}},
             1, -1, 1, V{}, V{q2n}},
            {4, 2, "A6", {"12k+4", "12k-2"}, 3, {{-1, 0, 0, 0}, {0, 1, 1, -1}, {1, -1, 1, -1}},
             1, 0, 1, V{}, V{q2q2n}},
            {5, 1, "P1", {"12k+6", "12k"}, 2, {{-1, -1, 1, -1}, {0, 1, 1, -1}, {1, 0, 0, 0}},
             0, 0, 1, V{{-1, 0, 3, 1}}, V{q2n, {-1, 0, 1, 1}}},
        };
        for (const auto& e : reg.entries_) validate(e);
        return reg;
    }();
    return r;
}

Registry Registry::from_json(const nlohmann::json& j) {
    try {
        if (j.at("schema_version").get<int>() != 1) throw DataError("unsupported registry schema version");
        Registry reg;
        std::set<int> ids;
        for (const auto& ej : j.at("pairs")) {
            RegistryEntry e = entry_from_json(ej);
            if (!ids.insert(e.id).second) throw DataError("duplicate registry id " + std::to_string(e.id));
            reg.entries_.push_back(std::move(e));
        }
        return reg;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError(std::string("malformed registry: ") + ex.what());
    }
}

Registry Registry::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open registry file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw DataError("registry file " + path.string() + " is not valid JSON: " + ex.what());
    }
    return from_json(j);
}

nlohmann::json Registry::to_json() const {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& e : entries_) pairs.push_back(a22::to_json(e));
    return {{"schema_version", 1}, {"pairs", pairs}};
}

const RegistryEntry& Registry::entry(int id) const {
    for (const auto& e : entries_)
        if (e.id == id) return e;
    throw RangeError("unknown pair id " + std::to_string(id));
}

BaileyPair Registry::pair(int id) const { return make_pair(entry(id)); }

} // namespace a22
