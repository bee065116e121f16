#include "a22/identity.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "a22/bailey.hpp"
#include "a22/errors.hpp"
#include "a22/simplified.hpp"

namespace a22 {

using nlohmann::json;

IdentityRecord build_record(const Schedule& s, Exponent order) {
    validate(s);
    IdentityRecord r;
    r.schedule = s;
    for (Move m : expand_schedule(s)) r.moves.emplace_back(to_string(m));
    r.label = table2_module(s);
    const LaurentSeries norm = normalization(s);
    r.normalization = norm.to_string();
    r.normalization_latex = polynomial_latex(norm);
    r.sum_side = multisum_spec(s);
    const auto b = product_bases(r.label);
    const Exponent l = r.label.level();
    r.numerator = {{{b[0], b[1], b[2]}, l + 3}, {{b[3], b[4]}, 2 * l + 6}};
    r.denominator = {{{1}, 1}};
    r.order = order;

    const bool chain = verify_character_identity(s, r.label, order);
    r.stable = certify_stable(r.sum_side, order);
    const LaurentSeries sum = sum_side(s, order);
    for (const SimplifiedForm* f : simplified_forms(s))
        r.simplified.push_back({f->name, f->latex, eq_to_order(f->evaluate(order), sum, order)});
    r.status = chain && r.stable ? "verified" : "failed";
    return r;
}

std::vector<Schedule> catalog_schedules(int max_level) {
    std::vector<Schedule> out;
    for (const auto& row : table2_rows())
        for (int k = 1; row.level(k) <= max_level; ++k)
            for (int i = 0; i <= row.i_max(k); ++i) out.push_back({row.kind, k, i, row.pair_id});
    std::stable_sort(out.begin(), out.end(), [](const Schedule& x, const Schedule& y) {
        const Table2Row& rx = table2_row(x.pair_id, x.kind);
        const Table2Row& ry = table2_row(y.pair_id, y.kind);
        return std::tuple(rx.level(x.k), x.pair_id, int(x.kind), x.i) <
               std::tuple(ry.level(y.k), y.pair_id, int(y.kind), y.i);
    });
    return out;
}

std::vector<IdentityRecord> build_catalog(int max_level, Exponent order, int jobs) {
    const auto schedules = catalog_schedules(max_level);
    std::vector<IdentityRecord> out(schedules.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t t; (t = next++) < schedules.size();) {
            try {
                out[t] = build_record(schedules[t], order);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    jobs = std::clamp<int>(jobs, 1, std::max<int>(1, int(schedules.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

// ------------------------------------------------------------------ JSON

namespace {

json factors_json(const std::vector<ProductFactor>& v) {
    json a = json::array();
    for (const auto& f : v) a.push_back({{"bases", f.bases}, {"step", f.step}});
    return a;
}

std::vector<ProductFactor> factors_from(const json& a) {
    std::vector<ProductFactor> v;
    for (const auto& f : a) {
        ProductFactor p;
        p.bases = f.at("bases").get<std::vector<Exponent>>();
        p.step = f.at("step").get<Exponent>();
        v.push_back(std::move(p));
    }
    return v;
}

} // namespace

json to_json(const IdentityRecord& r) {
    json simplified = json::array();
    for (const auto& f : r.simplified)
        simplified.push_back({{"name", f.name}, {"latex", f.latex}, {"verified", f.verified}});
    return {
        {"schema_version", r.schema_version},
        {"pair", r.schedule.pair_id},
        {"kind", std::string(to_string(r.schedule.kind))},
        {"k", r.schedule.k},
        {"i", r.schedule.i},
        {"moves", r.moves},
        {"module",
         {{"s0", r.label.s0}, {"s1", r.label.s1}, {"level", r.label.level()}, {"modulus", r.label.modulus()}}},
        {"normalization", {{"series", r.normalization}, {"latex", r.normalization_latex}}},
        {"sum_side", to_json(r.sum_side)},
        {"product", {{"numerator", factors_json(r.numerator)}, {"denominator", factors_json(r.denominator)}}},
        {"simplified", simplified},
        {"order", r.order},
        {"stable", r.stable},
        {"status", r.status},
    };
}

IdentityRecord identity_from_json(const json& j) {
    try {
        IdentityRecord r;
        r.schema_version = j.at("schema_version").get<int>();
        if (r.schema_version != kIdentitySchemaVersion)
            throw DataError("unsupported identity schema_version " + std::to_string(r.schema_version));
        r.schedule = {parse_kind(j.at("kind").get<std::string>()), j.at("k").get<int>(), j.at("i").get<int>(),
                      j.at("pair").get<int>()};
        r.moves = j.at("moves").get<std::vector<std::string>>();
        const json& m = j.at("module");
        r.label = {m.at("s0").get<int>(), m.at("s1").get<int>()};
        if (m.at("level").get<int>() != r.label.level() || m.at("modulus").get<int>() != r.label.modulus())
            throw DataError("module level/modulus disagree with (s0, s1)");
        r.normalization = j.at("normalization").at("series").get<std::string>();
        r.normalization_latex = j.at("normalization").at("latex").get<std::string>();
        r.sum_side = multisum_from_json(j.at("sum_side"));
        r.numerator = factors_from(j.at("product").at("numerator"));
        r.denominator = factors_from(j.at("product").at("denominator"));
        for (const auto& f : j.at("simplified"))
            r.simplified.push_back(
                {f.at("name").get<std::string>(), f.at("latex").get<std::string>(), f.at("verified").get<bool>()});
        r.order = j.at("order").get<Exponent>();
        r.stable = j.at("stable").get<bool>();
        r.status = j.at("status").get<std::string>();
        if (r.status != "verified" && r.status != "failed") throw DataError("unknown status '" + r.status + "'");
        return r;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed identity record: ") + e.what());
    } catch (const RangeError& e) {
        throw DataError(std::string("malformed identity record: ") + e.what());
    }
}

// ------------------------------------------------------------ text/LaTeX

namespace {

std::string q_power(Exponent e) {
    if (e == 1) return "q";
    return "q^{" + std::to_string(e) + "}";
}

std::string factor_latex(const ProductFactor& f) {
    if (f.bases == std::vector<Exponent>{1} && f.step == 1) return "(q)_{\\infty}";
    std::string s = "(";
    for (std::size_t t = 0; t < f.bases.size(); ++t) s += (t ? "," : "") + q_power(f.bases[t]);
    return s + ";\\,\\," + q_power(f.step) + ")_{\\infty}";
}

std::string factor_text(const ProductFactor& f) {
    std::string s = "(";
    for (std::size_t t = 0; t < f.bases.size(); ++t) s += (t ? ", " : "") + std::string("q^") + std::to_string(f.bases[t]);
    return s + "; q^" + std::to_string(f.step) + ")_inf";
}

std::string product_latex(const IdentityRecord& r) {
    std::string num, den;
    for (const auto& f : r.numerator) num += factor_latex(f);
    for (const auto& f : r.denominator) den += factor_latex(f);
    const std::string n = r.normalization_latex == "1" ? "" : r.normalization_latex;
    return n + "\\frac{" + num + "}{" + den + "}";
}

} // namespace

std::string polynomial_latex(const LaurentSeries& p) {
    std::string s;
    for (const Term& t : p.terms()) {
        const bool neg = sgn(t.coef) < 0;
        const mpz_class mag = abs(t.coef);
        if (!s.empty() || neg) s += neg ? "-" : "+";
        if (mag != 1 || t.exp == 0) s += mag.get_str();
        if (t.exp != 0) s += q_power(t.exp);
    }
    if (s.empty()) return "0";
    return p.terms().size() > 1 ? "(" + s + ")" : s;
}

std::string to_text(const IdentityRecord& r) {
    std::ostringstream o;
    o << to_string(r.schedule) << ": L(" << r.label.s0 << "," << r.label.s1 << ") level " << r.label.level()
      << ", modulus " << r.label.modulus() << "\n";
    o << "  moves:";
    for (const auto& m : r.moves) o << " " << m;
    std::string norm = r.normalization_latex;
    std::erase_if(norm, [](char ch) { return ch == '{' || ch == '}'; });
    o << "\n  sum side = " << (norm == "1" ? "" : norm + " ");
    for (const auto& f : r.numerator) o << factor_text(f) << " ";
    o << "/ (q)_inf\n";
    for (const auto& f : r.simplified)
        o << "  simplified (" << f.name << "): " << (f.verified ? "verified" : "FAILED") << "\n";
    o << "  status: " << r.status << " to q^" << r.order << (r.stable ? "" : " (summation cap not stable)") << "\n";
    return o.str();
}

std::string to_latex(const IdentityRecord& r) {
    std::ostringstream o;
    const std::string rhs = product_latex(r);
    o << "% " << to_string(r.schedule) << ", L(" << r.label.s0 << "," << r.label.s1 << "), " << r.status
      << " to order " << r.order << "\n";
    o << "\\begin{equation}\n" << to_latex(r.sum_side) << "\n=" << rhs << "\n\\end{equation}\n";
    for (const auto& f : r.simplified)
        o << "\\begin{equation}\n" << f.latex << "\n=" << rhs << "\n\\end{equation}\n";
    return o.str();
}

std::string latex_document(const std::vector<IdentityRecord>& records) {
    std::ostringstream o;
    o << "\\documentclass{article}\n\\usepackage{amsmath}\n\\allowdisplaybreaks\n\\begin{document}\n";
    int level = -1;
    for (const auto& r : records) {
        if (r.label.level() != level) {
            level = r.label.level();
            o << "\n\\section*{Level " << level << "}\n";
        }
        o << to_latex(r);
    }
    o << "\n\\end{document}\n";
    return o.str();
}

} // namespace a22
