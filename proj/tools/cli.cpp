#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "a22/bailey.hpp"
#include "a22/characters.hpp"
#include "a22/errors.hpp"
#include "a22/identity.hpp"
#include "a22/registry.hpp"

namespace a22 {

namespace {

struct Options {
    int pair = 0;
    std::string schedule;
    int k = 1;
    int i = 0;
    Exponent order = 80;
    int n_max = 12;
    int max_level = 7;
    std::string format = "text";
    int jobs = 1;
    std::string registry;
    int s0 = 0;
    int s1 = 0;
    bool qtpi = false;
    std::string output;
};

void add_format(CLI::App* c, Options& o) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "latex"}));
    c->add_option("--output", o.output, "Write to this file instead of stdout");
}

// each subcommand has its own default, so each gets its own slot
void add_order(CLI::App* c, Exponent& slot, Exponent fallback) {
    slot = fallback;
    c->add_option("--order", slot, "Truncation order N")->envname("A22_ORDER")->check(CLI::NonNegativeNumber);
}

std::string coefficients_text(const LaurentSeries& s, Exponent order) {
    std::ostringstream o;
    for (Exponent e = 0; e <= order; ++e) o << (e ? " " : "") << s.coefficient(e).get_str();
    return o.str();
}

int verify_pair_cmd(const Options& o, const Registry& reg, std::ostream& out) {
    const RegistryEntry& e = reg.entry(o.pair);
    const PairReport rep = verify_pair(reg.pair(o.pair), o.n_max, o.order);
    const auto bad = rep.first_failure();
    if (o.format == "json") {
        nlohmann::json j = {{"pair", o.pair},   {"source", e.source}, {"base_exp", e.base_exp},
                            {"n_max", o.n_max}, {"order", o.order},   {"holds", rep.holds},
                            {"status", bad ? "failed" : "verified"}};
        j["first_failure"] = bad ? nlohmann::json(*bad) : nlohmann::json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << "pair " << o.pair << " (" << e.source << ", base q^" << e.base_exp << "): ";
        if (bad)
            out << "Bailey relation FAILS at n = " << *bad << " (order " << o.order << ")\n";
        else
            out << "Bailey relation holds for n <= " << o.n_max << " to order " << o.order << "\n";
    }
    return bad ? kExitFailed : kExitOk;
}

int emit_records(const std::vector<IdentityRecord>& records, bool single, const Options& o, std::ostream& out) {
    if (o.format == "json") {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& r : records) a.push_back(to_json(r));
        out << (single ? a[0] : a).dump(2) << "\n";
    } else if (o.format == "latex") {
        out << latex_document(records);
    } else {
        for (const auto& r : records) out << to_text(r);
    }
    for (const auto& r : records) {
        if (!r.verified()) return kExitFailed;
        for (const auto& f : r.simplified)
            if (!f.verified) return kExitFailed;
    }
    return kExitOk;
}

int character_cmd(const Options& o, std::ostream& out) {
    const ModuleLabel m{o.s0, o.s1};
    validate(m);
    const LaurentSeries p = char_product(m, o.order);
    const bool agree = !o.qtpi || eq_to_order(p, char_qtpi(m, o.order), o.order);
    if (o.format == "json") {
        nlohmann::json j = {{"s0", m.s0}, {"s1", m.s1}, {"level", m.level()}, {"modulus", m.modulus()},
                            {"order", o.order}};
        std::vector<std::string> c;
        for (Exponent e = 0; e <= o.order; ++e) c.push_back(p.coefficient(e).get_str());
        j["coefficients"] = c;
        if (o.qtpi) j["qtpi_agrees"] = agree;
        out << j.dump(2) << "\n";
    } else if (o.format == "latex") {
        const auto b = product_bases(m);
        const Exponent l = m.level();
        out << "\\frac{(q^{" << b[0] << "},q^{" << b[1] << "},q^{" << b[2] << "};\\,\\,q^{" << l + 3
            << "})_{\\infty}(q^{" << b[3] << "},q^{" << b[4] << "};\\,\\,q^{" << 2 * l + 6
            << "})_{\\infty}}{(q)_{\\infty}}\n";
    } else {
        out << "L(" << m.s0 << "," << m.s1 << ") level " << m.level() << ", modulus " << m.modulus() << "\n"
            << coefficients_text(p, o.order) << "\n";
        if (o.qtpi) out << "qtpi form " << (agree ? "agrees" : "DISAGREES") << " to order " << o.order << "\n";
    }
    return agree ? kExitOk : kExitFailed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    Exponent orders[4];
    CLI::App app{"Bailey-lattice identities for principal characters of A2(2) standard modules", "a22"};
    app.require_subcommand(1);
    app.add_option("--registry", o.registry, "Registry JSON file (default: compiled-in pairs)");

    auto* vp = app.add_subcommand("verify-pair", "Check the Bailey relation for a registry pair");
    vp->add_option("--pair", o.pair, "Pair id")->required();
    vp->add_option("--n-max", o.n_max, "Largest n")->check(CLI::NonNegativeNumber);
    add_order(vp, orders[0], 60);
    add_format(vp, o);

    auto* vi = app.add_subcommand("verify-identity", "Verify one schedule's sum = product identity");
    vi->add_option("--pair", o.pair, "Pair id")->required();
    vi->add_option("--schedule", o.schedule, "lim1, lim2 or lim3")->required();
    vi->add_option("--k", o.k, "k >= 1");
    vi->add_option("--i", o.i, "i in the row's range");
    add_order(vi, orders[1], 80);
    add_format(vi, o);

    auto* ca = app.add_subcommand("catalog", "Verify and emit every identity up to a level");
    ca->add_option("--max-level", o.max_level, "Largest level")->check(CLI::Range(2, 1000));
    ca->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_order(ca, orders[2], 80);
    add_format(ca, o);

    auto* ch = app.add_subcommand("character", "Principal character of L(s0, s1)");
    ch->add_option("--s0", o.s0, "s0")->required();
    ch->add_option("--s1", o.s1, "s1")->required();
    ch->add_flag("--qtpi", o.qtpi, "Cross-check against the quintuple-product form");
    add_order(ch, orders[3], 20);
    add_format(ch, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream so, se;
        const int rc = app.exit(e, so, se);
        out << so.str();
        err << se.str();
        return rc == 0 ? kExitOk : kExitUsage;
    }

    const CLI::App* chosen[] = {vp, vi, ca, ch};
    for (int t = 0; t < 4; ++t)
        if (*chosen[t]) o.order = orders[t];

    try {
        const Registry reg = o.registry.empty() ? Registry::builtin() : Registry::load(o.registry);
        std::ofstream file;
        if (!o.output.empty()) {
            file.open(o.output);
            if (!file) throw DataError("cannot write " + o.output);
        }
        std::ostream& sink = o.output.empty() ? out : file;

        if (*vp) return verify_pair_cmd(o, reg, sink);
        if (*ch) return character_cmd(o, sink);
        if (*vi) {
            const Schedule s{parse_kind(o.schedule), o.k, o.i, o.pair};
            return emit_records({build_record(s, o.order)}, true, o, sink);
        }
        return emit_records(build_catalog(o.max_level, o.order, o.jobs), false, o, sink);
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::out_of_range& e) {
        err << "range error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}

} // namespace a22
