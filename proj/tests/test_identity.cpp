#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "a22/errors.hpp"
#include "a22/identity.hpp"

using namespace a22;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string rstrip(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
    return s;
}

const std::vector<IdentityRecord>& catalog7() {
    static const auto records = build_catalog(7, 80, 4);
    return records;
}

} // namespace

TEST_CASE("record round-trip") {
    const auto r = build_record({Kind::Lim2, 2, 3, 2}, 40);
    CHECK(r.verified());
    CHECK(r.stable);
    CHECK(identity_from_json(to_json(r)) == r);
    CHECK(identity_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
}

TEST_CASE("record contents") {
    const auto r = build_record({Kind::Lim1, 1, 1, 1}, 40);
    CHECK(r.moves == std::vector<std::string>{"BC1"});
    CHECK(r.label == ModuleLabel{5, 1});
    CHECK(r.numerator.size() == 2);
    CHECK(r.numerator[0] == ProductFactor{{2, 8, 10}, 10});
    CHECK(r.numerator[1] == ProductFactor{{6, 14}, 20});
    CHECK(r.denominator == std::vector<ProductFactor>{ProductFactor{{1}, 1}});
    CHECK(r.order == 40);

    const auto text = to_text(r);
    CHECK(text.find("L(5,1)") != std::string::npos);
    CHECK(text.find("verified to q^40") != std::string::npos);
    CHECK(to_latex(r).find("\\begin{equation}") != std::string::npos);
}

TEST_CASE("polynomial latex") {
    CHECK(polynomial_latex(LaurentSeries::from_terms({{0, 1}}, kExactOrder)) == "1");
    CHECK(polynomial_latex(LaurentSeries::from_terms({{0, 1}, {2, -1}}, kExactOrder)) == "(1-q^{2})");
    CHECK(polynomial_latex(LaurentSeries::from_terms({{0, 1}, {1, -1}}, kExactOrder)) == "(1-q)");
}

TEST_CASE("malformed records") {
    auto j = to_json(build_record({Kind::Lim1, 1, 0, 1}, 20));
    CHECK_THROWS_AS(identity_from_json(nlohmann::json::parse("[1, 2]")), DataError);
    auto bad_version = j;
    bad_version["schema_version"] = 2;
    CHECK_THROWS_AS(identity_from_json(bad_version), DataError);
    auto missing = j;
    missing.erase("product");
    CHECK_THROWS_AS(identity_from_json(missing), DataError);
    auto wrong_type = j;
    wrong_type["k"] = "one";
    CHECK_THROWS_AS(identity_from_json(wrong_type), DataError);
}

TEST_CASE("catalog shape") {
    const auto& records = catalog7();
    CHECK(records.size() == 30);
    std::map<int, int> per_level;
    for (const auto& r : records) {
        CHECK(r.verified());
        ++per_level[r.label.level()];
    }
    CHECK(per_level == std::map<int, int>{{2, 4}, {3, 2}, {4, 6}, {5, 6}, {6, 4}, {7, 8}});
    for (const auto& r : records)
        if (r.label.level() == 6) CHECK(r.schedule.pair_id == 5);
    for (std::size_t j = 1; j < records.size(); ++j)
        CHECK(records[j - 1].label.level() <= records[j].label.level());
    CHECK(catalog_schedules(1).empty());
}

TEST_CASE("catalog order does not depend on jobs") {
    const auto one = build_catalog(5, 30, 1);
    const auto many = build_catalog(5, 30, 8);
    CHECK(one == many);
}

TEST_CASE("golden catalog") {
    const auto& records = catalog7();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    const auto golden = nlohmann::json::parse(slurp(A22_GOLDEN_DIR "/catalog_l7_o80.json"));
    CHECK(arr == golden);
    CHECK(rstrip(latex_document(records)) == rstrip(slurp(A22_GOLDEN_DIR "/catalog_l7_o80.tex")));
}
