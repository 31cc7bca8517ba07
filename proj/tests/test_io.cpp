#include "doctest.h"

#include "weil/error.hpp"
#include "weil/forge.hpp"
#include "weil/io.hpp"

#include <string>

using namespace weil;

namespace {

// Message of the InvalidInput raised for `text`, or "" when it parses.
std::string parse_error(const std::string& text) {
    try {
        parse_datum_text(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
        return e.what();
    }
    return "";
}

Json weil4_doc() { return datum_to_json(weil_fourfold().datum); }

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("decimal and rational input") {
    CHECK(parse_decimal("1e-8") == Rational(1, 100000000));
    CHECK(parse_decimal("-0.25") == Rational(-1, 4));
    CHECK(parse_decimal("3.5E2") == 350);
    CHECK(parse_decimal("7/3") == Rational(7, 3));
    CHECK(parse_decimal(".5") == Rational(1, 2));
    CHECK_THROWS_AS(parse_decimal("1e"), Error);
    CHECK_THROWS_AS(parse_decimal("abc"), Error);
    CHECK_THROWS_AS(parse_decimal("."), Error);
}

TEST_CASE("sha256 of known strings") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("every fixture round-trips through the input schema") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const Fixture fx = make_fixture(name);
        const std::string text = canonical_dump(datum_to_json(fx.datum));
        const AbelianVarietyDatum back = parse_datum_text(text);
        CHECK(validate(back).ok());
        CHECK(canonical_dump(datum_to_json(back)) == text);
        const std::string a = canonical_dump(report_to_json(classify(fx.datum)));
        const std::string b = canonical_dump(report_to_json(classify(back)));
        CHECK(a == b);
        CHECK(report_to_json(classify(back))["overall"] == std::string(to_string(fx.expected.overall)));
    }
}

TEST_CASE("rationals accept integers and p/q strings") {
    Json doc = weil4_doc();
    doc["field_f"]["min_poly"] = Json::array({1, "0", "2/2"});
    const AbelianVarietyDatum d = parse_datum(doc);
    CHECK(d.field_f->min_poly() == Poly({1, 0, 1}));
}

TEST_CASE("parse errors carry the path into the document") {
    CHECK(contains(parse_error("{"), "$: malformed JSON"));
    CHECK(contains(parse_error("[]"), "$: expected an object"));

    Json doc = weil4_doc();
    doc.erase("field_f");
    CHECK(contains(parse_error(doc.dump()), "field_f: missing"));

    doc = weil4_doc();
    doc["factors"][0]["albert_type"] = "V";
    CHECK(contains(parse_error(doc.dump()), "factors[0].albert_type:"));

    doc = weil4_doc();
    doc["factors"][0]["center"]["min_poly"][1] = 0.5;
    CHECK(contains(parse_error(doc.dump()), "factors[0].center.min_poly[1]: expected a rational"));

    doc = weil4_doc();
    doc["factors"][0]["cm"]["eta"] = Json::array({"0"});
    CHECK(contains(parse_error(doc.dump()), "factors[0].cm.eta: expected 2 coordinates"));

    doc = weil4_doc();
    doc["factors"][0]["colour"] = "red";
    CHECK(contains(parse_error(doc.dump()), "factors[0].colour: unknown key"));

    doc = weil4_doc();
    doc["multiplicities"]["Z"] = Json::array({1, 1});
    CHECK(contains(parse_error(doc.dump()), "multiplicities.Z: no factor"));

    doc = weil4_doc();
    doc["multiplicities"].erase("X");
    CHECK(contains(parse_error(doc.dump()), "multiplicities.X: missing"));

    doc = weil4_doc();
    doc["compositum"]["X"][0]["embed_e"] = Json::array({"1", "0"});
    CHECK(contains(parse_error(doc.dump()), "compositum.X[0].embed_e:"));

    doc = weil4_doc();
    doc["compositum"]["X"][0]["min_poly"] = Json::array({"1", "2", "1"});
    CHECK(contains(parse_error(doc.dump()), "compositum.X[0].min_poly:"));

    doc = weil4_doc();
    doc["factors"].push_back(doc["factors"][0]);
    CHECK(contains(parse_error(doc.dump()), "factors[1].name: duplicate"));
}

TEST_CASE("validation failures surface after a clean parse") {
    Json doc = weil4_doc();
    doc["multiplicities"]["X"] = Json::array({3, 2});
    const AbelianVarietyDatum d = parse_datum(doc);
    const ValidationReport v = validate(d);
    REQUIRE_FALSE(v.ok());
    CHECK(v.violations[0].path == "multiplicities.X[0]");
}

TEST_CASE("machine report is identical across thread counts") {
    const Fixture fx = product_odd_ratios();
    const std::string one = canonical_dump(report_to_json(classify(fx.datum, 1)));
    CHECK(one == canonical_dump(report_to_json(classify(fx.datum, 4))));
    CHECK(contains(one, "\"overall\": \"Exceptional\""));
}

TEST_CASE("oracle cross-checks agree on the small fixtures") {
    for (const char* name : {"weil-fourfold", "type1-surface", "product-odd", "remark-v"}) {
        CAPTURE(name);
        const Fixture fx = make_fixture(name);
        const Json j = oracle_crosscheck(fx.datum, classify(fx.datum));
        CHECK(j["wedge"]["agrees"] == true);
        CHECK(j["hodge_type"]["agrees"] == true);
    }
    const Json w = witness_oracle(type1_surface().datum);
    CHECK(w["found"] == true);
    CHECK(w["coefficients"] == Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})}));
    CHECK(witness_oracle(weil_fourfold().datum)["found"] == false);
    const Json h = hodge_type_oracle_report(weil_fourfold().datum);
    for (const auto& c : h["components"]) {
        CHECK(c["p"] == 2);
        CHECK(c["q"] == 2);
    }
    OracleOptions tight;
    tight.cap = 10;
    CHECK_THROWS_AS(wedge_oracle(weil_fourfold().datum, tight), Error);
}
