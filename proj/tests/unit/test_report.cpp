#include <doctest.h>

#include "report.hpp"

using namespace rrcf;
using report::json;

TEST_CASE("exact values serialise as level, numerators and denominator") {
    const CycloElem e = CycloElem::rational(5, mpq_class(1, 2)) + CycloElem::root(5, 1);
    const json j = report::exact(e);
    CHECK(j["level"] == 5);
    CHECK(j["denominator"] == "2");
    CHECK(j["numerators"] == json({"1", "2", "0", "0"}));
}

TEST_CASE("infinite field values") {
    CHECK(report::field_value(FieldValue::infinity())["value"] == "infinity");
    const json f = report::field_value(FieldValue::from_exact(CycloElem::one(3), 64));
    CHECK(f.contains("exact"));
    CHECK(f["value"]["im"].get<std::string>().find("0") == 0);
}

TEST_CASE("classification and membership records") {
    const json c = report::classification(classify(RootOfUnity(0, 1), 5));
    CHECK(c["kind"] == "classification");
    CHECK(c["verdict"] == "DivergentTwoLimitPoints");
    CHECK(c["limit_points"].size() == 2);
    CHECK_FALSE(c.contains("limit"));

    const json m = report::membership(field_membership(1, 5));
    CHECK(m["detected"] == "InField");
    CHECK(m["method"] == "exact_gauss_sum");
    CHECK(m.contains("witness"));
}

TEST_CASE("digit records") {
    const json d = report::digits(expand_real(mpq_class(3, 5), 5));
    CHECK(d["digits"] == json({"1", "1", "2"}));
    CHECK(d["d"] == json({"1", "1", "2", "5"}));
    CHECK(d["c"] == json({"0", "1", "1", "3"}));
    CHECK(d["terminated"] == true);
}
