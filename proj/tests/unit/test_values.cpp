#include <doctest.h>
#include <fmf/error.hpp>
#include <fmf/values.hpp>

#include <cmath>
#include <random>

#include "support/random_doc.hpp"

using namespace fmf;

namespace {

ValueNode pv(std::string_view text) { return parse_value(text); }

}  // namespace

TEST_CASE("dispatcher families") {
    CHECK(pv("true").tag() == ValueTag::boolean);
    CHECK(*pv("FALSE").boolean() == false);
    CHECK(*pv("True").boolean() == true);
    CHECK(pv("tRue").tag() == ValueTag::text);
    CHECK(*pv("\"2.0 ohm\"").text() == "2.0 ohm");
    CHECK(*pv("S419").text() == "S419");
    CHECK(pv("9").tag() == ValueTag::integer);
    CHECK(pv("2008-12-16").tag() == ValueTag::timestamp);
    CHECK(pv("2.0 ohm").tag() == ValueTag::quantity);
    const ValueNode list = pv("2.0 ohm, 2.0 ohm +- 0.02 ohm, 19.99 EUR/m**2");
    REQUIRE(list.tag() == ValueTag::list);
    CHECK(list.list()->size() == 3);
    for (const ValueNode& n : *list.list()) CHECK(n.tag() == ValueTag::quantity);
    CHECK(list.homogeneous());
    const ValueNode mixed = pv("1, two");
    CHECK(mixed.tag() == ValueTag::list);
    CHECK_FALSE(mixed.homogeneous());
    CHECK(pv("").tag() == ValueTag::text);
    CHECK(pv("raw text").raw == "raw text");
}

TEST_CASE("number grammar") {
    const NumberValue i = parse_number("-2");
    CHECK(i.kind == NumberValue::Kind::integer);
    CHECK(i.integer == -2);
    CHECK(parse_number("0").integer == 0);
    CHECK(parse_number("1e-10").real == 1e-10);
    CHECK(parse_number(".1").real == 0.1);
    CHECK(parse_number("-1.1E10").real == -1.1e10);
    CHECK(parse_number("1.0").kind == NumberValue::Kind::real);
    const NumberValue c = parse_number("1.1+2J");
    CHECK(c.kind == NumberValue::Kind::complex);
    CHECK(c.real == 1.1);
    CHECK(c.imag == 2);
    CHECK(parse_number("2J").imag == 2);
    CHECK(parse_number("2J").real == 0);
    CHECK(parse_number("1+0J").kind == NumberValue::Kind::complex);
    CHECK(parse_number("1e-3-4.5e2j").imag == -450);
    CHECK(std::isnan(parse_number("NaN").real));
    CHECK(parse_number("+INF").real == INFINITY);
    CHECK(parse_number("-INF").real == -INFINITY);
    CHECK(parse_number("99999999999999999999").kind == NumberValue::Kind::real);

    const NumberValue p = parse_number("P = 42.0");
    CHECK(p.symbol == "P");
    const NumberValue q = parse_number("Q = 42.1 +- 0.2");
    CHECK(q.symbol == "Q");
    CHECK(q.real == 42.1);
    REQUIRE(q.uncertainty);
    CHECK(q.uncertainty->kind == Uncertainty::Kind::absolute);
    CHECK(q.uncertainty->magnitude == 0.2);
    const NumberValue r = parse_number("Q' = 42.1 +- 0.48%");
    CHECK(r.symbol == "Q'");
    REQUIRE(r.uncertainty);
    CHECK(r.uncertainty->kind == Uncertainty::Kind::relative);
    CHECK(r.uncertainty->magnitude == doctest::Approx(0.0048).epsilon(1e-15));
    CHECK(parse_number("x = 1 \\pm 2").uncertainty->magnitude == 2);

    for (const char* bad : {"", "1.2.3", "e5", "1e", "--1", "1 +- -2", "0x10", "1,5", "j", "NaNj", "= 3"}) {
        CHECK_MESSAGE(!try_parse_number(bad), bad);
    }
    bool threw = false;
    try {
        parse_number("abc");
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::NotANumber;
    }
    CHECK(threw);
}

TEST_CASE("quantity shapes") {
    const QuantityValue a = parse_quantity("2.0 ohm +- 20 mohm");
    CHECK(a.magnitude == 2.0);
    CHECK(a.uncertainty->kind == Uncertainty::Kind::absolute);
    CHECK(a.uncertainty->magnitude == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(*a.uncertainty_si() == doctest::Approx(0.02).epsilon(1e-15));

    const QuantityValue b = parse_quantity("(2.0 +- 1 %) ohm");
    CHECK(b.uncertainty->kind == Uncertainty::Kind::relative);
    CHECK(b.uncertainty->magnitude == doctest::Approx(0.01).epsilon(1e-15));

    const QuantityValue c = parse_quantity("A_{pv} = 5.3 mm^2");
    CHECK(c.symbol == "A_{pv}");
    CHECK(c.magnitude == 5.3);
    CHECK(c.unit.source_text == "mm^2");

    for (const char* factor : {"(1.0 +- 0.01) 2.0 ohm", "(1.0 +- 1%) 2.0 ohm"}) {
        const QuantityValue f = parse_quantity(factor);
        CHECK(f.magnitude == 2.0);
        CHECK(f.unit.source_text == "ohm");
        CHECK(f.uncertainty->kind == Uncertainty::Kind::relative);
        CHECK(f.uncertainty->magnitude == doctest::Approx(0.01).epsilon(1e-15));
    }

    const QuantityValue d = parse_quantity("(2.0 +- 0.02) ohm");
    CHECK(d.uncertainty->magnitude == 0.02);
    CHECK(parse_quantity("\\theta = 32.0 K").symbol == "\\theta");
    CHECK(parse_quantity("R = 2.0 ohm +- 0.02 ohm").symbol == "R");
    CHECK(parse_quantity("19.99 EUR/m**2").unit.dim.has_currency());
    CHECK(parse_quantity("T = (292 \\pm 1) K").uncertainty->magnitude == 1);
    const QuantityValue p = parse_quantity("p = 1.0144 bar \\pm 10 mbar");
    CHECK(p.uncertainty->magnitude == doctest::Approx(0.01).epsilon(1e-15));

    for (const char* bad : {"2.0 furlong", "ohm", "2.0", "(2.0 +- 1) ", "2.0 ohm +- 1 s", "2.0 ohm +-"}) {
        CHECK_MESSAGE(!try_parse_quantity(bad), bad);
    }
}

TEST_CASE("relative and absolute uncertainty normalize alike") {
    const QuantityValue rel = parse_quantity("(2.0 +- 1 %) ohm");
    const QuantityValue abs = parse_quantity("2.0 ohm +- 0.02 ohm");
    CHECK(to_si(rel).value == to_si(abs).value);
    CHECK(*rel.uncertainty_si() == doctest::Approx(*abs.uncertainty_si()).epsilon(1e-15));
    const QuantityValue mixed = parse_quantity("2.0 kohm +- 20 ohm");
    CHECK(*mixed.uncertainty_si() == doctest::Approx(20).epsilon(1e-15));
    CHECK(mixed.uncertainty->magnitude == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("timestamps") {
    const Timestamp w = parse_timestamp("2008-W47-1");
    CHECK(w.year == 2008);
    CHECK(w.week == 47);
    CHECK(w.weekday == 1);
    const Timestamp u = parse_timestamp("2008-12-16 16:30+-2 h");
    REQUIRE(u.uncertainty);
    CHECK(to_si(*u.uncertainty).value == 7200);
    CHECK_FALSE(u.offset);
    const Timestamp o = parse_timestamp("2006-04-17 18:55:38+02:00");
    REQUIRE(o.offset);
    CHECK(o.offset->minutes == 120);
    CHECK(parse_timestamp("2008-12-16T16:51Z").offset->zulu);
    CHECK(parse_timestamp("2008-12-16T16:51:05").second == 5);
    CHECK(parse_timestamp("2008-12-16T16:51").hour == 16);
    CHECK(parse_timestamp("2008-1-3").month == 1);
    CHECK(parse_timestamp("2010-05-01T10:00-0530").offset->minutes == -330);
    CHECK(parse_timestamp("2010-05-01 10:00:00.250").fraction == "250");
    CHECK(o.to_string() == "2006-04-17 18:55:38+02:00");

    for (const char* bad : {"2008-W54-1", "2008-W47-8", "2008-13-01", "2008-02-30x", "2008-12-16 25:00",
                            "2008-12-16 16:30+25:00", "16:30", "2008-12-16 16:30 +- 2 m", "2008"}) {
        CHECK_MESSAGE(!try_parse_timestamp(bad), bad);
    }
    const ValueNode dates = pv("2008-11-17,2008-1-3,2006-2-17,2008-W47-1");
    REQUIRE(dates.tag() == ValueTag::list);
    CHECK(dates.list()->size() == 4);
    for (const ValueNode& n : *dates.list()) CHECK(n.tag() == ValueTag::timestamp);
}

TEST_CASE("strings and quoting") {
    CHECK(parse_string("'Freiburger Materialforschungszentrum, University of Freiburg'") ==
          "Freiburger Materialforschungszentrum, University of Freiburg");
    CHECK(pv("'Freiburger Materialforschungszentrum, University of Freiburg'").tag() == ValueTag::text);
    CHECK(pv("Freiburger Materialforschungszentrum, University of Freiburg").tag() == ValueTag::list);
    CHECK(parse_string("\"\"\" \"Don't visualise data, document it!\" \"\"\"") ==
          " \"Don't visualise data, document it!\" ");
    CHECK(parse_string("  plain ") == "plain");
    CHECK(*pv("Arthur C. Clarke's \"The Sentinel\"").text() == "Arthur C. Clarke's \"The Sentinel\"");
    CHECK(parse_string("'''A multi-line value:\nline breaks are kept.'''") ==
          "A multi-line value:\nline breaks are kept.");
    bool threw = false;
    try {
        parse_string("'''never closed");
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::UnterminatedQuote;
    }
    CHECK(threw);
    std::vector<ValueIssue> issues;
    const ValueNode open = parse_value("'''never closed", UnitRegistry::standard(), &issues);
    CHECK(open.tag() == ValueTag::text);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].code == "UNTERMINATED_QUOTE");
}

TEST_CASE("list splitting") {
    CHECK(split_list("1.0, .1, 1e-10, -1.1E10").size() == 4);
    CHECK(split_list("\"a, b\", c").size() == 2);
    CHECK(split_list("2008-11-17,2008-1-3").size() == 2);
    CHECK(split_list("it's, x").size() == 2);
    CHECK(split_list("single").size() == 1);
    const ValueNode floats = pv("1.0, .1, 1e-10, -1.1E10");
    REQUIRE(floats.tag() == ValueTag::list);
    for (const ValueNode& n : *floats.list()) CHECK(n.tag() == ValueTag::real);
}

TEST_CASE("bare plus-minus is reported and falls back to text") {
    std::vector<ValueIssue> issues;
    const ValueNode n = parse_value("42.1 +-", UnitRegistry::standard(), &issues);
    CHECK(n.tag() == ValueTag::text);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].code == "BARE_PLUSMINUS");
}

TEST_CASE("raw retention: reparsing raw yields an equal node") {
    gen::DocGen g(2024);
    for (int i = 0; i < 3000; ++i) {
        const std::string text = g.value_text();
        const ValueNode node = parse_value(text);
        CHECK_MESSAGE(parse_value(node.raw) == node, text);
        if (const auto* list = node.list())
            for (const ValueNode& e : *list) CHECK_MESSAGE(parse_value(e.raw) == e, e.raw);
    }
}

TEST_CASE("parse_value is total on arbitrary input") {
    std::mt19937_64 rng(99);
    const std::string alphabet = "0123456789+-.,eEjJ()%'\"= \t\\pmxs:TZW*^/abcdefghijklmnopqrstuvwxyz_{}";
    for (int i = 0; i < 20000; ++i) {
        std::string s;
        for (int k = 0, n = static_cast<int>(rng() % 24); k < n; ++k) s += alphabet[rng() % alphabet.size()];
        CHECK_NOTHROW(parse_value(s));
    }
}
