#include <doctest.h>
#include <fmf/error.hpp>
#include <fmf/reader.hpp>

#include "support/fixtures.hpp"
#include "support/random_doc.hpp"

using namespace fmf;

namespace {

Document fig3() { return read_file(fixtures::path("fig3_solar.fmf")).document; }
Document fig5() { return read_file(fixtures::path("fig5_faraday.fmf")).document; }

std::vector<std::string> codes(const std::vector<Diagnostic>& diags, bool errors_only = true) {
    std::vector<std::string> out;
    for (const Diagnostic& d : diags)
        if (!errors_only || d.is_error()) out.push_back(d.code);
    return out;
}

ErrorCode pair_error(const std::string& text) {
    try {
        pair_tables(parse_document(text).document);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("pair_tables did not throw");
    return ErrorCode::Io;
}

const std::string kHead = "; -*- fmf-version: 1.0 -*-\n[*reference]\ncreator: x\n";

}  // namespace

TEST_CASE("get_item") {
    const Document d3 = fig3();
    const Item* area = get_item(d3, "parameters", "pixel area");
    REQUIRE(area);
    const QuantityValue* q = area->value.quantity();
    REQUIRE(q);
    CHECK(q->symbol == "A_{pv}");
    CHECK(q->magnitude == 5.3);
    CHECK(q->unit.source_text == "mm^2");
    CHECK(get_item(d3, " parameters ", " pixel area ") == area);
    CHECK_FALSE(get_item(d3, "nonexistent", "k"));
    CHECK_FALSE(get_item(d3, "Parameters", "pixel area"));

    const Item* t = get_item(fig5(), "measurement", "room temperature");
    REQUIRE(t);
    CHECK(t->value.quantity()->magnitude == 292);
    CHECK(t->value.quantity()->uncertainty->magnitude == 1);
    CHECK(t->value.quantity()->unit.source_text == "K");
}

TEST_CASE("pair_tables") {
    const auto t3 = pair_tables(fig3());
    REQUIRE(t3.size() == 1);
    CHECK(t3[0].symbol.empty());
    const auto t5 = pair_tables(fig5());
    REQUIRE(t5.size() == 2);
    CHECK(t5[0].symbol == "A");
    CHECK(t5[0].name == "analysis");
    CHECK(t5[1].symbol == "P");
    CHECK(t5[1].name == "primary");

    CHECK(pair_error(kHead + "[*table definitions]\nbeta: B\n[*data: B]\n1\n") == ErrorCode::MissingCounterpart);
    CHECK(pair_error(kHead + "[*table definitions]\nbeta: B\n[*data definitions: B]\nx: x\n") ==
          ErrorCode::MissingCounterpart);
    CHECK(pair_error(kHead + "[*table definitions]\nbeta: B\n[*data definitions: B]\nx: x\n[*data: B]\n1\n"
                             "[*data definitions: C]\nx: x\n[*data: C]\n1\n") == ErrorCode::DanglingSymbol);
    CHECK(pair_error(kHead + "[*data definitions]\nx: [m]\n[*data]\n1\n") == ErrorCode::BadColumnSpec);
}

TEST_CASE("table order follows the table definitions") {
    const std::string text = kHead +
                             "[*table definitions]\nsecond: S\nfirst: F\n"
                             "[*data definitions: F]\nx: x\n[*data: F]\n1\n"
                             "[*data definitions: S]\ny: y\n[*data: S]\n2\n";
    const auto tables = pair_tables(parse_document(text).document);
    REQUIRE(tables.size() == 2);
    CHECK(tables[0].symbol == "S");
    CHECK(tables[1].symbol == "F");
}

TEST_CASE("validate") {
    CHECK(validate(fig3()).empty());
    CHECK(validate(fig5()).empty());

    ParseResult dup = parse_document(kHead + "creator: y\n[*data definitions]\nx: x\n[*data]\n1\n");
    CHECK(codes(dup.diagnostics) == std::vector<std::string>{"DUPLICATE_KEY"});

    // truncate one cell of table A
    std::string faraday = fixtures::bytes("fig5_faraday.fmf");
    const std::string row = "H_2\t2\t1.256\t0.065\t91400\t5500";
    faraday.replace(faraday.find(row), row.size(), "H_2\t2\t1.256\t0.065\t91400");
    const ParseResult narrow = parse_document(faraday);
    CHECK(codes(narrow.diagnostics) == std::vector<std::string>{"ROW_WIDTH"});
    CHECK(narrow.diagnostics[0].line == 31);

    CHECK(codes(parse_document("; -*- fmf-version: 1.0 -*-\n[setup]\na: 1\n").diagnostics) ==
          std::vector<std::string>{"MISSING_SECTION", "MISSING_SECTION", "MISSING_SECTION"});
    CHECK(codes(parse_document(kHead + "[*data definitions]\nx: x [furlong]\n[*data]\n1\n").diagnostics) ==
          std::vector<std::string>{"UNKNOWN_UNIT"});
    CHECK(codes(parse_document(kHead + "[*data definitions]\nx: x +- dx\n[*data]\n1\n").diagnostics) ==
          std::vector<std::string>{"DANGLING_ERROR_REF"});
    CHECK(codes(parse_document(kHead + "[*reference]\n[*data definitions]\nx: x\n[*data]\n1\n").diagnostics) ==
          std::vector<std::string>{"DUPLICATE_SECTION"});
    CHECK(codes(parse_document(kHead + "no colon here\n[*data definitions]\nx: x\n[*data]\n1\n").diagnostics) ==
          std::vector<std::string>{"MALFORMED_LINE"});

    const ParseResult newer =
        parse_document("; -*- fmf-version: 2.3 -*-\n[*reference]\n[*data definitions]\nx: x\n[*data]\n1\n");
    CHECK(codes(newer.diagnostics).empty());
    CHECK(codes(newer.diagnostics, false) == std::vector<std::string>{"VERSION_NEWER"});

    const ParseResult late = parse_document(kHead + "[*data]\n1\n[*data definitions]\nx: x\n");
    CHECK(codes(late.diagnostics).empty());
    CHECK(codes(late.diagnostics, false) == std::vector<std::string>{"DATA_BEFORE_DEFINITIONS"});
    CHECK(codes(parse_document(kHead + "[*bogus]\n[*data definitions]\nx: x\n[*data]\n1\n").diagnostics, false) ==
          std::vector<std::string>{"UNKNOWN_RESERVED_SECTION"});
}

TEST_CASE("validate is pure and ordered") {
    gen::DocGen g(77);
    for (int i = 0; i < 200; ++i) {
        Document d = g.document();
        // inject problems so the lists are not trivially empty
        if (i % 2) d.sections[0].items.push_back(d.sections[0].items[0]);
        if (i % 3 == 0 && !d.sections.back().rows.empty()) d.sections.back().rows[0].cells.push_back("extra");
        const auto a = validate(d);
        const auto b = validate(d);
        CHECK(a == b);
        for (std::size_t k = 1; k < a.size(); ++k)
            CHECK((a[k - 1].line < a[k].line || (a[k - 1].line == a[k].line && a[k - 1].code <= a[k].code)));
        // a document without DUPLICATE_KEY has unique (section, key) pairs
        bool duplicate = false;
        for (const auto& diag : a) duplicate |= diag.code == "DUPLICATE_KEY";
        CHECK(duplicate == (i % 2 == 1));
    }
}

TEST_CASE("table symbols equal the table definitions") {
    gen::DocGen g(31);
    for (int i = 0; i < 300; ++i) {
        const Document d = g.document();
        REQUIRE(!has_errors(validate(d)));
        const auto tables = pair_tables(d);
        const Section* defs = d.section("*table definitions");
        if (!defs) {
            REQUIRE(tables.size() == 1);
            CHECK(tables[0].symbol.empty());
            continue;
        }
        REQUIRE(tables.size() == defs->items.size());
        for (std::size_t k = 0; k < tables.size(); ++k) CHECK(tables[k].symbol == defs->items[k].raw_value);
    }
}

TEST_CASE("cell quantities bind units and errors") {
    const Document d = fig5();
    const Table& a = d.tables[0];
    const auto v = a.quantity_at(0, 2);
    REQUIRE(v);
    CHECK(v->magnitude == 1.256);
    CHECK(v->unit.source_text == "cm^3/min");
    CHECK(v->uncertainty->magnitude == 0.065);
    const auto fa = a.quantity_at(1, 4);
    REQUIRE(fa);
    CHECK(fa->magnitude == 102200);
    CHECK(fa->uncertainty->magnitude == 7800);
    CHECK_FALSE(a.quantity_at(0, 0));
    CHECK_FALSE(a.quantity_at(0, 1));

    const Table& p = d.tables[1];
    const auto t = p.quantity_at(2, 0);
    REQUIRE(t);
    CHECK(t->unit.source_text == "min");
    CHECK(*t->uncertainty_si() == doctest::Approx(5.0).epsilon(1e-15));
    const auto vol = p.quantity_at(2, 1);
    CHECK(*vol->uncertainty_si() == doctest::Approx(0.2e-6).epsilon(1e-12));
    CHECK(p.columns[1].label() == "hydrogen volume, V_{H_2}(t) [cm^3]");
}
