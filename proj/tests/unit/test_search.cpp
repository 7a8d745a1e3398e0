#include <doctest.h>
#include <fmf/error.hpp>
#include <fmf/reader.hpp>
#include <fmf/search.hpp>

#include <filesystem>
#include <fstream>

#include "support/fixtures.hpp"
#include "support/search_oracle.hpp"

using namespace fmf;

namespace {

Index search_corpus_index() {
    Index idx;
    for (const char* f : {"W", "E", "H", "P"}) {
        const std::string rel = std::string("search_corpus/") + f + ".fmf";
        idx.add(index_document(rel, read_file(fixtures::path(rel)).document));
    }
    return idx;
}

std::vector<std::string> symbols(const std::vector<IndexEntry>& hits) {
    std::vector<std::string> out;
    for (const IndexEntry& e : hits) out.push_back(e.symbol.value_or("?"));
    return out;
}

}  // namespace

TEST_CASE("index entries for the fixtures") {
    const Document d3 = read_file(fixtures::path("fig3_solar.fmf")).document;
    const auto e3 = index_document("fig3.fmf", d3);
    REQUIRE(e3.size() == 2);
    bool found = false;
    for (const IndexEntry& e : e3) {
        if (e.section == "parameters" && e.key == "pixel area") {
            found = true;
            CHECK(e.fv.q0 == 5.3e-6);
            CHECK(e.fv.dimension() == parse_unit("m^2").dim);
            CHECK(e.symbol == "A_{pv}");
        }
    }
    CHECK(found);

    const Document d5 = read_file(fixtures::path("fig5_faraday.fmf")).document;
    const auto e5 = index_document("fig5.fmf", d5);
    CHECK(e5.size() == 3);
    found = false;
    for (const IndexEntry& e : e5) {
        if (e.key == "room temperature") {
            found = true;
            CHECK(e.fv.q0 == 292);
            CHECK(e.fv.dimension() == parse_unit("K").dim);
        }
    }
    CHECK(found);
    CHECK(index_document("x", Document{}).empty());
}

TEST_CASE("list quantities get ordinal keys and unsearchable values are skipped") {
    Document d;
    Section s;
    s.name = "m";
    for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
             {"pair", "1 m, 2 m"}, {"price", "19.99 EUR/m**2"}, {"signal", "3 a.u."}, {"when", "2008-12-16"}}) {
        Item i;
        i.key = k;
        i.raw_value = v;
        i.value = parse_value(v);
        s.items.push_back(i);
    }
    d.sections.push_back(s);
    std::vector<std::string> notices;
    const auto entries = index_document("p", d, &notices);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].key == "pair#1");
    CHECK(entries[1].key == "pair#2");
    CHECK(notices.size() == 2);
}

TEST_CASE("energy search over the four-quantity corpus") {
    const Index idx = search_corpus_index();
    CHECK(idx.entries.size() == 4);
    const auto hits = query(idx, "J", parse_quantity("1 kJ"), parse_quantity("1 MJ"));
    CHECK(symbols(hits) == std::vector<std::string>{"W", "H"});
    const auto same = query(idx, "J", parse_quantity("1000 J"), parse_quantity("1e6 J"));
    CHECK(same == hits);
    const auto power = query(idx, "W", parse_quantity("1 W"), parse_quantity("1 GW"));
    CHECK(symbols(power) == std::vector<std::string>{"P"});
    CHECK(query(Index{}, "J", parse_quantity("1 kJ"), parse_quantity("1 MJ")).empty());
    // closed interval
    CHECK(query(idx, "J", parse_quantity("23 kJ"), parse_quantity("23 kJ")).size() == 1);
}

TEST_CASE("query rejects incompatible bounds") {
    const Index idx = search_corpus_index();
    auto code = [&](const char* dim, const char* lo, const char* hi) {
        try {
            query(idx, dim, parse_quantity(lo), parse_quantity(hi));
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Io;
    };
    CHECK(code("J", "1 kW", "1 MJ") == ErrorCode::IncompatibleBounds);
    CHECK(code("J", "1 MJ", "1 kJ") == ErrorCode::IncompatibleBounds);
    CHECK(code("EUR", "1 EUR", "2 EUR") == ErrorCode::IncompatibleBounds);
    CHECK(code("J", "NaN J", "1 kJ") == ErrorCode::IncompatibleBounds);
}

TEST_CASE("query agrees with a linear scan") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 200; ++round) {
        const gen::Corpus c = gen::random_corpus(rng, 60);
        const std::size_t g = rng() % gen::unit_groups().size();
        QuantityValue lo = parse_quantity(gen::random_quantity_text(rng, g));
        QuantityValue hi = parse_quantity(gen::random_quantity_text(rng, g));
        if (to_si(lo).value > to_si(hi).value) std::swap(lo, hi);
        const auto got = query(c.index, lo.unit.dim, lo, hi);
        const auto want = gen::linear_scan(c, lo.unit.dim, to_si(lo).value, to_si(hi).value);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].fv.q0 == std::get<0>(want[i]));
            CHECK(got[i].path == std::get<1>(want[i]));
            CHECK(got[i].key == std::get<3>(want[i]));
            CHECK(got[i].fv.dimension() == lo.unit.dim);
        }
    }
}

TEST_CASE("index persistence") {
    Index idx = search_corpus_index();
    IndexEntry odd = idx.entries[0];
    odd.path = "dir with\ttab\\and\nnewline.fmf";
    odd.key = "key\r";
    odd.fv.exponents[0] = Rational(1, 2);
    idx.add({odd});
    const std::string text = serialize_index(idx);
    CHECK(text.rfind("FMFIDX 1\n", 0) == 0);
    CHECK(deserialize_index(text) == idx);

    auto corrupt = [](std::string_view t) {
        try {
            deserialize_index(t);
        } catch (const Error& e) {
            return e.code() == ErrorCode::CorruptIndex;
        }
        return false;
    };
    CHECK(corrupt(""));
    CHECK(corrupt("FMFIDX 2\n"));
    CHECK(corrupt(text.substr(0, text.size() - 6)));
    CHECK(corrupt("FMFIDX 1\na\tb\tc\tnope\t0/1\t0/1\t0/1\t0/1\t0/1\t0/1\t0/1\n"));
    CHECK(corrupt("FMFIDX 1\na\tb\tc\t1\t0/0\t0/1\t0/1\t0/1\t0/1\t0/1\t0/1\n"));
    CHECK(corrupt("FMFIDX 1\na\\q\tb\tc\t1\t0/1\t0/1\t0/1\t0/1\t0/1\t0/1\t0/1\n"));

    const auto path = (std::filesystem::temp_directory_path() / "fmf_test_index.idx").string();
    save_index(idx, path);
    CHECK(load_index(path) == idx);
    std::filesystem::remove(path);
    bool io = false;
    try {
        load_index("/nonexistent/dir/idx");
    } catch (const Error& e) {
        io = e.code() == ErrorCode::Io;
    }
    CHECK(io);
}

TEST_CASE("combined fixture index counts every metadata quantity") {
    Index idx;
    idx.add(index_document("fig3", read_file(fixtures::path("fig3_solar.fmf")).document));
    idx.add(index_document("fig5", read_file(fixtures::path("fig5_faraday.fmf")).document));
    // pixel area, illumination intensity; room temperature, pressure, current
    CHECK(idx.entries.size() == 5);
    for (std::size_t i = 1; i < idx.entries.size(); ++i) CHECK_FALSE(index_order(idx.entries[i], idx.entries[i - 1]));
}
