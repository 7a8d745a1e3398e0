#include <doctest.h>
#include <fmf/export.hpp>
#include <fmf/reader.hpp>

#include <json.hpp>

#include "support/fixtures.hpp"

using namespace fmf;

TEST_CASE("csv export materializes constant errors") {
    const Document d = read_file(fixtures::path("fig5_faraday.fmf")).document;
    const std::string csv = export_csv(d.tables[1]);
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header == "t [min],t_err [s],V_{H_2} [cm^3],V_{H_2}_err [cm^3],V_{O_2} [cm^3],V_{O_2}_err [cm^3]");
    CHECK(csv.find("\n2,5,2.5,0.2,1.3,0.2\n") != std::string::npos);
    const std::string a = export_csv(d.tables[0]);
    CHECK(a.substr(0, a.find('\n')) ==
          "G,N_e,V^\\prime [cm^3/min],\\Delta_{V^\\prime} [cm^3/min],Fa [C/mol],\\Delta_{Fa} [C/mol]");
    CHECK(a.find("\nH_2,2,1.256,0.065,91400,5500\n") != std::string::npos);
}

TEST_CASE("csv quoting") {
    const std::string text =
        "; -*- fmf-version: 1.0 -*-\n[*reference]\n[*data definitions]\nname: n\n[*data]\n\"a, b\"\nsay \"x\"\n";
    const Document d = parse_document(text).document;
    const std::string csv = export_csv(d.tables[0]);
    CHECK(csv == "n\n\"a, b\"\n\"say \"\"x\"\"\"\n");
}

TEST_CASE("records export") {
    const Document d = read_file(fixtures::path("fig5_faraday.fmf")).document;
    const std::string out = export_records(d, d.tables);
    std::vector<nlohmann::json> records;
    std::size_t start = 0;
    for (std::size_t nl = out.find('\n'); nl != std::string::npos; start = nl + 1, nl = out.find('\n', start))
        records.push_back(nlohmann::json::parse(out.substr(start, nl - start)));
    REQUIRE(records.size() == 2);
    CHECK(records[0]["table"] == "analysis");
    CHECK(records[0]["symbol"] == "A");
    CHECK(records[0]["rows"].size() == 2);
    CHECK(records[0]["rows"][0][4] == 91400);
    CHECK(records[0]["columns"][4]["error"]["symbol"] == "\\Delta_{Fa}");
    CHECK(records[1]["columns"][0]["error"]["unit"] == "s");
    const auto& t = records[1]["metadata"]["measurement"]["room temperature"];
    CHECK(t["symbol"] == "T");
    CHECK(t["value"] == 292.0);
    CHECK(t["uncertainty"]["value"] == 1.0);
    CHECK(t["si"]["dimension"] == "K");
    CHECK(records[1]["metadata"].contains("*reference"));
    CHECK_FALSE(records[1]["metadata"].contains("*data: A"));
    CHECK(value_json(parse_value("NaN")) == "\"NaN\"");
}
