#include <doctest.h>
#include <fmf/cli.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = fmf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fmf_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("validate exit codes") {
    CHECK(run({"validate", fixtures::path("fig3_solar.fmf")}).code == 0);
    CHECK(run({"validate", fixtures::path("fig3_solar.fmf"), fixtures::path("fig5_faraday.fmf")}).code == 0);
    const fs::path dir = scratch("validate");
    write(dir / "dup.fmf", "; -*- fmf-version: 1.0 -*-\n[*reference]\na: 1\na: 2\n[*data definitions]\nx: x\n[*data]\n1\n");
    const Run dup = run({"validate", (dir / "dup.fmf").string()});
    CHECK(dup.code == 1);
    CHECK(dup.err.find(":4: error: DUPLICATE_KEY:") != std::string::npos);
    write(dir / "warn.fmf", "; -*- fmf-version: 9.0 -*-\n[*reference]\n[*data definitions]\nx: x\n[*data]\n1\n");
    CHECK(run({"validate", (dir / "warn.fmf").string()}).code == 0);
    CHECK(run({"--strict", "validate", (dir / "warn.fmf").string()}).code == 1);
    CHECK(run({"validate", "--strict", (dir / "warn.fmf").string()}).code == 1);
    write(dir / "nohead.fmf", "not fmf\n");
    CHECK(run({"validate", (dir / "nohead.fmf").string()}).code == 3);
    CHECK(run({"validate", (dir / "missing.fmf").string()}).code == 3);
    CHECK(run({"validate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("describe lists sections, tables and labels") {
    const Run r = run({"describe", fixtures::path("fig3_solar.fmf")});
    CHECK(r.code == 0);
    CHECK(r.out.find("[parameters] 5 item(s)") != std::string::npos);
    CHECK(r.out.find("current, I(V) [A]") != std::string::npos);
}

TEST_CASE("export") {
    const Run csv = run({"export", fixtures::path("fig5_faraday.fmf"), "--table", "P", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("t [min],t_err [s],V_{H_2} [cm^3],", 0) == 0);
    CHECK(run({"export", fixtures::path("fig5_faraday.fmf")}).code == 2);
    CHECK(run({"export", fixtures::path("fig5_faraday.fmf"), "--table", "Z"}).code == 2);
    CHECK(run({"export", fixtures::path("fig5_faraday.fmf"), "--format", "xml"}).code == 2);
    CHECK(run({"export", fixtures::path("fig3_solar.fmf")}).out.rfind("V [V],I [A]\n", 0) == 0);
    const Run rec = run({"export", fixtures::path("fig5_faraday.fmf"), "--format", "records"});
    CHECK(rec.code == 0);
    CHECK(std::count(rec.out.begin(), rec.out.end(), '\n') == 2);

    const fs::path dir = scratch("export");
    write(dir / "wide.fmf", "; -*- fmf-version: 1.0 -*-\n[*reference]\n[*data definitions]\nx: x\n[*data]\n1\t2\n");
    CHECK(run({"export", (dir / "wide.fmf").string()}).code == 0);
    CHECK(run({"--strict", "export", (dir / "wide.fmf").string()}).code == 1);
}

TEST_CASE("index and query") {
    const fs::path dir = scratch("index");
    const fs::path idx = dir / "corpus.idx";
    const Run built = run({"index", fixtures::path("search_corpus"), "-o", idx.string()});
    CHECK(built.code == 0);
    const Run hits = run({"query", idx.string(), "--dim", "J", "--min", "1 kJ", "--max", "1 MJ"});
    CHECK(hits.code == 0);
    CHECK(hits.out == "W.fmf\texperiment\twork\t23000 m^2*kg*s^-2\n"
                      "H.fmf\texperiment\tcalorific value\t41840 m^2*kg*s^-2\n");
    CHECK(run({"query", idx.string(), "--dim", "J", "--min", "1 MJ", "--max", "1 kJ"}).code == 2);
    CHECK(run({"query", idx.string(), "--dim", "furlong", "--min", "1 kJ", "--max", "1 MJ"}).code == 2);
    CHECK(run({"query", idx.string(), "--dim", "J", "--min", "1 kJ"}).code == 2);
    write(dir / "bad.idx", "FMFIDX 9\n");
    CHECK(run({"query", (dir / "bad.idx").string(), "--dim", "J", "--min", "1 kJ", "--max", "1 MJ"}).code == 3);
    CHECK(run({"index", (dir / "nowhere").string(), "-o", idx.string()}).code == 3);

    write(dir / "broken.fmf", "no headline\n");
    fs::copy_file(fixtures::path("search_corpus/W.fmf"), dir / "W.fmf");
    const Run partial = run({"index", dir.string(), "-o", (dir / "p.idx").string()});
    CHECK(partial.code == 3);
    CHECK(fs::exists(dir / "p.idx"));
}

TEST_CASE("currency table from flag or environment") {
    const fs::path dir = scratch("currency");
    write(dir / "rates.txt", "USD\t1.25\n");
    write(dir / "price.fmf",
          "; -*- fmf-version: 1.0 -*-\n[*reference]\nprice: 10 USD\n[*data definitions]\nx: x\n[*data]\n1\n");
    CHECK(run({"validate", (dir / "price.fmf").string()}).out.find("0 error(s)") != std::string::npos);
    const Run with = run({"--currency-table", (dir / "rates.txt").string(), "export", (dir / "price.fmf").string(),
                          "--format", "records"});
    CHECK(with.code == 0);
    CHECK(with.out.find("\"unit\":\"USD\"") != std::string::npos);
    CHECK(run({"--currency-table", (dir / "none.txt").string(), "validate", (dir / "price.fmf").string()}).code == 3);
    setenv("FMF_CURRENCY_TABLE", (dir / "rates.txt").string().c_str(), 1);
    CHECK(run({"export", (dir / "price.fmf").string(), "--format", "records"}).out.find("\"unit\":\"USD\"") !=
          std::string::npos);
    unsetenv("FMF_CURRENCY_TABLE");
}

TEST_CASE("fmt is idempotent") {
    const fs::path dir = scratch("fmt");
    fs::copy_file(fixtures::path("fig5_faraday.fmf"), dir / "f.fmf");
    const Run once = run({"fmt", (dir / "f.fmf").string()});
    CHECK(once.code == 0);
    CHECK(run({"fmt", "--in-place", (dir / "f.fmf").string()}).code == 0);
    std::ifstream in(dir / "f.fmf", std::ios::binary);
    const std::string rewritten((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(rewritten == once.out);
    CHECK(run({"fmt", (dir / "f.fmf").string()}).out == once.out);
    const Run crlf = run({"fmt", "--crlf", (dir / "f.fmf").string()});
    CHECK(crlf.out.find("\r\n") != std::string::npos);

    write(dir / "bad.fmf", "; -*- fmf-version: 1.0 -*-\n[*reference]\n");
    CHECK(run({"fmt", (dir / "bad.fmf").string()}).code == 1);
}
