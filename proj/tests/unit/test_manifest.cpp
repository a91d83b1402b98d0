#include <doctest.h>

#include <filesystem>

#include "manifest.hpp"
#include "psibound/errors.hpp"

using namespace psicli;
namespace fs = std::filesystem;

TEST_CASE("thirty digits") {
    CHECK(fmt30(0.5) == "0.5");
    CHECK(fmt30(0.1) == "0.100000000000000005551115123126");
    CHECK(fmt30(1e7) == "10000000");
}

TEST_CASE("numbers and ranges") {
    CHECK(parse_number("1e7") == 1e7);
    CHECK(parse_number("-2.5E-3") == -2.5e-3);
    CHECK_THROWS_AS(parse_number("1e7x"), psibound::ParseError);
    CHECK_THROWS_AS(parse_number(""), psibound::ParseError);
    const auto r = parse_range("100:1e8");
    CHECK(r.first == 100.0);
    CHECK(r.second == 1e8);
    CHECK_THROWS_AS(parse_range("5:5"), psibound::PreconditionError);
    CHECK_THROWS_AS(parse_range("5"), psibound::ParseError);
}

TEST_CASE("manifest round trip") {
    Manifest m;
    m.set("a", 1e7);
    m.set("label", "desk-certified");
    m.set_int("count", 236811);
    m.set("a", 2e7);
    const Manifest back = Manifest::parse(m.to_text());
    CHECK(back.to_text() == m.to_text());
    CHECK(back.number("a") == 2e7);
    CHECK(back.get("label") == "desk-certified");
    CHECK_THROWS_AS(back.get("missing"), psibound::ParseError);
    CHECK_THROWS_AS(Manifest::parse("novalue\n"), psibound::ParseError);
}

TEST_CASE("append-only outputs") {
    const fs::path dir = fs::temp_directory_path() / "psibound_unit_manifest";
    fs::remove_all(dir);
    fs::create_directories(dir);
    CHECK(write_append_only(dir / "r.manifest", "x=1\n") == dir / "r.manifest");
    CHECK(write_append_only(dir / "r.manifest", "x=1\n") == dir / "r.manifest");
    CHECK(write_append_only(dir / "r.manifest", "x=2\n") == dir / "r.1.manifest");
    CHECK(read_file(dir / "r.manifest") == "x=1\n");
    append_csv_row(dir / "t.csv", "a,b", "1,2");
    append_csv_row(dir / "t.csv", "a,b", "1,2");
    append_csv_row(dir / "t.csv", "a,b", "3,4");
    CHECK(read_file(dir / "t.csv") == "a,b\n1,2\n3,4\n");
    CHECK_THROWS_AS(append_csv_row(dir / "t.csv", "a,c", "1,2"), psibound::IoError);
    fs::remove_all(dir);
}
