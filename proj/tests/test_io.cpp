#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "qvt/io.hpp"
#include "qvt/rng.hpp"

using namespace qvt;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("qvt_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("doubles round trip through their text form", "[io]") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(-2.5e-300) == "-2.5e-300"); // %g strips trailing zeros
    CHECK(io::format_double(1.0 / 3.0) == "0.33333333333333331");

    auto eng = rng::engine(rng::derive(3, "io_roundtrip"));
    for (int k = 0; k < 200; ++k) {
        const double v = std::ldexp(rng::uniform(eng, -1.0, 1.0), int(rng::uniform(eng, -60.0, 60.0)));
        CHECK(std::stod(io::format_double(v)) == v);
    }
}

TEST_CASE("csv files round trip and rerun byte identical", "[io]") {
    TempDir tmp;
    io::Csv csv;
    csv.header = {"run", "p1_exists", "p1_gone"};
    csv.rows = {{"0", io::format_double(0.57735026918962584), io::format_double(0.986)},
                {"1", io::format_double(1.0 / 3.0), io::format_double(0.9)}};

    const auto path = tmp.file("table.csv");
    io::write_csv(path, csv);
    const std::string once = io::read_text_file(path);
    io::write_csv(path, csv);
    CHECK(io::read_text_file(path) == once);

    const auto back = io::read_csv(path);
    REQUIRE(back.header == csv.header);
    REQUIRE(back.rows == csv.rows);
    CHECK(std::stod(back.rows[0][1]) == 0.57735026918962584);

    io::Csv ragged = csv;
    ragged.rows.push_back({"2", "0.5"});
    CHECK_THROWS_AS(io::write_csv(path, ragged), std::invalid_argument);
    CHECK_THROWS_AS(io::read_text_file(tmp.file("missing.csv")), std::runtime_error);
}

TEST_CASE("fnv1a64 matches the reference vectors", "[io]") {
    CHECK(io::fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(io::fnv1a64("foobar") == 0x85944171f73967e8ull);
    CHECK(io::hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");

    TempDir tmp;
    const auto path = tmp.file("hashed.txt");
    io::write_text_file(path, "foobar");
    CHECK(io::fnv1a64_file(path) == io::fnv1a64("foobar"));
}

TEST_CASE("scatter svg is deterministic and complete", "[io]") {
    std::vector<io::ScatterSeries> series{
        {"exists", "tab:blue", {{0, 0.57}, {1, 0.52}, {2, 0.61}}},
        {"gone", "crimson", {{0, 0.98}, {1, 0.93}, {2, 0.95}}}};
    const auto svg = io::scatter_svg("P1 by run", "run", "P1", series, {0.75});
    CHECK(svg == io::scatter_svg("P1 by run", "run", "P1", series, {0.75}));

    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("P1 by run") != std::string::npos);
    CHECK(svg.find("exists") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    // one marker per point plus one legend dot per series
    std::size_t circles = 0, at = 0;
    while ((at = svg.find("<circle", at)) != std::string::npos) ++circles, ++at;
    CHECK(circles == 8);
}
