#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "unca/ingest.hpp"
#include "unca/nkm.hpp"

using namespace unca;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("load_csv parses a headered file") {
    const auto path = write_temp("unca_basic.csv", "a,b\n1,2\n3,4\n");
    const Dataset d = load_csv(path);
    CHECK(d.n() == 2);
    CHECK(d.p() == 2);
    CHECK(d.features()(1, 0) == 3.0);
    CHECK((*d.feature_names())[1] == "b");
}

TEST_CASE("load_csv reports the offending row and column") {
    const auto path = write_temp("unca_bad.csv", "a,b\n1,x\n");
    try {
        load_csv(path);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        const std::string msg = e.what();
        CHECK(msg.find("row 1") != std::string::npos);
        CHECK(msg.find("column b") != std::string::npos);
        CHECK(msg.find("'x'") != std::string::npos);
    }
}

TEST_CASE("load_csv loads the iris fixture") {
    CsvSchema schema;
    schema.label_column = std::string("species");
    const Dataset d = load_csv(UNCA_DATA_DIR "/iris.csv", schema);
    CHECK(d.n() == 150);
    CHECK(d.p() == 4);
    const std::set<std::string> distinct(d.labels()->begin(), d.labels()->end());
    CHECK(distinct.size() == 3);
    CHECK((*d.feature_names())[0] == "sepal_length");
}

TEST_CASE("load_csv error paths") {
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), Error);
    try {
        load_csv("/nonexistent/file.csv");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FileNotFound);
    }

    const auto empty = write_temp("unca_empty.csv", "");
    try {
        load_csv(empty);
        FAIL("expected EmptyFile");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyFile);
    }

    const auto header_only = write_temp("unca_header_only.csv", "a,b\n");
    CHECK_THROWS_AS(load_csv(header_only), Error);
}

TEST_CASE("load_csv honors schema options") {
    const auto path = write_temp("unca_schema.csv", "1;2;left\n3;4;right\n");
    CsvSchema schema;
    schema.has_header = false;
    schema.delimiter = ';';
    schema.label_column = std::size_t{2};
    const Dataset d = load_csv(path, schema);
    CHECK(d.n() == 2);
    CHECK(d.p() == 2);
    CHECK((*d.labels())[1] == "right");
}

TEST_CASE("load_csv handles quoted fields and CRLF") {
    const auto path = write_temp("unca_quoted.csv", "a,b,name\r\n1,2,\"x, the \"\"first\"\"\"\r\n");
    CsvSchema schema;
    schema.label_column = std::string("name");
    const Dataset d = load_csv(path, schema);
    CHECK(d.n() == 1);
    CHECK((*d.labels())[0] == "x, the \"first\"");
}

TEST_CASE("min_max_normalize maps columns onto the unit interval") {
    const Dataset d = validate_dataset({{0, 7, 2}, {5, 7, 4}, {10, 7, 2}});
    const Dataset n = min_max_normalize(d);
    CHECK(n.features()(0, 0) == 0.0);
    CHECK(n.features()(1, 0) == 0.5);
    CHECK(n.features()(2, 0) == 1.0);
    // constant column
    CHECK(n.features()(0, 1) == 0.5);
    CHECK(n.features()(2, 1) == 0.5);
    // two-point column
    CHECK(n.features()(0, 2) == 0.0);
    CHECK(n.features()(1, 2) == 1.0);
}

TEST_CASE("min_max_normalize is idempotent and keeps labels") {
    const Dataset d = make_blobs(2, 20, 3, 4.0, 1.0, 11);
    const Dataset once = min_max_normalize(d);
    const Dataset twice = min_max_normalize(once);
    for (std::size_t i = 0; i < once.n(); ++i)
        for (std::size_t c = 0; c < once.p(); ++c) {
            REQUIRE(once.features()(i, c) >= 0.0);
            REQUIRE(once.features()(i, c) <= 1.0);
            REQUIRE(twice.features()(i, c) == doctest::Approx(once.features()(i, c)).epsilon(1e-15));
        }
    CHECK(*once.labels() == *d.labels());
}

TEST_CASE("write_csv / load_csv round-trip") {
    const Dataset d = make_blobs(3, 10, 2, 5.0, 0.5, 3);
    const fs::path path = fs::temp_directory_path() / "unca_roundtrip.csv";
    write_csv(d, path);
    CsvSchema schema;
    schema.label_column = std::string("label");
    const Dataset back = load_csv(path, schema);
    REQUIRE(back.n() == d.n());
    REQUIRE(back.p() == d.p());
    for (std::size_t i = 0; i < d.n(); ++i)
        for (std::size_t c = 0; c < d.p(); ++c)
            REQUIRE(back.features()(i, c) == doctest::Approx(d.features()(i, c)).epsilon(1e-12));
    CHECK(*back.labels() == *d.labels());
}

TEST_CASE("make_blobs: single cluster carries one label") {
    const Dataset d = make_blobs(1, 3, 2, 1.0, 0.1, 5);
    CHECK(d.n() == 3);
    for (const auto& lab : *d.labels()) CHECK(lab == "0");
}

TEST_CASE("make_blobs is deterministic for a fixed seed") {
    const Dataset a = make_blobs(2, 50, 3, 10.0, 1.0, 7);
    const Dataset b = make_blobs(2, 50, 3, 10.0, 1.0, 7);
    CHECK(a.features() == b.features());
    CHECK(*a.labels() == *b.labels());
}

TEST_CASE("make_blobs centers honor the separation floor") {
    for (std::uint64_t seed : {1, 2, 3}) {
        Rng rng(seed);
        const Matrix centers = detail::blob_centers(3, 4, 10.0, rng);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b)
                REQUIRE(euclidean_distance(centers.row(a), centers.row(b)) >= 10.0);
    }
    // fallback branch: more clusters than dimensions
    Rng rng(9);
    const Matrix centers = detail::blob_centers(5, 2, 3.0, rng);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = a + 1; b < 5; ++b)
            REQUIRE(euclidean_distance(centers.row(a), centers.row(b)) >= 3.0);
}

TEST_CASE("make_blobs rejects bad parameters") {
    CHECK_THROWS_AS(make_blobs(0, 3, 2, 1.0, 0.1, 1), Error);
    CHECK_THROWS_AS(make_blobs(2, 0, 2, 1.0, 0.1, 1), Error);
    CHECK_THROWS_AS(make_blobs(2, 3, 0, 1.0, 0.1, 1), Error);
    CHECK_THROWS_AS(make_blobs(2, 3, 2, 0.0, 0.1, 1), Error);
    CHECK_THROWS_AS(make_blobs(2, 3, 2, 1.0, -1.0, 1), Error);
}
