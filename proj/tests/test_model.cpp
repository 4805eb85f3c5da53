#include <doctest.h>

#include <limits>

#include "unca/model.hpp"
#include "unca/random.hpp"

using namespace unca;

namespace {
const double kNan = std::numeric_limits<double>::quiet_NaN();
}

TEST_CASE("validate_dataset accepts a minimal matrix") {
    const Dataset d = validate_dataset({{1.0, 2.0}});
    CHECK(d.n() == 1);
    CHECK(d.p() == 2);
    CHECK(d.features()(0, 1) == 2.0);
    CHECK_FALSE(d.labels().has_value());
}

TEST_CASE("validate_dataset rejects non-finite cells with their position") {
    try {
        validate_dataset({{1.0}, {kNan}});
        FAIL("expected NonFiniteValue");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFiniteValue);
        CHECK(std::string(e.what()).find("(1,0)") != std::string::npos);
    }
}

TEST_CASE("validate_dataset rejects label length mismatch") {
    CHECK_THROWS_AS(validate_dataset({{1, 2}, {3, 4}}, std::vector<std::string>{"a"}), Error);
    try {
        validate_dataset({{1, 2}, {3, 4}}, std::vector<std::string>{"a"});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LabelLengthMismatch);
    }
}

TEST_CASE("validate_dataset rejects empty input and ragged rows") {
    CHECK_THROWS_AS(validate_dataset({}), Error);
    CHECK_THROWS_AS(validate_dataset({{}}), Error);
    CHECK_THROWS_AS(validate_dataset({{1.0, 2.0}, {3.0}}), Error);
}

TEST_CASE("dataset round-trips its fields") {
    const std::vector<std::string> labels{"x", "y"};
    const std::vector<std::string> names{"a", "b", "c"};
    const Dataset d = validate_dataset({{1, 2, 3}, {4, 5, 6}}, labels, names);
    CHECK(*d.labels() == labels);
    CHECK(*d.feature_names() == names);
    CHECK(d.features() == Matrix::from_rows({{1, 2, 3}, {4, 5, 6}}));
}

TEST_CASE("svns triple enforces unit-interval components") {
    CHECK_NOTHROW(SvnsTriple(0.0, 1.0, 0.5));
    CHECK_THROWS_AS(SvnsTriple(-0.1, 0.0, 0.0), Error);
    CHECK_THROWS_AS(SvnsTriple(0.0, 1.1, 0.0), Error);
    CHECK_THROWS_AS(SvnsTriple(0.0, 0.0, kNan), Error);
}

TEST_CASE("similarity matrix construction rejects invariant violations") {
    CHECK_THROWS_AS(SimilarityMatrix(Matrix::from_rows({{1.0, 0.5}, {0.4, 1.0}})), Error);  // asymmetric
    CHECK_THROWS_AS(SimilarityMatrix(Matrix::from_rows({{0.9, 0.5}, {0.5, 1.0}})), Error);  // diagonal
    CHECK_THROWS_AS(SimilarityMatrix(Matrix::from_rows({{1.0, 1.5}, {1.5, 1.0}})), Error);  // range
    CHECK_NOTHROW(SimilarityMatrix(Matrix::from_rows({{1.0, 0.5}, {0.5, 1.0}})));
}

TEST_CASE("similarity matrix holds symmetry and reflexivity bit-exactly for random input") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(8);
        Matrix m(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = rng.uniform01();
                m(i, j) = v;
                m(j, i) = v;
            }
        }
        const SimilarityMatrix sim(m);
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(sim(i, i) == 1.0);
            for (std::size_t j = 0; j < n; ++j) REQUIRE(sim(i, j) == sim(j, i));
        }
    }
}

TEST_CASE("cut matrix validates shape, diagonal and symmetry") {
    CHECK_NOTHROW(CutMatrix(2, {1, 0, 0, 1}, 0.5));
    CHECK_THROWS_AS(CutMatrix(2, {1, 1, 0, 1}, 0.5), Error);  // asymmetric
    CHECK_THROWS_AS(CutMatrix(2, {0, 1, 1, 1}, 0.5), Error);  // diagonal
    CHECK_THROWS_AS(CutMatrix(2, {1, 0, 0, 1}, 0.0), Error);  // lambda
    CHECK_THROWS_AS(CutMatrix(2, {1, 0, 0}, 0.5), Error);     // shape
}

TEST_CASE("membership matrix enforces the component algebra") {
    const Matrix truth = Matrix::from_rows({{0.8, 0.4}});
    CHECK_NOTHROW(MembershipMatrix::from_truth(truth, {0.25}));

    // falsity must be the exact complement
    Matrix bad_falsity = Matrix::from_rows({{0.2, 0.61}});
    CHECK_THROWS_AS(MembershipMatrix(truth, Matrix::from_rows({{0.25, 0.25}}), bad_falsity), Error);

    // zero truth is out of range
    CHECK_THROWS_AS(MembershipMatrix::from_truth(Matrix::from_rows({{0.0, 0.4}}), {0.25}), Error);

    // indeterminacy of 1 is out of range
    CHECK_THROWS_AS(MembershipMatrix::from_truth(truth, {1.0}), Error);

    // indeterminacy must be constant within a row
    CHECK_THROWS_AS(MembershipMatrix(truth, Matrix::from_rows({{0.2, 0.3}}),
                                     Matrix::from_rows({{1.0 - 0.8, 1.0 - 0.4}})),
                    Error);
}

TEST_CASE("cluster model validates labels against k") {
    const Matrix centroids = Matrix::from_rows({{0.0}, {1.0}});
    const MembershipMatrix m =
        MembershipMatrix::from_truth(Matrix::from_rows({{1.0, 0.5}, {0.5, 1.0}}), {0.0, 0.0});
    CHECK_NOTHROW(ClusterModel(centroids, m, {0, 1}, 3, true, {0.1, 0.01, 0.001}));
    CHECK_THROWS_AS(ClusterModel(centroids, m, {0, 2}, 3, true, {0.1}), Error);
    CHECK_THROWS_AS(ClusterModel(Matrix::from_rows({{kNan}, {1.0}}), m, {0, 1}, 1, true, {}), Error);
}

TEST_CASE("argmax_row ties resolve to the lowest index") {
    const std::vector<double> row{0.5, 0.5, 0.2};
    CHECK(argmax_row(row) == 0);
    const std::vector<double> row2{0.1, 0.9, 0.9};
    CHECK(argmax_row(row2) == 1);
}
