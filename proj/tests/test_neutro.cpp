#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "unca/ingest.hpp"
#include "unca/neutro.hpp"
#include "unca/random.hpp"

using namespace unca;

TEST_CASE("neutrosophify maps normalized values to triples") {
    CHECK(neutrosophify_value(0.0) == SvnsTriple(0.0, 0.0, 1.0));
    CHECK(neutrosophify_value(0.5) == SvnsTriple(0.5, 1.0, 0.5));
    CHECK(neutrosophify_value(0.75) == SvnsTriple(0.75, 0.5, 0.25));
    CHECK(neutrosophify_value(1.0) == SvnsTriple(1.0, 0.0, 0.0));
    CHECK_THROWS_AS(neutrosophify_value(1.5), Error);
    try {
        neutrosophify_value(-0.1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotNormalized);
    }
}

TEST_CASE("neutrosophify covers the whole dataset") {
    const Dataset d = validate_dataset({{0.0, 0.5}, {0.75, 1.0}});
    const SvnsRepresentation rep = neutrosophify(d);
    CHECK(rep.rows() == 2);
    CHECK(rep.cols() == 2);
    CHECK(rep.at(1, 0) == SvnsTriple(0.75, 0.5, 0.25));
    CHECK_THROWS_AS(neutrosophify(validate_dataset({{2.0}})), Error);
}

TEST_CASE("svns_similarity hand values") {
    const std::vector<SvnsTriple> a{SvnsTriple(1, 0, 0)};
    const std::vector<SvnsTriple> b{SvnsTriple(0, 0, 1)};
    CHECK(svns_similarity(a, a) == 1.0);
    CHECK(svns_similarity(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // one identical feature plus one scoring 1/3 averages to 2/3
    const std::vector<SvnsTriple> c{SvnsTriple(0.3, 0.6, 0.7), SvnsTriple(1, 0, 0)};
    const std::vector<SvnsTriple> d{SvnsTriple(0.3, 0.6, 0.7), SvnsTriple(0, 0, 1)};
    CHECK(svns_similarity(c, d) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(svns_similarity(a, c), Error);
}

TEST_CASE("svns_similarity symmetry and self-similarity over random inputs") {
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t p = 1 + rng.uniform_index(6);
        std::vector<SvnsTriple> a, b;
        for (std::size_t f = 0; f < p; ++f) {
            a.emplace_back(rng.uniform01(), rng.uniform01(), rng.uniform01());
            b.emplace_back(rng.uniform01(), rng.uniform01(), rng.uniform01());
        }
        const double ab = svns_similarity(a, b);
        REQUIRE(ab == svns_similarity(b, a));
        REQUIRE(ab >= 0.0);
        REQUIRE(ab <= 1.0);
        REQUIRE(svns_similarity(a, a) == 1.0);
    }
}

TEST_CASE("build_similarity_matrix basics") {
    const Dataset one = validate_dataset({{0.3, 0.7}});
    const SimilarityMatrix m1 = build_similarity_matrix(neutrosophify(one));
    CHECK(m1.size() == 1);
    CHECK(m1(0, 0) == 1.0);

    const Dataset twins = validate_dataset({{0.2, 0.8}, {0.2, 0.8}});
    const SimilarityMatrix m2 = build_similarity_matrix(neutrosophify(twins));
    CHECK(m2(0, 1) == 1.0);
    CHECK(m2(1, 0) == 1.0);
}

TEST_CASE("build_similarity_matrix matches the pairwise recomputation") {
    Rng rng(23);
    std::vector<std::vector<double>> rows(5, std::vector<double>(3));
    for (auto& row : rows)
        for (double& v : row) v = rng.uniform01();
    const Dataset d = validate_dataset(rows);
    const SvnsRepresentation rep = neutrosophify(d);
    const SimilarityMatrix m = build_similarity_matrix(rep);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            const double expected = i == j ? 1.0 : svns_similarity(rep.row(i), rep.row(j));
            REQUIRE(m(i, j) == expected);
        }
}

TEST_CASE("max_min_compose hand values") {
    const SimilarityMatrix identity(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(max_min_compose(identity, identity) == identity);

    const SimilarityMatrix c(
        Matrix::from_rows({{1.0, 0.8, 0.3}, {0.8, 1.0, 0.5}, {0.3, 0.5, 1.0}}));
    const SimilarityMatrix sq = max_min_compose(c, c);
    CHECK(sq(0, 2) == 0.5);

    // squaring a reflexive matrix never loses mass
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) REQUIRE(sq(i, j) >= c(i, j));

    const SimilarityMatrix small(Matrix::from_rows({{1.0}}));
    CHECK_THROWS_AS(max_min_compose(c, small), Error);
}

TEST_CASE("transitive_closure trivial sizes") {
    const ClosureResult r1 = transitive_closure(SimilarityMatrix(Matrix::from_rows({{1.0}})));
    CHECK(r1.squarings == 0);
    CHECK(r1.converged);

    const SimilarityMatrix two(Matrix::from_rows({{1.0, 0.4}, {0.4, 1.0}}));
    const ClosureResult r2 = transitive_closure(two);
    CHECK(r2.squarings == 1);
    CHECK(r2.converged);
    CHECK(r2.matrix == two);
}

TEST_CASE("transitive_closure lifts the chain similarity") {
    const SimilarityMatrix chain(
        Matrix::from_rows({{1.0, 0.9, 0.0}, {0.9, 1.0, 0.8}, {0.0, 0.8, 1.0}}));
    const ClosureResult r = transitive_closure(chain);
    CHECK(r.converged);
    CHECK(r.matrix(0, 2) == 0.8);
    CHECK(r.matrix(0, 1) == 0.9);
}

TEST_CASE("transitive_closure satisfies min-transitivity, dominance and idempotence") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const SimilarityMatrix c = oracle::random_similarity(20, rng);
        const ClosureResult r = transitive_closure(c);
        REQUIRE(r.converged);
        REQUIRE(oracle::is_min_transitive(r.matrix));
        for (std::size_t i = 0; i < 20; ++i)
            for (std::size_t j = 0; j < 20; ++j) REQUIRE(r.matrix(i, j) >= c(i, j));
        const ClosureResult again = transitive_closure(r.matrix);
        REQUIRE(again.matrix == r.matrix);
        REQUIRE(again.squarings <= 1);  // one verification squaring changes nothing
    }
}

TEST_CASE("lambda_cut thresholds with >= at the boundary") {
    const SimilarityMatrix c(Matrix::from_rows({{1.0, 0.6}, {0.6, 1.0}}));
    const CutMatrix low = lambda_cut(c, 0.5);
    CHECK(low.at(0, 1) == 1);
    const CutMatrix high = lambda_cut(c, 0.7);
    CHECK(high.at(0, 1) == 0);
    CHECK(high.at(0, 0) == 1);
    const CutMatrix boundary = lambda_cut(c, 0.6);
    CHECK(boundary.at(0, 1) == 1);

    CHECK_THROWS_AS(lambda_cut(c, 0.0), Error);
    CHECK_THROWS_AS(lambda_cut(c, 1.0000001), Error);
    try {
        lambda_cut(c, -1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidLambda);
    }
}

TEST_CASE("cut_partition extracts blocks in first-appearance order") {
    const CutMatrix ones(3, {1, 1, 1, 1, 1, 1, 1, 1, 1}, 0.5);
    CHECK(cut_partition(ones) == std::vector<std::size_t>{0, 0, 0});

    const CutMatrix id(3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, 0.5);
    CHECK(cut_partition(id) == std::vector<std::size_t>{0, 1, 2});

    const CutMatrix blocks(3, {1, 1, 0, 1, 1, 0, 0, 0, 1}, 0.5);
    CHECK(cut_partition(blocks) == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("cut_partition flags a non-transitive relation") {
    // chain 0-1-2 without the 0-2 bit: connected but not a clique
    const CutMatrix chain(3, {1, 1, 0, 1, 1, 1, 0, 1, 1}, 0.5);
    try {
        cut_partition(chain);
        FAIL("expected NotEquivalence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotEquivalence);
    }
}

TEST_CASE("cuts of a closure are equivalences that refine monotonically") {
    Rng rng(47);
    const std::vector<double> lambdas{0.1, 0.3, 0.5, 0.7, 0.9};
    for (int trial = 0; trial < 5; ++trial) {
        const ClosureResult r = transitive_closure(oracle::random_similarity(15, rng));
        std::vector<std::vector<std::size_t>> partitions;
        for (double lambda : lambdas)
            partitions.push_back(cut_partition(lambda_cut(r.matrix, lambda)));
        for (std::size_t i = 1; i < partitions.size(); ++i)
            REQUIRE(oracle::refines(partitions[i], partitions[i - 1]));
    }
}
