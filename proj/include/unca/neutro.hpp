#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "unca/model.hpp"

namespace unca {

/// Transitive closure of a similarity matrix plus how it was reached.
/// `squarings` counts the max-min squaring steps actually performed.
struct ClosureResult {
    SimilarityMatrix matrix;
    std::size_t squarings = 0;
    bool converged = false;
};

/// Maps one normalized feature value to a (t,i,f) triple: truth is the
/// value itself, falsity its complement, and indeterminacy peaks at the
/// midrange (1 at v=0.5, 0 at both extremes).
inline SvnsTriple neutrosophify_value(double v) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw Error(ErrorKind::NotNormalized, "feature value outside [0,1]");
    return SvnsTriple(v, 1.0 - std::abs(2.0 * v - 1.0), 1.0 - v);
}

inline std::vector<SvnsTriple> neutrosophify_row(std::span<const double> row) {
    std::vector<SvnsTriple> out;
    out.reserve(row.size());
    for (double v : row) out.push_back(neutrosophify_value(v));
    return out;
}

/// Converts a min-max normalized dataset to its triple representation.
inline SvnsRepresentation neutrosophify(const Dataset& d) {
    std::vector<SvnsTriple> cells;
    cells.reserve(d.n() * d.p());
    for (std::size_t i = 0; i < d.n(); ++i)
        for (std::size_t j = 0; j < d.p(); ++j) cells.push_back(neutrosophify_value(d.features()(i, j)));
    return SvnsRepresentation(d.n(), d.p(), std::move(cells));
}

/// Similarity of two triple sequences: per feature, each component scores
/// 1 - |difference|; the three component scores are averaged, then averaged
/// over features. Symmetric, in [0,1], and 1 exactly for identical inputs.
inline double svns_similarity(std::span<const SvnsTriple> a, std::span<const SvnsTriple> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch,
                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " features");
    if (a.empty())
        throw Error(ErrorKind::EmptyInput, "similarity of zero-length sequences");
    double total = 0.0;
    for (std::size_t f = 0; f < a.size(); ++f) {
        const double st = 1.0 - std::abs(a[f].t - b[f].t);
        const double si = 1.0 - std::abs(a[f].i - b[f].i);
        const double sf = 1.0 - std::abs(a[f].f - b[f].f);
        total += (st + si + sf) / 3.0;
    }
    return total / static_cast<double>(a.size());
}

/// Pairwise similarities of all rows. The diagonal is pinned to 1 and the
/// upper triangle is mirrored so the result is exactly symmetric.
inline SimilarityMatrix build_similarity_matrix(const SvnsRepresentation& rep) {
    const std::size_t n = rep.rows();
    Matrix values(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = svns_similarity(rep.row(i), rep.row(j));
            values(i, j) = s;
            values(j, i) = s;
        }
    }
    return SimilarityMatrix(std::move(values));
}

/// Fuzzy relation composition: out[i][j] = max_k min(a[i][k], b[k][j]).
inline SimilarityMatrix max_min_compose(const SimilarityMatrix& a, const SimilarityMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(n) + " vs " + std::to_string(b.size()));
    Matrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double best = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                best = std::max(best, std::min(a(i, k), b(k, j)));
            out(i, j) = best;
        }
    return SimilarityMatrix(std::move(out));
}

/// Repeated max-min squaring until the matrix stops changing. Max-min only
/// propagates values already present in the input, so the fixed point is
/// detected by exact entry equality; for an n-point matrix it is reached
/// within ceil(log2(n-1)) squarings. `max_squarings` is a safety rail only.
inline ClosureResult transitive_closure(const SimilarityMatrix& c, std::size_t max_squarings = 32) {
    if (c.size() <= 1) return ClosureResult{c, 0, true};
    SimilarityMatrix current = c;
    std::size_t performed = 0;
    while (performed < max_squarings) {
        SimilarityMatrix next = max_min_compose(current, current);
        ++performed;
        if (next == current) return ClosureResult{std::move(next), performed, true};
        current = std::move(next);
    }
    return ClosureResult{std::move(current), performed, false};
}

/// Binarizes a similarity matrix: bit set iff the entry is >= lambda.
inline CutMatrix lambda_cut(const SimilarityMatrix& c, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0 || !std::isfinite(lambda))
        throw Error(ErrorKind::InvalidLambda, "lambda must lie in (0,1]");
    const std::size_t n = c.size();
    std::vector<std::uint8_t> bits(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            bits[i * n + j] = c(i, j) >= lambda ? 1 : 0;
    return CutMatrix(n, std::move(bits), lambda);
}

/// Extracts the partition induced by a cut of a transitively closed matrix:
/// connected components of the 1-relation, with block indices assigned in
/// order of first appearance. Verifies that the relation actually is an
/// equivalence (every component a full clique); failing that the input was
/// not closed, which is reported rather than silently accepted.
inline std::vector<std::size_t> cut_partition(const CutMatrix& cut) {
    const std::size_t n = cut.size();
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> block(n, unassigned);
    std::size_t next_block = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (block[start] != unassigned) continue;
        const std::size_t id = next_block++;
        block[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
                if (cut.at(u, v) && block[v] == unassigned) {
                    block[v] = id;
                    stack.push_back(v);
                }
        }
    }
    // equivalence check: within a block every pair must be directly related
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (block[i] == block[j] && !cut.at(i, j))
                throw Error(ErrorKind::NotEquivalence,
                            "relation is not transitive at pair (" + std::to_string(i) + "," +
                                std::to_string(j) + "); cut a transitively closed matrix instead");
    return block;
}

}  // namespace unca
