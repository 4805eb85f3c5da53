#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "unca/model.hpp"
#include "unca/neutro.hpp"
#include "unca/nkm.hpp"

namespace unca {

/// Outcome of one refinement pass. Suppressed points are those whose whole
/// filtered similarity row was zero; they keep their previous label.
struct RefinementReport {
    std::size_t reassigned_count = 0;
    std::size_t suppressed_count = 0;
    std::vector<std::size_t> final_labels;
};

/// Triple-space similarity between every point and every centroid: both are
/// run through the same value-to-triple mapping, then compared feature-wise.
/// Requires normalized data; centroids of a model fitted on normalized data
/// stay inside [0,1] by centroid containment.
inline Matrix point_cluster_refined_truth(const Dataset& d, const ClusterModel& model) {
    if (model.centroids().cols() != d.p())
        throw Error(ErrorKind::DimensionMismatch, "model dimension does not match dataset");
    const std::size_t n = d.n(), k = model.k();
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < d.p(); ++c) {
            const double v = model.centroids()(j, c);
            if (!(v >= 0.0) || v > 1.0)
                throw Error(ErrorKind::CentroidOutOfUnitRange,
                            "centroid " + std::to_string(j) + " has coordinate outside [0,1]; "
                            "fit the model on normalized data");
        }
    std::vector<std::vector<SvnsTriple>> centroid_triples;
    centroid_triples.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
        centroid_triples.push_back(neutrosophify_row(model.centroids().row(j)));
    Matrix out(n, k);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<SvnsTriple> point = neutrosophify_row(d.point(i));
        for (std::size_t j = 0; j < k; ++j)
            out(i, j) = svns_similarity(point, centroid_triples[j]);
    }
    return out;
}

/// Keeps a similarity only when it reaches the confidence level; the
/// boundary value passes.
inline double filter_similarity(double similarity, double lambda) {
    return similarity >= lambda ? similarity : 0.0;
}

/// One refinement pass: recompute point-cluster truths in triple space,
/// zero out entries below lambda and reassign each point to the argmax of
/// its filtered row. All-zero rows keep the prior label. The returned model
/// carries the refined (unfiltered) truths with falsity recomputed and
/// indeterminacy carried over; centroids are not re-fit.
inline std::pair<ClusterModel, RefinementReport>
refine_assignments(const Dataset& d, const ClusterModel& model, double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0 || !std::isfinite(lambda))
        throw Error(ErrorKind::InvalidLambda, "lambda must lie in (0,1]");
    const Matrix refined = point_cluster_refined_truth(d, model);
    const std::size_t n = refined.rows(), k = refined.cols();

    RefinementReport report;
    report.final_labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = k;
        double best_value = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double f = filter_similarity(refined(i, j), lambda);
            if (f > 0.0 && (best == k || f > best_value)) {
                best = j;
                best_value = f;
            }
        }
        if (best == k) {
            ++report.suppressed_count;
            report.final_labels[i] = model.labels()[i];
        } else {
            report.final_labels[i] = best;
            if (best != model.labels()[i]) ++report.reassigned_count;
        }
    }

    std::vector<double> row_ind(n);
    for (std::size_t i = 0; i < n; ++i) row_ind[i] = model.memberships().indeterminacy()(i, 0);
    MembershipMatrix memberships = MembershipMatrix::from_truth(refined, row_ind);
    ClusterModel refined_model(model.centroids(), std::move(memberships), report.final_labels,
                               model.iterations_run(), model.converged(),
                               model.centroid_shift_trace());
    return {std::move(refined_model), std::move(report)};
}

/// Hard labels by maximum truth, lowest index on ties.
inline std::vector<std::size_t> defuzz_max(const MembershipMatrix& m) {
    std::vector<std::size_t> labels(m.points());
    for (std::size_t i = 0; i < m.points(); ++i) labels[i] = argmax_row(m.truth().row(i));
    return labels;
}

/// Truth-weighted average of the centroids per point, plus the label of the
/// centroid nearest to that representative point.
inline std::pair<Matrix, std::vector<std::size_t>>
defuzz_weighted_average(const MembershipMatrix& m, const Matrix& centroids) {
    if (centroids.rows() != m.clusters())
        throw Error(ErrorKind::DimensionMismatch, "centroid count must match membership columns");
    const std::size_t n = m.points(), k = m.clusters(), p = centroids.cols();
    Matrix reps(n, p, 0.0);
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        double weight_sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double w = m.truth()(i, j);
            weight_sum += w;
            for (std::size_t c = 0; c < p; ++c) reps(i, c) += w * centroids(j, c);
        }
        for (std::size_t c = 0; c < p; ++c) reps(i, c) /= weight_sum;
        std::size_t best = 0;
        double best_dist = euclidean_distance(reps.row(i), centroids.row(0));
        for (std::size_t j = 1; j < k; ++j) {
            const double dist = euclidean_distance(reps.row(i), centroids.row(j));
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        labels[i] = best;
    }
    return {std::move(reps), std::move(labels)};
}

/// Labels by the centroid closest to the truth-weighted average position.
inline std::vector<std::size_t> defuzz_center_of_gravity(const MembershipMatrix& m,
                                                         const Matrix& centroids) {
    return defuzz_weighted_average(m, centroids).second;
}

}  // namespace unca
