#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "unca/model.hpp"
#include "unca/random.hpp"

namespace unca {

enum class InitStrategy { random, kmeans_pp, heuristic };

inline std::string to_string(InitStrategy s) {
    switch (s) {
        case InitStrategy::random: return "random";
        case InitStrategy::kmeans_pp: return "kmeans_pp";
        case InitStrategy::heuristic: return "heuristic";
    }
    return "unknown";
}

struct NkmConfig {
    std::size_t k = 2;
    InitStrategy init = InitStrategy::kmeans_pp;
    std::uint64_t seed = 42;
    double tolerance = 1e-5;
    std::size_t max_iterations = 100;
};

inline void validate_config(const NkmConfig& cfg) {
    if (cfg.k < 1) throw Error(ErrorKind::InvalidParameter, "k must be >= 1");
    if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance))
        throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");
    if (cfg.max_iterations < 1)
        throw Error(ErrorKind::InvalidParameter, "max_iterations must be >= 1");
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch,
                    std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

/// Truth degree of a distance: 1/(1+d). 1 at distance zero, strictly decreasing.
inline double truth_degree(double distance) {
    return 1.0 / (1.0 + distance);
}

/// Indeterminacy from a point's distances to all centroids: the population
/// variance v of the distances, squashed to [0,1) via v/(1+v). Equal
/// distances (and the single-centroid case) give 0.
inline double indeterminacy_degree(std::span<const double> distances) {
    if (distances.empty())
        throw Error(ErrorKind::EmptyInput, "at least one distance required");
    double mean = 0.0;
    for (double d : distances) mean += d;
    mean /= static_cast<double>(distances.size());
    double var = 0.0;
    for (double d : distances) {
        const double dev = d - mean;
        var += dev * dev;
    }
    var /= static_cast<double>(distances.size());
    return var / (1.0 + var);
}

/// Falsity is the exact complement of truth.
inline double falsity_degree(double truth) {
    if (!(truth > 0.0) || truth > 1.0)
        throw Error(ErrorKind::OutOfRange, "truth must lie in (0,1]");
    return 1.0 - truth;
}

/// Soft memberships of every point against the given centroids.
inline MembershipMatrix assign_memberships(const Dataset& d, const Matrix& centroids) {
    if (centroids.cols() != d.p())
        throw Error(ErrorKind::DimensionMismatch,
                    "centroid dimension " + std::to_string(centroids.cols()) +
                        " does not match dataset dimension " + std::to_string(d.p()));
    if (centroids.rows() == 0)
        throw Error(ErrorKind::EmptyInput, "at least one centroid required");
    const std::size_t n = d.n(), k = centroids.rows();
    Matrix truth(n, k);
    std::vector<double> row_ind(n);
    std::vector<double> dist(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) dist[j] = euclidean_distance(d.point(i), centroids.row(j));
        for (std::size_t j = 0; j < k; ++j) truth(i, j) = truth_degree(dist[j]);
        row_ind[i] = indeterminacy_degree(dist);
    }
    return MembershipMatrix::from_truth(std::move(truth), row_ind);
}

namespace detail {

inline void column_bounds(const Matrix& features, std::vector<double>& lo, std::vector<double>& hi) {
    lo.assign(features.cols(), std::numeric_limits<double>::infinity());
    hi.assign(features.cols(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < features.rows(); ++i)
        for (std::size_t c = 0; c < features.cols(); ++c) {
            lo[c] = std::min(lo[c], features(i, c));
            hi[c] = std::max(hi[c], features(i, c));
        }
}

// Weighted means are inside the per-feature data bounds mathematically;
// clamping removes the last-ulp rounding spill so the containment
// invariant holds exactly.
inline void clamp_to_bounds(Matrix& centroids, const std::vector<double>& lo,
                            const std::vector<double>& hi) {
    for (std::size_t j = 0; j < centroids.rows(); ++j)
        for (std::size_t c = 0; c < centroids.cols(); ++c)
            centroids(j, c) = std::clamp(centroids(j, c), lo[c], hi[c]);
}

}  // namespace detail

/// Truth-weighted mean over ALL points, per cluster. The denominator can
/// never vanish because truth degrees are strictly positive.
inline Matrix update_centroids(const Dataset& d, const MembershipMatrix& m) {
    if (m.points() != d.n())
        throw Error(ErrorKind::DimensionMismatch, "membership rows must match dataset rows");
    const std::size_t k = m.clusters(), p = d.p();
    Matrix out(k, p, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double weight_sum = 0.0;
        for (std::size_t i = 0; i < d.n(); ++i) {
            const double w = m.truth()(i, j);
            weight_sum += w;
            for (std::size_t c = 0; c < p; ++c) out(j, c) += w * d.features()(i, c);
        }
        for (std::size_t c = 0; c < p; ++c) out(j, c) /= weight_sum;
    }
    std::vector<double> lo, hi;
    detail::column_bounds(d.features(), lo, hi);
    detail::clamp_to_bounds(out, lo, hi);
    return out;
}

/// Truth-weighted mean over each cluster's assigned points only; this is
/// the update the fitting loop uses. A cluster that currently owns no
/// points keeps its previous centroid.
inline Matrix update_assigned_centroids(const Dataset& d, const MembershipMatrix& m,
                                        const std::vector<std::size_t>& labels,
                                        const Matrix& previous) {
    if (m.points() != d.n() || labels.size() != d.n())
        throw Error(ErrorKind::DimensionMismatch, "memberships and labels must match dataset rows");
    if (previous.rows() != m.clusters() || previous.cols() != d.p())
        throw Error(ErrorKind::DimensionMismatch, "previous centroids have the wrong shape");
    const std::size_t k = m.clusters(), p = d.p();
    Matrix out(k, p, 0.0);
    std::vector<double> weight_sum(k, 0.0);
    for (std::size_t i = 0; i < d.n(); ++i) {
        const std::size_t j = labels[i];
        const double w = m.truth()(i, j);
        weight_sum[j] += w;
        for (std::size_t c = 0; c < p; ++c) out(j, c) += w * d.features()(i, c);
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (weight_sum[j] > 0.0) {
            for (std::size_t c = 0; c < p; ++c) out(j, c) /= weight_sum[j];
        } else {
            for (std::size_t c = 0; c < p; ++c) out(j, c) = previous(j, c);
        }
    }
    std::vector<double> lo, hi;
    detail::column_bounds(d.features(), lo, hi);
    detail::clamp_to_bounds(out, lo, hi);
    return out;
}

namespace detail {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

inline Matrix rows_at(const Dataset& d, const std::vector<std::size_t>& indices) {
    Matrix out(indices.size(), d.p());
    for (std::size_t r = 0; r < indices.size(); ++r)
        for (std::size_t c = 0; c < d.p(); ++c) out(r, c) = d.features()(indices[r], c);
    return out;
}

inline std::vector<std::size_t> kmeans_pp_indices(const Dataset& d, std::size_t k, Rng& rng) {
    const std::size_t n = d.n();
    std::vector<std::size_t> chosen;
    std::vector<bool> is_chosen(n, false);
    std::vector<double> min_sq(n, std::numeric_limits<double>::infinity());

    auto add = [&](std::size_t idx) {
        chosen.push_back(idx);
        is_chosen[idx] = true;
        for (std::size_t i = 0; i < n; ++i)
            min_sq[i] = std::min(min_sq[i], squared_distance(d.point(i), d.point(idx)));
    };
    add(rng.uniform_index(n));

    // Each further centroid is sampled proportionally to the squared
    // distance to the nearest chosen one. Several candidates are drawn per
    // step and the one that shrinks the total potential most is kept.
    const std::size_t candidates =
        2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));
    while (chosen.size() < k) {
        double total = 0.0;
        for (double w : min_sq) total += w;
        if (!(total > 0.0)) {
            // every remaining point coincides with a chosen centroid
            std::vector<std::size_t> unchosen;
            for (std::size_t i = 0; i < n; ++i)
                if (!is_chosen[i]) unchosen.push_back(i);
            add(unchosen[rng.uniform_index(unchosen.size())]);
            continue;
        }
        std::size_t best = n;
        double best_potential = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < candidates; ++t) {
            const std::size_t cand = rng.pick_weighted(min_sq);
            double potential = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                potential += std::min(min_sq[i], squared_distance(d.point(i), d.point(cand)));
            if (potential < best_potential) {
                best_potential = potential;
                best = cand;
            }
        }
        add(best);
    }
    return chosen;
}

inline std::vector<std::size_t> heuristic_indices(const Dataset& d, std::size_t k) {
    const std::size_t n = d.n(), p = d.p();
    std::vector<double> mean(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < p; ++c) mean[c] += d.features()(i, c);
    for (double& v : mean) v /= static_cast<double>(n);

    std::vector<std::size_t> chosen;
    std::vector<bool> is_chosen(n, false);
    std::size_t first = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dist = euclidean_distance(d.point(i), std::span<const double>(mean));
        if (dist > best) {
            best = dist;
            first = i;
        }
    }
    chosen.push_back(first);
    is_chosen[first] = true;

    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < k) {
        for (std::size_t i = 0; i < n; ++i)
            min_dist[i] = std::min(min_dist[i], euclidean_distance(d.point(i), d.point(chosen.back())));
        std::size_t next = n;
        double far = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_chosen[i]) continue;
            if (min_dist[i] > far) {
                far = min_dist[i];
                next = i;
            }
        }
        chosen.push_back(next);
        is_chosen[next] = true;
    }
    return chosen;
}

}  // namespace detail

/// Picks k starting centroids from the data rows. All strategies are
/// deterministic for a fixed seed; `heuristic` ignores the seed entirely
/// (farthest-point greedy from the point farthest from the data mean).
inline Matrix init_centroids(const Dataset& d, const NkmConfig& cfg) {
    validate_config(cfg);
    if (cfg.k > d.n())
        throw Error(ErrorKind::KExceedsN,
                    "k=" + std::to_string(cfg.k) + " exceeds n=" + std::to_string(d.n()));
    Rng rng(cfg.seed);
    std::vector<std::size_t> indices;
    switch (cfg.init) {
        case InitStrategy::random:
            indices = rng.sample_without_replacement(d.n(), cfg.k);
            break;
        case InitStrategy::kmeans_pp:
            indices = detail::kmeans_pp_indices(d, cfg.k, rng);
            break;
        case InitStrategy::heuristic:
            indices = detail::heuristic_indices(d, cfg.k);
            break;
    }
    return detail::rows_at(d, indices);
}

/// Runs the clustering loop: assign soft memberships, recompute each
/// cluster's centroid as the truth-weighted mean of its assigned points,
/// and stop once the largest centroid displacement falls below the
/// tolerance (or max_iterations is hit). The returned memberships and
/// labels are consistent with the final centroids.
inline ClusterModel fit(const Dataset& d, const NkmConfig& cfg) {
    Matrix centroids = init_centroids(d, cfg);
    std::vector<double> trace;
    trace.reserve(cfg.max_iterations);
    bool converged = false;

    for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
        const MembershipMatrix m = assign_memberships(d, centroids);
        std::vector<std::size_t> labels(d.n());
        for (std::size_t i = 0; i < d.n(); ++i) labels[i] = argmax_row(m.truth().row(i));
        const Matrix next = update_assigned_centroids(d, m, labels, centroids);
        double shift = 0.0;
        for (std::size_t j = 0; j < cfg.k; ++j)
            shift = std::max(shift, euclidean_distance(next.row(j), centroids.row(j)));
        trace.push_back(shift);
        centroids = next;
        if (shift < cfg.tolerance) {
            converged = true;
            break;
        }
    }

    MembershipMatrix memberships = assign_memberships(d, centroids);
    std::vector<std::size_t> labels(d.n());
    for (std::size_t i = 0; i < d.n(); ++i) labels[i] = argmax_row(memberships.truth().row(i));
    const std::size_t iterations_run = trace.size();
    return ClusterModel(std::move(centroids), std::move(memberships), std::move(labels),
                        iterations_run, converged, std::move(trace));
}

}  // namespace unca
