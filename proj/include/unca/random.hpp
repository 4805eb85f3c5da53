#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "unca/model.hpp"

namespace unca {

/// Seeded generator with hand-rolled distributions. std::mt19937_64 output
/// is fully specified by the standard, but the standard distributions are
/// not, so uniform/normal/weighted draws are derived here directly to keep
/// results reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform index in [0,n).
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw Error(ErrorKind::InvalidParameter, "uniform_index requires n >= 1");
        const std::uint64_t span = static_cast<std::uint64_t>(n);
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() -
            std::numeric_limits<std::uint64_t>::max() % span;
        for (;;) {
            const std::uint64_t v = gen_();
            if (v < limit) return static_cast<std::size_t>(v % span);
        }
    }

    /// Standard normal via Box-Muller; the paired value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0,1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Index drawn with probability proportional to weights[i]. Zero-weight
    /// entries are never selected. All-zero weights are an error; callers
    /// that need a fallback must handle that case themselves.
    std::size_t pick_weighted(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0))
            throw Error(ErrorKind::InvalidParameter, "pick_weighted requires a positive total weight");
        const double u = uniform01() * total;
        double cum = 0.0;
        std::size_t last_positive = 0;
        bool seen_positive = false;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] > 0.0) {
                last_positive = i;
                seen_positive = true;
            }
            cum += weights[i];
            if (u < cum && weights[i] > 0.0) return i;
        }
        // u == total can occur through rounding; land on the last viable entry.
        if (!seen_positive)
            throw Error(ErrorKind::InvalidParameter, "no positive weight found");
        return last_positive;
    }

    /// First k entries of a seeded permutation of [0,n): distinct indices.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        if (k > n) throw Error(ErrorKind::InvalidParameter, "cannot sample more indices than exist");
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + uniform_index(n - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace unca
