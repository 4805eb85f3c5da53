#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unca {

enum class ErrorKind {
    NonFiniteValue,
    EmptyInput,
    LabelLengthMismatch,
    FileNotFound,
    ParseError,
    EmptyFile,
    InvalidParameter,
    NotNormalized,
    LengthMismatch,
    DimensionMismatch,
    InvalidLambda,
    NotEquivalence,
    KExceedsN,
    OutOfRange,
    SingleCluster,
    CoincidentCentroids,
    CentroidOutOfUnitRange,
    IoError,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::LabelLengthMismatch: return "LabelLengthMismatch";
        case ErrorKind::FileNotFound: return "FileNotFound";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::EmptyFile: return "EmptyFile";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidLambda: return "InvalidLambda";
        case ErrorKind::NotEquivalence: return "NotEquivalence";
        case ErrorKind::KExceedsN: return "KExceedsN";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::SingleCluster: return "SingleCluster";
        case ErrorKind::CoincidentCentroids: return "CoincidentCentroids";
        case ErrorKind::CentroidOutOfUnitRange: return "CentroidOutOfUnitRange";
        case ErrorKind::IoError: return "IoError";
    }
    return "UnknownError";
}

/// Library-wide exception type. what() starts with the kind name so a
/// caller can print a one-line diagnostic per error class.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw Error(ErrorKind::DimensionMismatch,
                            "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                " columns, expected " + std::to_string(m.cols_));
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Feature matrix plus optional ground-truth labels. Immutable once built;
/// use validate_dataset() to construct from raw rows.
class Dataset {
public:
    Dataset(Matrix features, std::optional<std::vector<std::string>> labels = std::nullopt,
            std::optional<std::vector<std::string>> feature_names = std::nullopt)
        : features_(std::move(features)), labels_(std::move(labels)),
          feature_names_(std::move(feature_names)) {
        if (features_.rows() == 0 || features_.cols() == 0)
            throw Error(ErrorKind::EmptyInput, "dataset must have at least one row and one column");
        for (std::size_t i = 0; i < features_.rows(); ++i)
            for (std::size_t j = 0; j < features_.cols(); ++j)
                if (!std::isfinite(features_(i, j)))
                    throw Error(ErrorKind::NonFiniteValue,
                                "non-finite value at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (labels_ && labels_->size() != features_.rows())
            throw Error(ErrorKind::LabelLengthMismatch,
                        std::to_string(labels_->size()) + " labels for " +
                            std::to_string(features_.rows()) + " rows");
        if (feature_names_ && feature_names_->size() != features_.cols())
            throw Error(ErrorKind::LabelLengthMismatch,
                        std::to_string(feature_names_->size()) + " feature names for " +
                            std::to_string(features_.cols()) + " columns");
    }

    std::size_t n() const noexcept { return features_.rows(); }
    std::size_t p() const noexcept { return features_.cols(); }
    const Matrix& features() const noexcept { return features_; }
    std::span<const double> point(std::size_t i) const { return features_.row(i); }
    const std::optional<std::vector<std::string>>& labels() const noexcept { return labels_; }
    const std::optional<std::vector<std::string>>& feature_names() const noexcept { return feature_names_; }

private:
    Matrix features_;
    std::optional<std::vector<std::string>> labels_;
    std::optional<std::vector<std::string>> feature_names_;
};

inline Dataset validate_dataset(const std::vector<std::vector<double>>& raw,
                                std::optional<std::vector<std::string>> labels = std::nullopt,
                                std::optional<std::vector<std::string>> feature_names = std::nullopt) {
    if (raw.empty() || raw.front().empty())
        throw Error(ErrorKind::EmptyInput, "no rows or no columns");
    return Dataset(Matrix::from_rows(raw), std::move(labels), std::move(feature_names));
}

/// Truth / indeterminacy / falsity degrees, each in [0,1]. The components
/// are independent; their sum is unconstrained.
struct SvnsTriple {
    double t = 0.0;
    double i = 0.0;
    double f = 0.0;

    SvnsTriple() = default;
    SvnsTriple(double t_, double i_, double f_) : t(t_), i(i_), f(f_) {
        auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
        if (!in_unit(t) || !in_unit(i) || !in_unit(f))
            throw Error(ErrorKind::OutOfRange, "triple components must lie in [0,1]");
    }

    bool operator==(const SvnsTriple&) const = default;
};

/// n x p grid of triples, one per data cell.
class SvnsRepresentation {
public:
    SvnsRepresentation(std::size_t rows, std::size_t cols, std::vector<SvnsTriple> cells)
        : rows_(rows), cols_(cols), cells_(std::move(cells)) {
        if (rows_ == 0 || cols_ == 0)
            throw Error(ErrorKind::EmptyInput, "representation must be non-empty");
        if (cells_.size() != rows_ * cols_)
            throw Error(ErrorKind::DimensionMismatch, "cell count does not match rows*cols");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const SvnsTriple& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
    std::span<const SvnsTriple> row(std::size_t i) const { return {cells_.data() + i * cols_, cols_}; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<SvnsTriple> cells_;
};

/// Symmetric n x n matrix with unit diagonal and entries in [0,1].
/// Symmetry and reflexivity are exact, not approximate.
class SimilarityMatrix {
public:
    explicit SimilarityMatrix(Matrix values) : values_(std::move(values)) {
        const std::size_t n = values_.rows();
        if (n == 0 || values_.cols() != n)
            throw Error(ErrorKind::DimensionMismatch, "similarity matrix must be square and non-empty");
        for (std::size_t i = 0; i < n; ++i) {
            if (values_(i, i) != 1.0)
                throw Error(ErrorKind::OutOfRange, "diagonal entry must equal 1");
            for (std::size_t j = 0; j < n; ++j) {
                const double v = values_(i, j);
                if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                    throw Error(ErrorKind::OutOfRange, "similarity entries must lie in [0,1]");
                if (values_(i, j) != values_(j, i))
                    throw Error(ErrorKind::OutOfRange, "similarity matrix must be symmetric");
            }
        }
    }

    std::size_t size() const noexcept { return values_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    const Matrix& values() const noexcept { return values_; }

    bool operator==(const SimilarityMatrix&) const = default;

private:
    Matrix values_;
};

/// Binary cut of a similarity matrix at confidence level lambda.
class CutMatrix {
public:
    CutMatrix(std::size_t n, std::vector<std::uint8_t> bits, double lambda)
        : n_(n), bits_(std::move(bits)), lambda_(lambda) {
        if (n_ == 0 || bits_.size() != n_ * n_)
            throw Error(ErrorKind::DimensionMismatch, "bit count does not match n*n");
        if (!(lambda_ > 0.0) || lambda_ > 1.0)
            throw Error(ErrorKind::InvalidLambda, "lambda must lie in (0,1]");
        for (std::size_t i = 0; i < n_; ++i) {
            if (at(i, i) != 1)
                throw Error(ErrorKind::OutOfRange, "cut matrix diagonal must be 1");
            for (std::size_t j = 0; j < n_; ++j) {
                if (bits_[i * n_ + j] > 1)
                    throw Error(ErrorKind::OutOfRange, "cut matrix entries must be 0 or 1");
                if (at(i, j) != at(j, i))
                    throw Error(ErrorKind::OutOfRange, "cut matrix must be symmetric");
            }
        }
    }

    std::size_t size() const noexcept { return n_; }
    double lambda() const noexcept { return lambda_; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return bits_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<std::uint8_t> bits_;
    double lambda_;
};

/// Per-point, per-cluster membership degrees. Falsity is the exact
/// complement of truth, and indeterminacy is constant along each row
/// (it depends on the point's distance profile, not on the cluster).
class MembershipMatrix {
public:
    MembershipMatrix(Matrix truth, Matrix indeterminacy, Matrix falsity)
        : truth_(std::move(truth)), indeterminacy_(std::move(indeterminacy)), falsity_(std::move(falsity)) {
        const std::size_t n = truth_.rows(), k = truth_.cols();
        if (n == 0 || k == 0)
            throw Error(ErrorKind::EmptyInput, "membership matrix must be non-empty");
        if (indeterminacy_.rows() != n || indeterminacy_.cols() != k ||
            falsity_.rows() != n || falsity_.cols() != k)
            throw Error(ErrorKind::DimensionMismatch, "component matrices must share one shape");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                const double t = truth_(i, j), ind = indeterminacy_(i, j), f = falsity_(i, j);
                if (!(t > 0.0) || t > 1.0)
                    throw Error(ErrorKind::OutOfRange, "truth must lie in (0,1]");
                if (ind < 0.0 || !(ind < 1.0))
                    throw Error(ErrorKind::OutOfRange, "indeterminacy must lie in [0,1)");
                if (f != 1.0 - t)
                    throw Error(ErrorKind::OutOfRange, "falsity must equal 1 - truth exactly");
                if (ind != indeterminacy_(i, 0))
                    throw Error(ErrorKind::OutOfRange, "indeterminacy must be constant within a row");
            }
        }
    }

    /// Builds the falsity matrix as the exact complement of truth;
    /// indeterminacy is one value per point, replicated across clusters.
    static MembershipMatrix from_truth(Matrix truth, const std::vector<double>& row_indeterminacy) {
        const std::size_t n = truth.rows(), k = truth.cols();
        if (row_indeterminacy.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "one indeterminacy value per row required");
        Matrix ind(n, k), fal(n, k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                ind(i, j) = row_indeterminacy[i];
                fal(i, j) = 1.0 - truth(i, j);
            }
        return MembershipMatrix(std::move(truth), std::move(ind), std::move(fal));
    }

    std::size_t points() const noexcept { return truth_.rows(); }
    std::size_t clusters() const noexcept { return truth_.cols(); }
    const Matrix& truth() const noexcept { return truth_; }
    const Matrix& indeterminacy() const noexcept { return indeterminacy_; }
    const Matrix& falsity() const noexcept { return falsity_; }

    bool operator==(const MembershipMatrix&) const = default;

private:
    Matrix truth_;
    Matrix indeterminacy_;
    Matrix falsity_;
};

/// Fitted clustering: centroids, soft memberships, hard labels and the
/// convergence trace (max centroid displacement per iteration).
class ClusterModel {
public:
    ClusterModel(Matrix centroids, MembershipMatrix memberships, std::vector<std::size_t> labels,
                 std::size_t iterations_run, bool converged, std::vector<double> centroid_shift_trace)
        : centroids_(std::move(centroids)), memberships_(std::move(memberships)),
          labels_(std::move(labels)), iterations_run_(iterations_run), converged_(converged),
          centroid_shift_trace_(std::move(centroid_shift_trace)) {
        const std::size_t k = centroids_.rows();
        if (k == 0)
            throw Error(ErrorKind::EmptyInput, "model must have at least one centroid");
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t f = 0; f < centroids_.cols(); ++f)
                if (!std::isfinite(centroids_(j, f)))
                    throw Error(ErrorKind::NonFiniteValue, "centroid coordinates must be finite");
        if (memberships_.clusters() != k)
            throw Error(ErrorKind::DimensionMismatch, "membership columns must match centroid count");
        if (labels_.size() != memberships_.points())
            throw Error(ErrorKind::DimensionMismatch, "one label per point required");
        for (std::size_t lab : labels_)
            if (lab >= k) throw Error(ErrorKind::OutOfRange, "label index exceeds cluster count");
    }

    std::size_t k() const noexcept { return centroids_.rows(); }
    const Matrix& centroids() const noexcept { return centroids_; }
    const MembershipMatrix& memberships() const noexcept { return memberships_; }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }
    std::size_t iterations_run() const noexcept { return iterations_run_; }
    bool converged() const noexcept { return converged_; }
    const std::vector<double>& centroid_shift_trace() const noexcept { return centroid_shift_trace_; }

private:
    Matrix centroids_;
    MembershipMatrix memberships_;
    std::vector<std::size_t> labels_;
    std::size_t iterations_run_;
    bool converged_;
    std::vector<double> centroid_shift_trace_;
};

/// Lowest index wins on ties, everywhere a row argmax is taken.
inline std::size_t argmax_row(std::span<const double> row) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.size(); ++j)
        if (row[j] > row[best]) best = j;
    return best;
}

}  // namespace unca
