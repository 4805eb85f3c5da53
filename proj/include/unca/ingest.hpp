#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "unca/model.hpp"
#include "unca/random.hpp"

namespace unca {

/// How to read a CSV file: header presence, which column holds the class
/// label (by name or 0-based index), and the field delimiter.
struct CsvSchema {
    bool has_header = true;
    std::optional<std::variant<std::string, std::size_t>> label_column;
    char delimiter = ',';
};

namespace detail {

inline std::vector<std::string> split_csv_record(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline std::optional<double> parse_double(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

/// Shortest round-trip decimal form; used wherever byte-stable output matters.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

/// Fixed 17-significant-digit form for full-precision matrix exports.
inline std::string format_double_17(double v) {
    char buf[64];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

}  // namespace detail

/// Reads a CSV file into a Dataset. Every non-label cell must parse as a
/// number; a bad cell aborts the load with the offending row and column.
inline Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open())
        throw Error(ErrorKind::FileNotFound, path.string());

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty())
        throw Error(ErrorKind::EmptyFile, path.string());
    // UTF-8 BOM
    if (lines[0].size() >= 3 && lines[0].compare(0, 3, "\xEF\xBB\xBF") == 0)
        lines[0].erase(0, 3);

    std::size_t first_data = 0;
    std::vector<std::string> header;
    if (schema.has_header) {
        header = detail::split_csv_record(lines[0], schema.delimiter);
        for (auto& h : header) h = detail::trim(h);
        first_data = 1;
        if (lines.size() == 1)
            throw Error(ErrorKind::EmptyFile, path.string() + " has a header but no data rows");
    }

    const std::size_t column_count =
        schema.has_header ? header.size()
                          : detail::split_csv_record(lines[0], schema.delimiter).size();

    std::optional<std::size_t> label_index;
    if (schema.label_column) {
        if (std::holds_alternative<std::size_t>(*schema.label_column)) {
            label_index = std::get<std::size_t>(*schema.label_column);
            if (*label_index >= column_count)
                throw Error(ErrorKind::InvalidParameter,
                            "label column index " + std::to_string(*label_index) +
                                " out of range for " + std::to_string(column_count) + " columns");
        } else {
            const auto& name = std::get<std::string>(*schema.label_column);
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end())
                throw Error(ErrorKind::InvalidParameter, "label column '" + name + "' not found in header");
            label_index = static_cast<std::size_t>(it - header.begin());
        }
    }

    auto column_name = [&](std::size_t c) {
        return c < header.size() ? header[c] : std::to_string(c);
    };

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    for (std::size_t li = first_data; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const auto fields = detail::split_csv_record(lines[li], schema.delimiter);
        if (fields.size() != column_count)
            throw Error(ErrorKind::ParseError,
                        "row " + std::to_string(li) + " has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(column_count));
        std::vector<double> row;
        row.reserve(column_count);
        for (std::size_t c = 0; c < column_count; ++c) {
            if (label_index && c == *label_index) {
                labels.push_back(detail::trim(fields[c]));
                continue;
            }
            const auto value = detail::parse_double(fields[c]);
            if (!value)
                throw Error(ErrorKind::ParseError,
                            "row " + std::to_string(li) + ", column " + column_name(c) +
                                ": cannot parse '" + detail::trim(fields[c]) + "' as a number");
            row.push_back(*value);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw Error(ErrorKind::EmptyFile, path.string() + " contains no data rows");

    std::optional<std::vector<std::string>> feature_names;
    if (schema.has_header) {
        std::vector<std::string> names;
        for (std::size_t c = 0; c < column_count; ++c)
            if (!label_index || c != *label_index) names.push_back(header[c]);
        feature_names = std::move(names);
    }
    std::optional<std::vector<std::string>> label_opt;
    if (label_index) label_opt = std::move(labels);
    return validate_dataset(rows, std::move(label_opt), std::move(feature_names));
}

/// Writes a Dataset back to CSV (shortest round-trip number format). The
/// label column, when present, is appended last under the name "label".
inline void write_csv(const Dataset& d, const std::filesystem::path& path, char delimiter = ',') {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    const bool with_labels = d.labels().has_value();
    for (std::size_t c = 0; c < d.p(); ++c) {
        if (c) out << delimiter;
        out << (d.feature_names() ? (*d.feature_names())[c] : "f" + std::to_string(c));
    }
    if (with_labels) out << delimiter << "label";
    out << '\n';
    for (std::size_t i = 0; i < d.n(); ++i) {
        for (std::size_t c = 0; c < d.p(); ++c) {
            if (c) out << delimiter;
            out << detail::format_double(d.features()(i, c));
        }
        if (with_labels) out << delimiter << (*d.labels())[i];
        out << '\n';
    }
    if (!out)
        throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

/// Column-wise min-max rescaling onto [0,1]. A constant column maps to 0.5
/// for every row. Idempotent, since attained bounds map to exactly 0 and 1.
inline Dataset min_max_normalize(const Dataset& d) {
    Matrix out(d.n(), d.p());
    for (std::size_t c = 0; c < d.p(); ++c) {
        double lo = d.features()(0, c), hi = lo;
        for (std::size_t i = 1; i < d.n(); ++i) {
            lo = std::min(lo, d.features()(i, c));
            hi = std::max(hi, d.features()(i, c));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < d.n(); ++i)
            out(i, c) = range == 0.0 ? 0.5 : (d.features()(i, c) - lo) / range;
    }
    return Dataset(std::move(out), d.labels(), d.feature_names());
}

namespace detail {

/// Cluster centers with pairwise distance >= separation. For k <= p they
/// sit on a scaled orthogonal simplex (all pairwise distances equal);
/// larger k falls back to random directions rescaled to the minimum
/// separation. Consumes from `rng` only in the fallback branch.
inline Matrix blob_centers(std::size_t k, std::size_t p, double separation, Rng& rng) {
    Matrix centers(k, p, 0.0);
    if (k == 1) return centers;
    if (k <= p) {
        const double scale = separation * (1.0 + 1e-9) / std::numbers::sqrt2;
        for (std::size_t j = 0; j < k; ++j) centers(j, j) = scale;
        return centers;
    }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < p; ++c) centers(j, c) = rng.normal();
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            double s = 0.0;
            for (std::size_t c = 0; c < p; ++c) {
                const double diff = centers(a, c) - centers(b, c);
                s += diff * diff;
            }
            min_dist = std::min(min_dist, std::sqrt(s));
        }
    if (!(min_dist > 0.0))
        throw Error(ErrorKind::InvalidParameter, "degenerate center draw; k may be too large for p");
    const double scale = separation * (1.0 + 1e-9) / min_dist;
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t c = 0; c < p; ++c) centers(j, c) *= scale;
    return centers;
}

}  // namespace detail

/// Synthetic dataset of k isotropic Gaussian clusters whose centers are at
/// least `separation` apart; labels record the generating cluster.
/// Deterministic for a fixed seed.
inline Dataset make_blobs(std::size_t k, std::size_t n_per, std::size_t p, double separation,
                          double spread, std::uint64_t seed) {
    if (k < 1 || n_per < 1 || p < 1)
        throw Error(ErrorKind::InvalidParameter, "k, n_per and p must all be >= 1");
    if (!(separation > 0.0) || !std::isfinite(separation) || !(spread > 0.0) || !std::isfinite(spread))
        throw Error(ErrorKind::InvalidParameter, "separation and spread must be positive finite");

    Rng rng(seed);
    const Matrix centers = detail::blob_centers(k, p, separation, rng);

    Matrix features(k * n_per, p);
    std::vector<std::string> labels(k * n_per);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n_per; ++i) {
            const std::size_t row = j * n_per + i;
            for (std::size_t c = 0; c < p; ++c)
                features(row, c) = centers(j, c) + spread * rng.normal();
            labels[row] = std::to_string(j);
        }
    return Dataset(std::move(features), std::move(labels));
}

}  // namespace unca
