#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "unca/ingest.hpp"
#include "unca/metrics.hpp"
#include "unca/model.hpp"
#include "unca/nkm.hpp"
#include "unca/refine.hpp"

namespace unca {

inline std::string model_to_json(const ClusterModel& model, const NkmConfig& cfg) {
    nlohmann::json doc;
    doc["centroids"] = nlohmann::json::array();
    for (std::size_t j = 0; j < model.k(); ++j) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < model.centroids().cols(); ++c)
            row.push_back(model.centroids()(j, c));
        doc["centroids"].push_back(std::move(row));
    }
    doc["labels"] = model.labels();
    doc["iterations_run"] = model.iterations_run();
    doc["converged"] = model.converged();
    doc["centroid_shift_trace"] = model.centroid_shift_trace();
    doc["config"] = {{"k", cfg.k},
                     {"init", to_string(cfg.init)},
                     {"seed", cfg.seed},
                     {"tolerance", cfg.tolerance},
                     {"max_iterations", cfg.max_iterations}};
    return doc.dump(2) + "\n";
}

inline std::string metrics_to_json(const MetricsReport& report) {
    nlohmann::json doc;
    doc["silhouette"] = report.silhouette;
    doc["davies_bouldin"] = report.davies_bouldin;
    doc["ari"] = report.ari ? nlohmann::json(*report.ari) : nlohmann::json(nullptr);
    doc["nmi"] = report.nmi ? nlohmann::json(*report.nmi) : nlohmann::json(nullptr);
    return doc.dump(2) + "\n";
}

inline std::string refinement_to_json(const RefinementReport& report, double lambda) {
    nlohmann::json doc;
    doc["lambda"] = lambda;
    doc["reassigned_count"] = report.reassigned_count;
    doc["suppressed_count"] = report.suppressed_count;
    doc["final_labels"] = report.final_labels;
    return doc.dump(2) + "\n";
}

/// Row-major CSV at 17 significant digits.
inline void matrix_to_csv(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << detail::format_double_17(m(i, j));
        }
        out << '\n';
    }
    if (!out)
        throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

inline void cut_to_csv(const CutMatrix& cut, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < cut.size(); ++i) {
        for (std::size_t j = 0; j < cut.size(); ++j) {
            if (j) out << ',';
            out << static_cast<int>(cut.at(i, j));
        }
        out << '\n';
    }
    if (!out)
        throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

inline void write_text_file(const std::string& content, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    out << content;
    if (!out)
        throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace unca
