// Command-line front end: wires CSV ingestion, neutrosophic similarity,
// transitive closure, lambda-cutting, the clustering engine, the cluster
// graph/MST, refinement, defuzzification and validity metrics into four
// subcommands (cluster, sweep-lambda, metrics, export-matrices).

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unca/unca.hpp"

namespace fs = std::filesystem;

namespace {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("UNCA_LOG");
        if (env == nullptr) return 1;
        const std::string v(env);
        if (v == "error") return 0;
        if (v == "warn") return 1;
        if (v == "info") return 2;
        if (v == "debug") return 3;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[info] " << msg << '\n';
}

enum class DefuzzRule { max, weighted, cog };

struct RunConfig {
    std::string input;
    std::string label_column;  // empty = none; all digits = column index
    bool has_header = true;
    std::string delimiter = ",";
    bool normalize = true;
    std::size_t k = 0;
    std::string init = "kmeans_pp";
    std::uint64_t seed = 42;
    double lambda = 0.5;
    double tolerance = 1e-5;
    std::size_t max_iterations = 100;
    std::string defuzz = "max";
    std::string out = ".";
    std::vector<std::string> emit = {"model", "metrics", "graph", "report"};
    bool skip_closure = false;
    std::vector<double> lambdas;
};

const std::set<std::string> kEmitTokens = {"model", "metrics", "graph", "mst", "matrices", "report"};

unca::CsvSchema make_schema(const RunConfig& cfg) {
    unca::CsvSchema schema;
    schema.has_header = cfg.has_header;
    if (cfg.delimiter.size() != 1)
        throw unca::Error(unca::ErrorKind::InvalidParameter, "delimiter must be a single character");
    schema.delimiter = cfg.delimiter[0];
    if (!cfg.label_column.empty()) {
        const bool numeric = std::all_of(cfg.label_column.begin(), cfg.label_column.end(),
                                         [](unsigned char c) { return std::isdigit(c); });
        if (numeric)
            schema.label_column = static_cast<std::size_t>(std::stoull(cfg.label_column));
        else
            schema.label_column = cfg.label_column;
    }
    return schema;
}

unca::InitStrategy parse_init(const std::string& name) {
    if (name == "random") return unca::InitStrategy::random;
    if (name == "kmeans_pp") return unca::InitStrategy::kmeans_pp;
    if (name == "heuristic") return unca::InitStrategy::heuristic;
    throw unca::Error(unca::ErrorKind::InvalidParameter, "unknown init strategy '" + name + "'");
}

DefuzzRule parse_defuzz(const std::string& name) {
    if (name == "max") return DefuzzRule::max;
    if (name == "weighted") return DefuzzRule::weighted;
    if (name == "cog") return DefuzzRule::cog;
    throw unca::Error(unca::ErrorKind::InvalidParameter, "unknown defuzz rule '" + name + "'");
}

void validate_run_config(const RunConfig& cfg, bool need_k) {
    if (cfg.input.empty())
        throw unca::Error(unca::ErrorKind::InvalidParameter, "no input file given");
    if (need_k && cfg.k < 1)
        throw unca::Error(unca::ErrorKind::InvalidParameter, "k must be >= 1");
    if (!(cfg.lambda > 0.0) || cfg.lambda > 1.0)
        throw unca::Error(unca::ErrorKind::InvalidLambda, "lambda must lie in (0,1]");
    parse_init(cfg.init);
    parse_defuzz(cfg.defuzz);
    for (const auto& token : cfg.emit)
        if (!kEmitTokens.count(token))
            throw unca::Error(unca::ErrorKind::InvalidParameter, "unknown emit token '" + token + "'");
}

// Config file: flat JSON keys mirroring RunConfig. Values read here act as
// defaults; any flag given on the command line wins.
void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw unca::Error(unca::ErrorKind::FileNotFound, path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw unca::Error(unca::ErrorKind::ParseError, path + ": " + e.what());
    }
    auto get = [&](const char* key, auto& slot) {
        if (doc.contains(key)) slot = doc.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("input", cfg.input);
    if (doc.contains("label_column")) {
        const auto& v = doc.at("label_column");
        cfg.label_column = v.is_string() ? v.get<std::string>() : std::to_string(v.get<std::size_t>());
    }
    get("has_header", cfg.has_header);
    get("delimiter", cfg.delimiter);
    get("normalize", cfg.normalize);
    get("k", cfg.k);
    get("init", cfg.init);
    get("seed", cfg.seed);
    get("lambda", cfg.lambda);
    get("tolerance", cfg.tolerance);
    get("max_iterations", cfg.max_iterations);
    get("defuzz", cfg.defuzz);
    get("out", cfg.out);
    get("emit", cfg.emit);
    get("skip_closure", cfg.skip_closure);
    get("lambdas", cfg.lambdas);
}

// Files already written this run; removed again if the run fails so a
// failed invocation never leaves partial outputs behind.
class OutputTracker {
public:
    void record(const fs::path& p) { written_.push_back(p); }

    void discard_all() {
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        written_.clear();
    }

private:
    std::vector<fs::path> written_;
};

std::string format_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string reference_table() {
    std::string out = "reference, paper-reported (not asserted):\n";
    out += "  dataset                 silhouette  davies_bouldin  ari    nmi\n";
    for (const auto& row : unca::kReferenceScores) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-22s  %-10.2f  %-14.2f  %-5.2f  %-4.2f\n",
                      std::string(row.dataset).c_str(), row.silhouette, row.davies_bouldin,
                      row.ari, row.nmi);
        out += line;
    }
    return out;
}

struct PipelineResult {
    unca::Dataset data;
    std::optional<unca::ClosureResult> closure;
    std::optional<unca::CutMatrix> cut;
    std::optional<std::vector<std::size_t>> cut_blocks;
    std::optional<unca::SimilarityMatrix> similarity;
    unca::ClusterModel fitted;
    unca::ClusterModel refined;
    unca::RefinementReport refinement;
    std::vector<std::size_t> final_labels;
    unca::MetricsReport metrics;
};

std::size_t block_count(const std::vector<std::size_t>& blocks) {
    std::size_t k = 0;
    for (std::size_t b : blocks) k = std::max(k, b + 1);
    return k;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    const unca::CsvSchema schema = make_schema(cfg);
    unca::Dataset raw = unca::load_csv(cfg.input, schema);
    log_info("loaded " + cfg.input + ": n=" + std::to_string(raw.n()) +
             " p=" + std::to_string(raw.p()));
    unca::Dataset data = cfg.normalize ? unca::min_max_normalize(raw) : std::move(raw);

    std::optional<unca::SimilarityMatrix> similarity;
    std::optional<unca::ClosureResult> closure;
    std::optional<unca::CutMatrix> cut;
    std::optional<std::vector<std::size_t>> blocks;
    const bool wants_matrices =
        std::find(cfg.emit.begin(), cfg.emit.end(), "matrices") != cfg.emit.end();
    if (!cfg.skip_closure) {
        similarity = unca::build_similarity_matrix(unca::neutrosophify(data));
        closure = unca::transitive_closure(*similarity);
        cut = unca::lambda_cut(closure->matrix, cfg.lambda);
        blocks = unca::cut_partition(*cut);
        log_info("closure: squarings=" + std::to_string(closure->squarings) +
                 " blocks=" + std::to_string(block_count(*blocks)));
    } else if (wants_matrices) {
        similarity = unca::build_similarity_matrix(unca::neutrosophify(data));
    }

    unca::NkmConfig nkm_cfg{cfg.k, parse_init(cfg.init), cfg.seed, cfg.tolerance,
                            cfg.max_iterations};
    unca::ClusterModel fitted = unca::fit(data, nkm_cfg);
    log_info("fit: iterations=" + std::to_string(fitted.iterations_run()) +
             " converged=" + (fitted.converged() ? std::string("true") : std::string("false")));

    auto [refined, refinement] = unca::refine_assignments(data, fitted, cfg.lambda);

    std::vector<std::size_t> final_labels;
    switch (parse_defuzz(cfg.defuzz)) {
        case DefuzzRule::max:
            final_labels = refined.labels();
            break;
        case DefuzzRule::weighted:
            final_labels = unca::defuzz_weighted_average(refined.memberships(),
                                                         refined.centroids()).second;
            break;
        case DefuzzRule::cog:
            final_labels = unca::defuzz_center_of_gravity(refined.memberships(),
                                                          refined.centroids());
            break;
    }

    unca::MetricsReport metrics = unca::compute_metrics(data, final_labels, data.labels());
    return PipelineResult{std::move(data),    std::move(closure),  std::move(cut),
                          std::move(blocks),  std::move(similarity), std::move(fitted),
                          std::move(refined), std::move(refinement), std::move(final_labels),
                          metrics};
}

bool emits(const RunConfig& cfg, const std::string& token) {
    return std::find(cfg.emit.begin(), cfg.emit.end(), token) != cfg.emit.end();
}

// Record before writing so a write that dies halfway is still cleaned up.
void write_tracked(OutputTracker& tracker, const fs::path& path, const std::string& content) {
    tracker.record(path);
    unca::write_text_file(content, path);
}

int cmd_cluster(const RunConfig& cfg) {
    validate_run_config(cfg, true);
    const fs::path out_dir(cfg.out);
    fs::create_directories(out_dir);
    OutputTracker tracker;
    try {
        PipelineResult result = run_pipeline(cfg);
        const unca::NkmConfig nkm_cfg{cfg.k, parse_init(cfg.init), cfg.seed, cfg.tolerance,
                                      cfg.max_iterations};

        if (emits(cfg, "model"))
            write_tracked(tracker, out_dir / "model.json", unca::model_to_json(result.fitted, nkm_cfg));
        if (emits(cfg, "metrics"))
            write_tracked(tracker, out_dir / "metrics.json", unca::metrics_to_json(result.metrics));

        const unca::ClusterGraph graph = unca::build_cluster_graph(result.fitted);
        const unca::SpanningTree tree = unca::build_mst(graph);
        if (emits(cfg, "graph")) {
            write_tracked(tracker, out_dir / "graph.dot", unca::graph_to_dot(graph, tree));
            write_tracked(tracker, out_dir / "graph.json", unca::graph_to_json(graph, tree));
        }
        if (emits(cfg, "mst")) {
            nlohmann::json doc;
            doc["edges"] = nlohmann::json::array();
            for (const auto& e : tree.edges)
                doc["edges"].push_back({{"i", e.i}, {"j", e.j}, {"weight", e.weight}});
            doc["total_weight"] = tree.total_weight;
            write_tracked(tracker, out_dir / "mst.json", doc.dump(2) + "\n");
        }
        if (emits(cfg, "matrices")) {
            if (result.similarity) {
                tracker.record(out_dir / "similarity.csv");
                unca::matrix_to_csv(result.similarity->values(), out_dir / "similarity.csv");
            }
            if (result.closure) {
                tracker.record(out_dir / "closure.csv");
                unca::matrix_to_csv(result.closure->matrix.values(), out_dir / "closure.csv");
            }
            if (result.cut) {
                tracker.record(out_dir / "cut.csv");
                unca::cut_to_csv(*result.cut, out_dir / "cut.csv");
            }
        }
        if (emits(cfg, "report")) {
            write_tracked(tracker, out_dir / "refinement.json",
                          unca::refinement_to_json(result.refinement, cfg.lambda));

            std::string report;
            report += "unca cluster report\n";
            report += "===================\n";
            report += "input: " + cfg.input + " (n=" + std::to_string(result.data.n()) +
                      ", p=" + std::to_string(result.data.p()) + ")\n";
            report += "normalize: " + std::string(cfg.normalize ? "true" : "false") + "\n";
            report += "k=" + std::to_string(cfg.k) + " init=" + cfg.init +
                      " seed=" + std::to_string(cfg.seed) +
                      " lambda=" + unca::detail::format_double(cfg.lambda) +
                      " tolerance=" + unca::detail::format_double(cfg.tolerance) +
                      " max_iterations=" + std::to_string(cfg.max_iterations) +
                      " defuzz=" + cfg.defuzz + "\n\n";
            if (result.closure) {
                report += "closure: converged=" +
                          std::string(result.closure->converged ? "true" : "false") +
                          " squarings=" + std::to_string(result.closure->squarings) + "\n";
                report += "lambda-cut blocks: " + std::to_string(block_count(*result.cut_blocks)) +
                          "\n";
            } else {
                report += "closure: skipped\n";
            }
            report += "nkm: iterations=" + std::to_string(result.fitted.iterations_run()) +
                      " converged=" + (result.fitted.converged() ? std::string("true") : "false") +
                      "\n";
            report += "refinement: reassigned=" + std::to_string(result.refinement.reassigned_count) +
                      " suppressed=" + std::to_string(result.refinement.suppressed_count) + "\n\n";
            report += "metrics (computed on this run):\n";
            report += "  silhouette      = " + format_fixed(result.metrics.silhouette) + "\n";
            report += "  davies_bouldin  = " + format_fixed(result.metrics.davies_bouldin) + "\n";
            if (result.metrics.ari)
                report += "  ari             = " + format_fixed(*result.metrics.ari) + "\n";
            if (result.metrics.nmi)
                report += "  nmi             = " + format_fixed(*result.metrics.nmi) + "\n";
            report += "\n" + reference_table();
            write_tracked(tracker, out_dir / "report.txt", report);
        }
    } catch (const std::exception&) {
        tracker.discard_all();
        throw;
    }
    return 0;
}

int cmd_sweep_lambda(const RunConfig& cfg) {
    validate_run_config(cfg, true);
    if (cfg.lambdas.empty())
        throw unca::Error(unca::ErrorKind::InvalidParameter, "at least one lambda required");
    for (double l : cfg.lambdas)
        if (!(l > 0.0) || l > 1.0)
            throw unca::Error(unca::ErrorKind::InvalidLambda,
                              "lambda " + unca::detail::format_double(l) + " outside (0,1]");

    const unca::CsvSchema schema = make_schema(cfg);
    unca::Dataset raw = unca::load_csv(cfg.input, schema);
    unca::Dataset data = cfg.normalize ? unca::min_max_normalize(raw) : std::move(raw);
    const unca::SimilarityMatrix similarity = unca::build_similarity_matrix(unca::neutrosophify(data));
    const unca::ClosureResult closure = unca::transitive_closure(similarity);
    const unca::NkmConfig nkm_cfg{cfg.k, parse_init(cfg.init), cfg.seed, cfg.tolerance,
                                  cfg.max_iterations};
    const unca::ClusterModel fitted = unca::fit(data, nkm_cfg);

    std::string csv = "lambda,blocks,suppressed,ari_if_truth\n";
    for (double l : cfg.lambdas) {
        const unca::CutMatrix cut = unca::lambda_cut(closure.matrix, l);
        const auto blocks = unca::cut_partition(cut);
        const auto [refined, report] = unca::refine_assignments(data, fitted, l);
        csv += unca::detail::format_double(l) + "," + std::to_string(block_count(blocks)) + "," +
               std::to_string(report.suppressed_count) + ",";
        if (data.labels())
            csv += unca::detail::format_double(unca::adjusted_rand(refined.labels(), *data.labels()));
        csv += "\n";
    }
    const fs::path out_dir(cfg.out);
    fs::create_directories(out_dir);
    OutputTracker tracker;
    try {
        write_tracked(tracker, out_dir / "sweep.csv", csv);
    } catch (const std::exception&) {
        tracker.discard_all();
        throw;
    }
    std::cout << csv;
    return 0;
}

std::vector<std::string> read_label_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open())
        throw unca::Error(unca::ErrorKind::FileNotFound, path.string());
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) labels.push_back(line);
    }
    if (labels.empty())
        throw unca::Error(unca::ErrorKind::EmptyFile, path.string());
    return labels;
}

int cmd_metrics(const std::string& predicted_path, const std::string& truth_path,
                const std::string& data_path, const RunConfig& cfg) {
    const std::vector<std::string> predicted = read_label_file(predicted_path);
    const std::vector<std::string> truth = read_label_file(truth_path);
    if (predicted.size() != truth.size())
        throw unca::Error(unca::ErrorKind::LengthMismatch,
                          std::to_string(predicted.size()) + " predicted labels vs " +
                              std::to_string(truth.size()) + " truth labels");
    const unca::CsvSchema schema = make_schema(cfg);
    unca::Dataset raw = unca::load_csv(data_path, schema);
    unca::Dataset data = cfg.normalize ? unca::min_max_normalize(raw) : std::move(raw);
    if (data.n() != predicted.size())
        throw unca::Error(unca::ErrorKind::LengthMismatch,
                          std::to_string(data.n()) + " data rows vs " +
                              std::to_string(predicted.size()) + " labels");

    const auto encoded = unca::encode_labels(predicted);
    unca::MetricsReport report;
    report.silhouette = unca::silhouette(data, encoded);
    report.davies_bouldin = unca::davies_bouldin(data, encoded);
    report.ari = unca::adjusted_rand(predicted, truth);
    report.nmi = unca::nmi(predicted, truth);

    const fs::path out_dir(cfg.out);
    fs::create_directories(out_dir);
    OutputTracker tracker;
    try {
        write_tracked(tracker, out_dir / "metrics.json", unca::metrics_to_json(report));
    } catch (const std::exception&) {
        tracker.discard_all();
        throw;
    }

    std::cout << "computed:\n";
    std::cout << "  silhouette      = " << format_fixed(report.silhouette) << "\n";
    std::cout << "  davies_bouldin  = " << format_fixed(report.davies_bouldin) << "\n";
    std::cout << "  ari             = " << format_fixed(*report.ari) << "\n";
    std::cout << "  nmi             = " << format_fixed(*report.nmi) << "\n\n";
    std::cout << reference_table();
    return 0;
}

int cmd_export_matrices(const RunConfig& cfg) {
    validate_run_config(cfg, false);
    const unca::CsvSchema schema = make_schema(cfg);
    unca::Dataset raw = unca::load_csv(cfg.input, schema);
    unca::Dataset data = cfg.normalize ? unca::min_max_normalize(raw) : std::move(raw);
    const unca::SimilarityMatrix similarity = unca::build_similarity_matrix(unca::neutrosophify(data));
    const unca::ClosureResult closure = unca::transitive_closure(similarity);
    const unca::CutMatrix cut = unca::lambda_cut(closure.matrix, cfg.lambda);

    const fs::path out_dir(cfg.out);
    fs::create_directories(out_dir);
    OutputTracker tracker;
    try {
        tracker.record(out_dir / "similarity.csv");
        unca::matrix_to_csv(similarity.values(), out_dir / "similarity.csv");
        tracker.record(out_dir / "closure.csv");
        unca::matrix_to_csv(closure.matrix.values(), out_dir / "closure.csv");
        tracker.record(out_dir / "cut.csv");
        unca::cut_to_csv(cut, out_dir / "cut.csv");
    } catch (const std::exception&) {
        tracker.discard_all();
        throw;
    }
    return 0;
}

void add_schema_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--label-column", cfg.label_column,
                    "column holding class labels (name, or 0-based index if all digits)");
    sub->add_flag_callback("--no-header", [&cfg] { cfg.has_header = false; },
                           "input CSV has no header row");
    sub->add_option("--delimiter", cfg.delimiter, "field delimiter (single character)");
}

void add_pipeline_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--input", cfg.input, "input CSV file");
    add_schema_options(sub, cfg);
    sub->add_option("--k", cfg.k, "number of clusters");
    sub->add_option("--init", cfg.init, "centroid initialization: random|kmeans_pp|heuristic");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--lambda", cfg.lambda, "confidence level in (0,1]");
    sub->add_option("--tolerance", cfg.tolerance, "convergence tolerance on centroid shift");
    sub->add_option("--max-iterations", cfg.max_iterations, "iteration cap");
    sub->add_option("--defuzz", cfg.defuzz, "final assignment rule: max|weighted|cog");
    sub->add_flag_callback("--no-normalize", [&cfg] { cfg.normalize = false; },
                           "skip min-max normalization");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_flag("--skip-closure", cfg.skip_closure,
                  "skip the O(n^3 log n) similarity closure path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neutrosophic clustering pipeline"};
    app.require_subcommand(1);

    RunConfig cluster_cfg, sweep_cfg, export_cfg, metrics_cfg;
    std::string cluster_config_file, sweep_config_file, export_config_file;
    std::string predicted_path, truth_path, data_path;
    std::vector<double> sweep_lambdas;

    CLI::App* cluster = app.add_subcommand("cluster", "run the full clustering pipeline");
    cluster->add_option("--config", cluster_config_file, "JSON config file; flags override");
    add_pipeline_options(cluster, cluster_cfg);
    cluster->add_option("--emit", cluster_cfg.emit,
                        "outputs to write: model metrics graph mst matrices report")
        ->delimiter(',');

    CLI::App* sweep = app.add_subcommand("sweep-lambda", "evaluate a sequence of lambda cuts");
    sweep->add_option("--config", sweep_config_file, "JSON config file; flags override");
    add_pipeline_options(sweep, sweep_cfg);
    sweep->add_option("--lambdas", sweep_lambdas, "comma-separated lambda values")->delimiter(',');

    CLI::App* metrics = app.add_subcommand("metrics", "score predicted labels against truth");
    metrics->add_option("--predicted", predicted_path, "file with one predicted label per line")
        ->required();
    metrics->add_option("--truth", truth_path, "file with one truth label per line")->required();
    metrics->add_option("--data", data_path, "CSV with the clustered features")->required();
    add_schema_options(metrics, metrics_cfg);
    metrics->add_flag_callback("--no-normalize", [&metrics_cfg] { metrics_cfg.normalize = false; },
                               "skip min-max normalization");
    metrics->add_option("--out", metrics_cfg.out, "output directory");

    CLI::App* exporter = app.add_subcommand("export-matrices",
                                            "write similarity, closure and cut matrices as CSV");
    exporter->add_option("--config", export_config_file, "JSON config file; flags override");
    add_pipeline_options(exporter, export_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    // Re-apply precedence: defaults < config file < explicit flags. CLI11
    // already wrote flag values into the structs, so only unset options are
    // refreshed from the config file.
    auto overlay = [](CLI::App* sub, RunConfig& cfg, const std::string& config_file) {
        if (config_file.empty()) return;
        RunConfig from_file = cfg;
        apply_config_file(from_file, config_file);
        RunConfig merged = from_file;
        auto keep_flag = [&](const std::string& name, auto member) {
            if (sub->count(name) > 0) merged.*member = cfg.*member;
        };
        keep_flag("--input", &RunConfig::input);
        keep_flag("--label-column", &RunConfig::label_column);
        keep_flag("--delimiter", &RunConfig::delimiter);
        keep_flag("--k", &RunConfig::k);
        keep_flag("--init", &RunConfig::init);
        keep_flag("--seed", &RunConfig::seed);
        keep_flag("--lambda", &RunConfig::lambda);
        keep_flag("--tolerance", &RunConfig::tolerance);
        keep_flag("--max-iterations", &RunConfig::max_iterations);
        keep_flag("--defuzz", &RunConfig::defuzz);
        keep_flag("--out", &RunConfig::out);
        keep_flag("--emit", &RunConfig::emit);
        if (sub->count("--no-header") > 0) merged.has_header = cfg.has_header;
        if (sub->count("--no-normalize") > 0) merged.normalize = cfg.normalize;
        if (sub->count("--skip-closure") > 0) merged.skip_closure = cfg.skip_closure;
        cfg = merged;
    };

    try {
        if (cluster->parsed()) {
            overlay(cluster, cluster_cfg, cluster_config_file);
            return cmd_cluster(cluster_cfg);
        }
        if (sweep->parsed()) {
            overlay(sweep, sweep_cfg, sweep_config_file);
            if (sweep->count("--lambdas") > 0) sweep_cfg.lambdas = sweep_lambdas;
            return cmd_sweep_lambda(sweep_cfg);
        }
        if (metrics->parsed()) {
            return cmd_metrics(predicted_path, truth_path, data_path, metrics_cfg);
        }
        if (exporter->parsed()) {
            overlay(exporter, export_cfg, export_config_file);
            return cmd_export_matrices(export_cfg);
        }
    } catch (const unca::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
