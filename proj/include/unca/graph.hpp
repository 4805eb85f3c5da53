#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "unca/ingest.hpp"
#include "unca/model.hpp"
#include "unca/nkm.hpp"

namespace unca {

struct GraphEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 0.0;

    bool operator==(const GraphEdge&) const = default;
};

/// Complete graph over clusters: nodes are cluster indices, edge weights
/// are dissimilarities (1 - similarity).
struct ClusterGraph {
    std::size_t node_count = 0;
    SimilarityMatrix similarity;
    std::vector<GraphEdge> edges;
};

struct SpanningTree {
    std::vector<GraphEdge> edges;
    double total_weight = 0.0;
};

enum class GraphFormat { dot, json };

/// Similarity between clusters: the truth degree of the distance between
/// their centroids, 1/(1 + ||c_a - c_b||).
inline SimilarityMatrix cluster_similarity(const ClusterModel& model) {
    const std::size_t k = model.k();
    Matrix sim(k, k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
        sim(a, a) = 1.0;
        for (std::size_t b = a + 1; b < k; ++b) {
            const double s = truth_degree(euclidean_distance(model.centroids().row(a),
                                                             model.centroids().row(b)));
            sim(a, b) = s;
            sim(b, a) = s;
        }
    }
    return SimilarityMatrix(std::move(sim));
}

inline ClusterGraph build_cluster_graph(const ClusterModel& model) {
    SimilarityMatrix sim = cluster_similarity(model);
    const std::size_t k = sim.size();
    std::vector<GraphEdge> edges;
    edges.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            edges.push_back({i, j, 1.0 - sim(i, j)});
    return ClusterGraph{k, std::move(sim), std::move(edges)};
}

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        const std::size_t ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent_[rb] = ra;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Kruskal's algorithm. Edges are taken in ascending weight order with ties
/// broken by (i, j), so the tree is reproducible.
inline SpanningTree build_mst(const ClusterGraph& g) {
    std::vector<GraphEdge> sorted = g.edges;
    std::sort(sorted.begin(), sorted.end(), [](const GraphEdge& a, const GraphEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    detail::UnionFind uf(g.node_count);
    SpanningTree tree;
    for (const GraphEdge& e : sorted) {
        if (g.node_count > 0 && tree.edges.size() == g.node_count - 1) break;
        if (uf.unite(e.i, e.j)) {
            tree.edges.push_back(e);
            tree.total_weight += e.weight;
        }
    }
    return tree;
}

inline std::string graph_to_dot(const ClusterGraph& g, const SpanningTree& t) {
    std::set<std::pair<std::size_t, std::size_t>> mst_edges;
    for (const GraphEdge& e : t.edges) mst_edges.insert({e.i, e.j});
    std::string out = "graph clusters {\n";
    for (std::size_t i = 0; i < g.node_count; ++i)
        out += "  cluster_" + std::to_string(i) + ";\n";
    for (const GraphEdge& e : g.edges) {
        out += "  cluster_" + std::to_string(e.i) + " -- cluster_" + std::to_string(e.j) +
               " [weight=" + detail::format_double(e.weight);
        if (mst_edges.count({e.i, e.j})) out += ", mst=true, style=bold";
        out += "];\n";
    }
    out += "}\n";
    return out;
}

inline std::string graph_to_json(const ClusterGraph& g, const SpanningTree& t) {
    std::set<std::pair<std::size_t, std::size_t>> mst_edges;
    for (const GraphEdge& e : t.edges) mst_edges.insert({e.i, e.j});
    nlohmann::json doc;
    doc["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < g.node_count; ++i)
        doc["nodes"].push_back("cluster_" + std::to_string(i));
    doc["edges"] = nlohmann::json::array();
    for (const GraphEdge& e : g.edges)
        doc["edges"].push_back({{"i", e.i},
                                {"j", e.j},
                                {"weight", e.weight},
                                {"mst", mst_edges.count({e.i, e.j}) > 0}});
    doc["total_mst_weight"] = t.total_weight;
    return doc.dump(2) + "\n";
}

/// Writes the graph and its spanning tree to a file. DOT output is an
/// undirected Graphviz graph; MST edges carry mst=true and bold style.
/// Identical inputs produce byte-identical files.
inline void export_graph(const ClusterGraph& g, const SpanningTree& t, GraphFormat format,
                         const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    out << (format == GraphFormat::dot ? graph_to_dot(g, t) : graph_to_json(g, t));
    if (!out)
        throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

}  // namespace unca
