#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gfrisk {

/// Undirected simple graph with dense 0-based node ids and optional
/// per-node integer class labels.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edges,
          std::optional<std::vector<int>> labels = std::nullopt);

    int num_nodes() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// Edges stored canonically as (u, v) with u < v, sorted, no duplicates.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_labels() const { return labels_.has_value(); }
    const std::vector<int>& labels() const;

    std::vector<int> degrees() const;
    double mean_degree() const;

    bool has_edge(int u, int v) const;

    Graph with_labels(std::vector<int> labels) const;

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::optional<std::vector<int>> labels_;
};

/// Parses a whitespace-separated edge list ("u v" per line, '#' comments).
/// Node count is max id + 1 unless n_hint is larger. Self-loops are rejected
/// with the offending line number; reversed duplicates are merged.
Graph load_edge_list(const std::string& path,
                     std::optional<int> n_hint = std::nullopt);

/// Writes the canonical edge list back out ("u v" per line, u < v).
void save_edge_list(const Graph& g, const std::string& path);

/// Parses "node_id label_id" lines and attaches labels to g. Every node
/// must be covered exactly; unknown ids or gaps are errors.
Graph load_labels(const std::string& path, const Graph& g);

/// Disjoint union of n_blocks identical simple cycles of block_size nodes.
/// Block k occupies ids [k*block_size, (k+1)*block_size) and gets label k.
Graph cycle_block_graph(int n_blocks, int block_size);

/// Adds n_new_edges cross-class edges. For each new edge the source node is
/// drawn uniformly; the target class is drawn from the average neighbour
/// label distribution of the source's class (own class removed, renormalized,
/// uniform fallback when empty); the target node is uniform within that class
/// among non-neighbours of the source. Deterministic per seed.
Graph heterophilic_perturbation(const Graph& g, int n_new_edges,
                                std::uint64_t rng_seed);

/// Fraction of edges whose endpoints share a label. Requires >= 1 edge.
double homophily_ratio(const Graph& g);

}  // namespace gfrisk
