#include "gfrisk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gfrisk {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges,
             std::optional<std::vector<int>> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ <= 0) throw std::invalid_argument("graph must have at least one node");
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("self-loop in edge set");
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    if (labels_ && static_cast<int>(labels_->size()) != n_)
        throw std::invalid_argument("label count does not match node count");
}

const std::vector<int>& Graph::labels() const {
    if (!labels_) throw std::logic_error("graph has no labels");
    return *labels_;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (const auto& [u, v] : edges_) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

double Graph::mean_degree() const {
    return 2.0 * static_cast<double>(edges_.size()) / n_;
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

Graph Graph::with_labels(std::vector<int> labels) const {
    return Graph(n_, edges_, std::move(labels));
}

Graph load_edge_list(const std::string& path, std::optional<int> n_hint) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);

    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed edge line");
        std::string rest;
        if (ls >> rest)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": trailing tokens on edge line");
        if (u < 0 || v < 0)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": negative node id");
        if (u == v)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": self-loop (" + std::to_string(u) + ")");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    int n = max_id + 1;
    if (n_hint) n = std::max(n, *n_hint);
    if (n <= 0) throw std::runtime_error("edge list is empty: " + path);
    return Graph(n, std::move(edges));
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_labels(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file: " + path);

    std::vector<int> labels(g.num_nodes(), -1);
    std::vector<bool> seen(g.num_nodes(), false);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long id, lab;
        if (!(ls >> id >> lab))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed label line");
        if (id < 0 || id >= g.num_nodes())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": unknown node id " + std::to_string(id));
        labels[id] = static_cast<int>(lab);
        seen[id] = true;
    }
    for (int i = 0; i < g.num_nodes(); ++i)
        if (!seen[i])
            throw std::runtime_error("node " + std::to_string(i) +
                                     " unlabeled in " + path);
    return g.with_labels(std::move(labels));
}

Graph cycle_block_graph(int n_blocks, int block_size) {
    if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
    if (block_size < 3) throw std::invalid_argument("block_size must be >= 3");

    std::vector<std::pair<int, int>> edges;
    std::vector<int> labels;
    edges.reserve(static_cast<std::size_t>(n_blocks) * block_size);
    labels.reserve(static_cast<std::size_t>(n_blocks) * block_size);
    for (int k = 0; k < n_blocks; ++k) {
        int base = k * block_size;
        for (int i = 0; i < block_size; ++i) {
            edges.emplace_back(base + i, base + (i + 1) % block_size);
            labels.push_back(k);
        }
    }
    return Graph(n_blocks * block_size, std::move(edges), std::move(labels));
}

Graph heterophilic_perturbation(const Graph& g, int n_new_edges,
                                std::uint64_t rng_seed) {
    if (!g.has_labels())
        throw std::invalid_argument("heterophilic_perturbation needs labels");
    if (n_new_edges < 0) throw std::invalid_argument("n_new_edges must be >= 0");
    if (n_new_edges == 0) return g;

    const auto& labels = g.labels();
    const int n = g.num_nodes();
    const int n_classes = 1 + *std::max_element(labels.begin(), labels.end());
    if (n_classes < 2)
        throw std::invalid_argument("need at least two classes to add heterophilic edges");

    // Average neighbourhood label distribution per class, own class removed.
    std::vector<std::vector<double>> class_dist(n_classes,
                                                std::vector<double>(n_classes, 0.0));
    for (const auto& [u, v] : g.edges()) {
        class_dist[labels[u]][labels[v]] += 1.0;
        class_dist[labels[v]][labels[u]] += 1.0;
    }
    for (int y = 0; y < n_classes; ++y) {
        class_dist[y][y] = 0.0;
        double total = 0.0;
        for (double w : class_dist[y]) total += w;
        if (total > 0.0) {
            for (double& w : class_dist[y]) w /= total;
        } else {
            for (int c = 0; c < n_classes; ++c)
                class_dist[y][c] = (c == y) ? 0.0 : 1.0 / (n_classes - 1);
        }
    }

    std::vector<std::vector<int>> nodes_by_class(n_classes);
    for (int i = 0; i < n; ++i) nodes_by_class[labels[i]].push_back(i);

    std::set<std::pair<int, int>> edge_set(g.edges().begin(), g.edges().end());
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<int> node_pick(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const long long max_attempts = static_cast<long long>(n) * n;
    std::vector<std::pair<int, int>> new_edges;
    for (int added = 0; added < n_new_edges; ++added) {
        bool placed = false;
        for (long long attempt = 0; attempt < max_attempts && !placed; ++attempt) {
            int i = node_pick(rng);
            int yi = labels[i];
            double r = unit(rng);
            int target_class = -1;
            double acc = 0.0;
            for (int c = 0; c < n_classes; ++c) {
                acc += class_dist[yi][c];
                if (r <= acc) { target_class = c; break; }
            }
            if (target_class < 0 || target_class == yi) continue;
            const auto& pool = nodes_by_class[target_class];
            if (pool.empty()) continue;
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            int j = pool[pick(rng)];
            auto e = std::minmax(i, j);
            std::pair<int, int> edge(e.first, e.second);
            if (edge_set.count(edge)) continue;
            edge_set.insert(edge);
            new_edges.push_back(edge);
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("could not place heterophilic edge: "
                                     "candidate pairs exhausted");
    }

    std::vector<std::pair<int, int>> all_edges(edge_set.begin(), edge_set.end());
    return Graph(n, std::move(all_edges), labels);
}

double homophily_ratio(const Graph& g) {
    if (!g.has_labels()) throw std::invalid_argument("homophily_ratio needs labels");
    if (g.num_edges() == 0) throw std::invalid_argument("homophily_ratio needs edges");
    const auto& labels = g.labels();
    int same = 0;
    for (const auto& [u, v] : g.edges())
        if (labels[u] == labels[v]) ++same;
    return static_cast<double>(same) / g.num_edges();
}

}  // namespace gfrisk
