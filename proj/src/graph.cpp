#include "poesim/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "poesim/rng.hpp"

namespace poesim {

DirectedGraph DirectedGraph::from_edges(int num_nodes, std::vector<std::pair<int, int>> edges) {
    if (num_nodes < 1) throw std::invalid_argument("graph: needs at least one node");
    std::set<std::pair<int, int>> seen;
    for (const auto& [from, to] : edges) {
        if (from < 0 || from >= num_nodes || to < 0 || to >= num_nodes) {
            throw std::invalid_argument("graph: edge (" + std::to_string(from + 1) + "," +
                                        std::to_string(to + 1) + ") out of range");
        }
        if (from == to) {
            throw std::invalid_argument("graph: self-loop at node " + std::to_string(from + 1) +
                                        " (agents always include themselves)");
        }
        if (!seen.insert({from, to}).second) {
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(from + 1) +
                                        "," + std::to_string(to + 1) + ")");
        }
    }
    DirectedGraph graph;
    graph.num_nodes = num_nodes;
    graph.edges = std::move(edges);
    graph.in_neighbors.resize(static_cast<std::size_t>(num_nodes));
    graph.out_neighbors.resize(static_cast<std::size_t>(num_nodes));
    for (const auto& [from, to] : graph.edges) {
        graph.out_neighbors[static_cast<std::size_t>(from)].push_back(to);
        graph.in_neighbors[static_cast<std::size_t>(to)].push_back(from);
    }
    for (auto& list : graph.in_neighbors) std::sort(list.begin(), list.end());
    for (auto& list : graph.out_neighbors) std::sort(list.begin(), list.end());
    return graph;
}

bool GraphMetrics::all_pairs_reachable() const {
    return std::find(dist.begin(), dist.end(), kUnreachable) == dist.end();
}

GraphMetrics all_pairs_distances(const DirectedGraph& graph) {
    const int n = graph.num_nodes;
    GraphMetrics metrics;
    metrics.num_nodes = n;
    metrics.dist.assign(static_cast<std::size_t>(n) * n, GraphMetrics::kUnreachable);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(n));
    for (int source = 0; source < n; ++source) {
        int* row = metrics.dist.data() + static_cast<std::size_t>(source) * n;
        row[source] = 0;
        queue.clear();
        queue.push_back(source);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int node = queue[head];
            for (int next : graph.out_neighbors[static_cast<std::size_t>(node)]) {
                if (row[next] == GraphMetrics::kUnreachable) {
                    row[next] = row[node] + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    metrics.diameter = 0;
    for (int d : metrics.dist) metrics.diameter = std::max(metrics.diameter, d);
    return metrics;
}

bool is_strongly_connected(const DirectedGraph& graph) {
    return all_pairs_distances(graph).all_pairs_reachable();
}

DirectedGraph make_ring(int n) {
    if (n < 1) throw std::invalid_argument("ring: needs at least one node");
    std::vector<std::pair<int, int>> edges;
    if (n >= 2) {
        edges.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    }
    return DirectedGraph::from_edges(n, std::move(edges));
}

DirectedGraph make_complete(int n) {
    if (n < 1) throw std::invalid_argument("complete: needs at least one node");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) edges.emplace_back(i, j);
        }
    }
    return DirectedGraph::from_edges(n, std::move(edges));
}

GeometricGraph generate_geometric(int n, double radius, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("geometric: needs at least one node");
    if (!(radius > 0.0) || radius > 1.4142135623730951) {
        throw std::invalid_argument("geometric: radius must lie in (0, sqrt(2)]");
    }
    GeometricGraph result;
    result.attempt_seed = seed;
    result.positions.resize(static_cast<std::size_t>(n));
    std::mt19937_64 gen(seed);
    for (auto& position : result.positions) {
        position[0] = uniform_double(gen);
        position[1] = uniform_double(gen);
    }
    std::vector<std::pair<int, int>> edges;
    const double radius_sq = radius * radius;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dx = result.positions[i][0] - result.positions[j][0];
            const double dy = result.positions[i][1] - result.positions[j][1];
            if (dx * dx + dy * dy <= radius_sq) {  // "at most radius", inclusive
                edges.emplace_back(i, j);
                edges.emplace_back(j, i);
            }
        }
    }
    result.graph = DirectedGraph::from_edges(n, std::move(edges));
    return result;
}

GeometricGraph generate_geometric_connected(int n, double radius, std::uint64_t seed,
                                            int max_attempts) {
    if (max_attempts < 1) throw std::invalid_argument("geometric: max_attempts must be >= 1");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        GeometricGraph candidate =
            generate_geometric(n, radius, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        if (is_strongly_connected(candidate.graph)) {
            candidate.attempts = attempt + 1;
            return candidate;
        }
    }
    throw std::runtime_error("geometric: no strongly connected draw within " +
                             std::to_string(max_attempts) + " attempts (n=" + std::to_string(n) +
                             ", radius=" + std::to_string(radius) + ")");
}

}  // namespace poesim
