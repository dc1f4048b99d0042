#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

// Directed agent topologies: validated construction, named generators, the
// geometric random generator, BFS shortest-path distances, diameter, and
// strong-connectivity checks.

namespace poesim {

struct DirectedGraph {
    int num_nodes = 0;
    // Ordered pairs (i, j): i transmits to j. Deduplicated, no self-loops.
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> in_neighbors;   // per node, sorted
    std::vector<std::vector<int>> out_neighbors;  // per node, sorted

    // Validates indices, rejects self-loops and duplicate edges, builds the
    // adjacency lists. Throws std::invalid_argument on violation.
    static DirectedGraph from_edges(int num_nodes, std::vector<std::pair<int, int>> edges);

    int out_degree(int node) const { return static_cast<int>(out_neighbors[node].size()); }
};

// Exact unweighted shortest-path hop counts. Unreachable pairs carry the
// explicit kUnreachable marker rather than a large sentinel value.
struct GraphMetrics {
    static constexpr int kUnreachable = -1;

    int num_nodes = 0;
    std::vector<int> dist;  // row-major n*n
    int diameter = 0;       // max over finite entries (0 for n = 1)

    int distance(int from, int to) const { return dist[static_cast<std::size_t>(from) * num_nodes + to]; }
    bool reachable(int from, int to) const { return distance(from, to) != kUnreachable; }
    bool all_pairs_reachable() const;
};

GraphMetrics all_pairs_distances(const DirectedGraph& graph);
bool is_strongly_connected(const DirectedGraph& graph);

// Deterministic test topologies.
DirectedGraph make_ring(int n);      // directed cycle 0 -> 1 -> ... -> 0
DirectedGraph make_complete(int n);  // all ordered pairs

struct GeometricGraph {
    DirectedGraph graph;
    std::vector<std::array<double, 2>> positions;  // unit-square coordinates
    std::uint64_t attempt_seed = 0;                // sub-seed of the accepted draw
    int attempts = 1;                              // draws consumed (connected variant)
};

// One draw: n points uniform in the unit square; the bidirected edge pair
// (i,j),(j,i) exists iff the Euclidean distance is at most `radius`.
// Connectivity is the caller's concern.
GeometricGraph generate_geometric(int n, double radius, std::uint64_t seed);

// Retries with derived sub-seeds until strongly connected; throws
// std::runtime_error once max_attempts draws are exhausted.
GeometricGraph generate_geometric_connected(int n, double radius, std::uint64_t seed,
                                            int max_attempts = 100);

}  // namespace poesim
