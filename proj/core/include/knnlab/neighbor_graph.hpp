#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knnlab/point_process.hpp"

namespace knnlab {

enum class Rule { union_rule, mutual, directed };

std::string to_string(Rule rule);
Rule rule_from_string(const std::string& s);

struct NeighborGraph {
    std::size_t n = 0;
    int k = 0;
    Rule rule = Rule::union_rule;
    // Per node, the k nearest others, sorted by increasing distance, ties by
    // increasing index.
    std::vector<std::vector<std::uint32_t>> out_lists;
    // Undirected adjacency under the selection rule; empty in directed mode.
    std::vector<std::vector<std::uint32_t>> adjacency;
};

// Exact Euclidean k-NN out-lists. Uses a uniform-grid index with expanding
// ring search for larger inputs; falls back to the quadratic scan for n <= 64.
// Both paths produce identical lists (squared distances, index tie-break).
std::vector<std::vector<std::uint32_t>> knn_out_lists(const std::vector<Point>& pts, int k);

// Quadratic reference path, kept public as the oracle.
std::vector<std::vector<std::uint32_t>> knn_out_lists_bruteforce(const std::vector<Point>& pts,
                                                                 int k);

NeighborGraph build_graph(const PointSet& points, int k, Rule rule);
NeighborGraph build_graph(const std::vector<Point>& pts, int k, Rule rule);

// Single connected component? Disjoint-set implementation; the BFS variant
// below must agree on every graph.
bool is_connected(const NeighborGraph& g);
bool is_connected_bfs(const NeighborGraph& g);

// Component sizes in descending order; sums to n.
std::vector<std::size_t> components(const NeighborGraph& g);

}  // namespace knnlab
