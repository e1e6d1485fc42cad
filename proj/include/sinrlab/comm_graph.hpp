#pragma once

#include <vector>

#include "sinrlab/sinr.hpp"

namespace sinrlab {

// Weak-links communication graph: an undirected edge wherever two stations
// are within range (d <= r, boundary inclusive).
struct CommGraph {
    int n = 0;
    std::vector<Label> labels;             // by station index
    std::vector<std::vector<int>> adj;     // by station index
    bool connected = false;
    int diameter = 0;                      // hop diameter, 0 for n <= 1
    int max_degree = 0;

    bool has_edge(int u, int v) const;
    // Hop distances from station index `src`, -1 for unreachable.
    std::vector<int> bfs_hops(int src) const;
    // Hop diameter of the subgraph induced by `members` (station indices);
    // returns -1 if that subgraph is disconnected.
    int induced_diameter(const std::vector<int>& members) const;
};

CommGraph build_comm_graph(const std::vector<Station>& stations, const SinrParams& params);

}  // namespace sinrlab
