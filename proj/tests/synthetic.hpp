// Seeded synthetic graph fixtures shared by the test suites.
#pragma once

#include <vector>

#include "ifh/graph.hpp"

namespace synth {

// Labeled Erdos-Renyi graph on n nodes with edge probability p.
inline ifh::Graph random_graph(int n, double p, ifh::Rng& rng, int node_labels = 1,
                               int edge_labels = 1) {
    std::vector<int> labels(n);
    for (int& l : labels)
        l = node_labels > 1 ? static_cast<int>(ifh::uniform_below(rng, node_labels)) : 0;
    std::vector<ifh::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (ifh::uniform01(rng) < p)
                edges.push_back(
                    {u, v,
                     edge_labels > 1 ? static_cast<int>(ifh::uniform_below(rng, edge_labels)) : 0});
    return ifh::Graph(std::move(labels), std::move(edges), true);
}

inline std::vector<ifh::Graph> random_set(int count, int n_min, int n_max, double p,
                                          std::uint64_t seed) {
    ifh::Rng rng(seed);
    std::vector<ifh::Graph> set;
    for (int i = 0; i < count; ++i) {
        int n = n_min + static_cast<int>(ifh::uniform_below(rng, n_max - n_min + 1));
        set.push_back(random_graph(n, p, rng));
    }
    return set;
}

inline ifh::Graph path_graph(int n) {
    std::vector<ifh::Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 0});
    return ifh::Graph(std::vector<int>(n, 0), std::move(edges), true);
}

inline ifh::Graph cycle_graph(int n) {
    std::vector<ifh::Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 0});
    return ifh::Graph(std::vector<int>(n, 0), std::move(edges), true);
}

inline ifh::Graph star_graph(int leaves) {
    std::vector<ifh::Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 0});
    return ifh::Graph(std::vector<int>(leaves + 1, 0), std::move(edges), true);
}

inline ifh::Graph complete_graph(int n) {
    std::vector<ifh::Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 0});
    return ifh::Graph(std::vector<int>(n, 0), std::move(edges), true);
}

}  // namespace synth
