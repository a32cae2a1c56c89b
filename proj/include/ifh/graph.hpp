#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ifh {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the raw 64-bit stream. We avoid the std
// distributions so that output is identical across standard library
// implementations.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound), bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    // Modulo bias is < 2^-50 for the bounds used here.
    return rng() % bound;
}

template <typename T>
void shuffle_vec(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_below(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

struct Edge {
    int u = 0;
    int v = 0;
    int label = 0;
    auto operator<=>(const Edge&) const = default;
};

// Labeled sparse graph. Edges are kept sorted; undirected graphs store each
// edge once with u <= v and interpret it symmetrically. Self-loops and
// duplicate (u, v) pairs are rejected. Instances are immutable values after
// construction and safe to share across threads.
class Graph {
public:
    Graph() = default;
    Graph(std::vector<int> node_labels, std::vector<Edge> edges, bool undirected);

    static Graph empty(bool undirected = true) { return Graph({}, {}, undirected); }

    int n() const { return static_cast<int>(node_labels_.size()); }
    int m() const { return static_cast<int>(edges_.size()); }
    bool undirected() const { return undirected_; }
    const std::vector<int>& node_labels() const { return node_labels_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Per-node (neighbor, edge label) lists. For undirected graphs each edge
    // appears in both endpoint lists; for directed graphs only out-edges.
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
    // Undirected view of the adjacency regardless of directedness.
    std::vector<std::vector<std::pair<int, int>>> symmetric_adjacency() const;

    std::vector<int> degrees() const;

    bool operator==(const Graph&) const = default;

private:
    std::vector<int> node_labels_;
    std::vector<Edge> edges_;
    bool undirected_ = true;
};

// Split of a graph by a kept-node set: kept part, block part, and the
// interconnect edges between them. For undirected sources every cross edge is
// stored once in inter_ab (oriented kept -> block) and inter_ba stays empty;
// the reverse direction is implied by symmetry.
struct Split {
    Graph kept;
    Graph block;
    std::vector<Edge> inter_ab;  // (kept index, block index, label)
    std::vector<Edge> inter_ba;  // (block index, kept index, label), directed only
    std::vector<int> kept_ids;   // original indices, ascending
    std::vector<int> block_ids;  // original indices, ascending
};

using Permutation = std::vector<int>;

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);
Split split(const Graph& g, const std::vector<int>& keep);
Graph merge(const Split& s);

// Node i of the result is node order[i] of g.
Graph relabel(const Graph& g, const Permutation& order);

Permutation bfs_ordering(const Graph& g, Rng& rng);
Permutation random_ordering(const Graph& g, Rng& rng);

// 1-WL iterative label-refinement hash, n refinement rounds. Invariant under
// node permutation. Non-isomorphic graphs may collide; uniqueness counts that
// rely on it are conservative.
std::uint64_t canonical_hash(const Graph& g);

}  // namespace ifh
