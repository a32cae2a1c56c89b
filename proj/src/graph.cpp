#include "ifh/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ifh {

Graph::Graph(std::vector<int> node_labels, std::vector<Edge> edges, bool undirected)
    : node_labels_(std::move(node_labels)), edges_(std::move(edges)), undirected_(undirected) {
    const int nn = n();
    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= nn || e.v < 0 || e.v >= nn)
            throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) +
                                        "," + std::to_string(e.v) + ") with n=" + std::to_string(nn));
        if (e.u == e.v) throw std::invalid_argument("self-loops are not allowed");
        if (undirected_ && e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
            throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                        std::to_string(edges_[i].v) + ")");
    }
}

std::vector<std::vector<std::pair<int, int>>> Graph::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n());
    for (const auto& e : edges_) {
        adj[e.u].emplace_back(e.v, e.label);
        if (undirected_) adj[e.v].emplace_back(e.u, e.label);
    }
    return adj;
}

std::vector<std::vector<std::pair<int, int>>> Graph::symmetric_adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(n());
    for (const auto& e : edges_) {
        adj[e.u].emplace_back(e.v, e.label);
        adj[e.v].emplace_back(e.u, e.label);
    }
    return adj;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n(), 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

namespace {

// Validated ascending copy of a kept-index set.
std::vector<int> checked_sorted(const Graph& g, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= g.n())
            throw std::invalid_argument("keep index out of range: " + std::to_string(keep[i]));
        if (i > 0 && keep[i] == keep[i - 1])
            throw std::invalid_argument("duplicate keep index: " + std::to_string(keep[i]));
    }
    return keep;
}

}  // namespace

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    auto ids = checked_sorted(g, keep);
    std::vector<int> remap(g.n(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = static_cast<int>(i);

    std::vector<int> labels(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) labels[i] = g.node_labels()[ids[i]];

    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        if (remap[e.u] >= 0 && remap[e.v] >= 0)
            edges.push_back({remap[e.u], remap[e.v], e.label});
    }
    return Graph(std::move(labels), std::move(edges), g.undirected());
}

Split split(const Graph& g, const std::vector<int>& keep) {
    auto kept_ids = checked_sorted(g, keep);
    std::vector<int> in_kept(g.n(), 0);
    for (int id : kept_ids) in_kept[id] = 1;
    std::vector<int> block_ids;
    for (int i = 0; i < g.n(); ++i)
        if (!in_kept[i]) block_ids.push_back(i);

    std::vector<int> kept_idx(g.n(), -1), block_idx(g.n(), -1);
    for (std::size_t i = 0; i < kept_ids.size(); ++i) kept_idx[kept_ids[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < block_ids.size(); ++i) block_idx[block_ids[i]] = static_cast<int>(i);

    Split s;
    s.kept = induced_subgraph(g, kept_ids);
    s.block = induced_subgraph(g, block_ids);
    s.kept_ids = std::move(kept_ids);
    s.block_ids = std::move(block_ids);

    for (const auto& e : g.edges()) {
        bool uk = in_kept[e.u], vk = in_kept[e.v];
        if (uk == vk) continue;
        if (uk)
            s.inter_ab.push_back({kept_idx[e.u], block_idx[e.v], e.label});
        else if (g.undirected())
            s.inter_ab.push_back({kept_idx[e.v], block_idx[e.u], e.label});
        else
            s.inter_ba.push_back({block_idx[e.u], kept_idx[e.v], e.label});
    }
    return s;
}

Graph merge(const Split& s) {
    const int ka = s.kept.n();
    const int kb = s.block.n();
    for (const auto& e : s.inter_ab)
        if (e.u < 0 || e.u >= ka || e.v < 0 || e.v >= kb)
            throw std::invalid_argument("inter_ab endpoint out of range");
    for (const auto& e : s.inter_ba)
        if (e.u < 0 || e.u >= kb || e.v < 0 || e.v >= ka)
            throw std::invalid_argument("inter_ba endpoint out of range");

    std::vector<int> labels = s.kept.node_labels();
    labels.insert(labels.end(), s.block.node_labels().begin(), s.block.node_labels().end());

    std::vector<Edge> edges = s.kept.edges();
    for (const auto& e : s.block.edges()) edges.push_back({e.u + ka, e.v + ka, e.label});
    for (const auto& e : s.inter_ab) edges.push_back({e.u, e.v + ka, e.label});
    for (const auto& e : s.inter_ba) edges.push_back({e.u + ka, e.v, e.label});

    bool undirected = s.kept.undirected();
    if (kb > 0 && ka == 0) undirected = s.block.undirected();
    return Graph(std::move(labels), std::move(edges), undirected);
}

Graph relabel(const Graph& g, const Permutation& order) {
    if (static_cast<int>(order.size()) != g.n())
        throw std::invalid_argument("permutation size mismatch");
    std::vector<int> inv(g.n(), -1);
    for (int i = 0; i < g.n(); ++i) {
        if (order[i] < 0 || order[i] >= g.n() || inv[order[i]] != -1)
            throw std::invalid_argument("not a permutation");
        inv[order[i]] = i;
    }
    std::vector<int> labels(g.n());
    for (int i = 0; i < g.n(); ++i) labels[i] = g.node_labels()[order[i]];
    std::vector<Edge> edges;
    edges.reserve(g.m());
    for (const auto& e : g.edges()) edges.push_back({inv[e.u], inv[e.v], e.label});
    return Graph(std::move(labels), std::move(edges), g.undirected());
}

Permutation bfs_ordering(const Graph& g, Rng& rng) {
    auto adj = g.symmetric_adjacency();
    std::vector<char> visited(g.n(), 0);
    Permutation order;
    order.reserve(g.n());

    std::vector<int> candidates(g.n());
    std::iota(candidates.begin(), candidates.end(), 0);
    shuffle_vec(candidates, rng);

    std::deque<int> queue;
    for (int root : candidates) {
        if (visited[root]) continue;
        visited[root] = 1;
        queue.push_back(root);
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            order.push_back(u);
            std::vector<int> frontier;
            for (auto [v, lbl] : adj[u]) {
                (void)lbl;
                if (!visited[v]) {
                    visited[v] = 1;
                    frontier.push_back(v);
                }
            }
            shuffle_vec(frontier, rng);
            for (int v : frontier) queue.push_back(v);
        }
    }
    return order;
}

Permutation random_ordering(const Graph& g, Rng& rng) {
    Permutation order(g.n());
    std::iota(order.begin(), order.end(), 0);
    shuffle_vec(order, rng);
    return order;
}

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

constexpr std::uint64_t kEmptyGraphHash = 0x1f1e33c5d6a8b790ULL;

}  // namespace

std::uint64_t canonical_hash(const Graph& g) {
    const int n = g.n();
    if (n == 0) return kEmptyGraphHash;

    // (neighbor, edge label, direction tag); tag distinguishes in/out arcs
    // for directed graphs.
    std::vector<std::vector<std::array<int, 3>>> nb(n);
    for (const auto& e : g.edges()) {
        if (g.undirected()) {
            nb[e.u].push_back({e.v, e.label, 0});
            nb[e.v].push_back({e.u, e.label, 0});
        } else {
            nb[e.u].push_back({e.v, e.label, 1});
            nb[e.v].push_back({e.u, e.label, 2});
        }
    }

    std::vector<std::uint64_t> color(n), next(n);
    for (int i = 0; i < n; ++i) color[i] = mix64(static_cast<std::uint64_t>(g.node_labels()[i]) + 0x51ULL);

    std::vector<std::uint64_t> sigs;
    for (int it = 0; it < n; ++it) {
        for (int i = 0; i < n; ++i) {
            sigs.clear();
            for (const auto& [j, lbl, tag] : nb[i])
                sigs.push_back(mix64(color[j] ^ mix64((std::uint64_t(lbl) << 2) | std::uint64_t(tag))));
            std::sort(sigs.begin(), sigs.end());
            std::uint64_t h = color[i];
            for (auto s : sigs) h = hash_combine(h, s);
            next[i] = mix64(h);
        }
        color.swap(next);
    }

    std::sort(color.begin(), color.end());
    std::uint64_t h = kEmptyGraphHash;
    h = hash_combine(h, static_cast<std::uint64_t>(n));
    h = hash_combine(h, static_cast<std::uint64_t>(g.m()));
    h = hash_combine(h, g.undirected() ? 1 : 2);
    for (auto c : color) h = hash_combine(h, c);
    return h;
}

}  // namespace ifh
