#pragma once

#include <vector>

#include "ifh/graph.hpp"

namespace ifh {

// One step of a forward removal sequence, self-contained: the kept graph is
// serialized inline and the block content is everything needed to merge back
// to the step-(t-1) graph. h_t = 1 iff t = 1 (halt exactly after the full
// graph is restored, in generation direction).
struct RemovalRecord {
    long graph_id = 0;
    int t = 0;             // removal step, 1-based
    int total_steps = 0;   // T
    int n_t = 0;           // node count after removal
    int r_t = 0;           // nodes removed at this step
    int h_t = 0;           // halting label
    Graph kept;
    std::vector<int> block_labels;
    std::vector<Edge> block_edges;  // indices within the block
    std::vector<Edge> inter_ab;     // (kept index, block index, label)
    std::vector<Edge> inter_ba;     // (block index, kept index, label)
    Permutation ordering;           // node ordering of the source graph

    int n_prev() const { return n_t + r_t; }
};

}  // namespace ifh
