#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ifh/graph.hpp"
#include "ifh/record.hpp"

namespace ifh {

// Ground-truth halting labels for a removal sequence of length T: label 1 at
// t = 1 and 0 elsewhere.
std::vector<int> halting_labels(int total_steps);

// Two-state absorbing chain; lambda(t) is the per-step halting probability.
struct HaltingChain {
    std::function<double(int)> lambda;
};

// First step with a positive draw, or max_steps if none occurs.
int simulate_halt(const HaltingChain& chain, Rng& rng, int max_steps);

// Halting decider used during sampling. Deciders are immutable after
// construction and may ignore the step index.
class Halter {
public:
    virtual ~Halter() = default;
    virtual double halt_probability(const Graph& g, int t) const = 0;
};

// Halts iff the current graph has at least target_n nodes.
std::unique_ptr<Halter> make_oracle_halter(int target_n);
std::unique_ptr<Halter> make_fixed_lambda_halter(double lambda);

// Count-based decider: halting probability at node-count n is the empirical
// fraction of training records with that node count labeled halt = 1. Unseen
// counts fall back to the empirical P(halt | n' >= n).
std::unique_ptr<Halter> make_empirical_halter(const std::vector<RemovalRecord>& records);

}  // namespace ifh
