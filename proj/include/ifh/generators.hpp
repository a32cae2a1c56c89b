#pragma once

#include <memory>
#include <vector>

#include "ifh/graph.hpp"
#include "ifh/record.hpp"
#include "ifh/removal.hpp"

namespace ifh {

struct StepContext {
    int gen_step = 1;  // 1-based generation step (first insertion = 1)
};

// Decides how many nodes to insert at a step. Immutable after fitting.
class InsertionDecider {
public:
    virtual ~InsertionDecider() = default;
    virtual Pmf distribution(const Graph& current, const StepContext& ctx) const = 0;
};

// Content of a newly inserted block: labels of the r new nodes, edges among
// them, and interconnect edges to the existing graph. inter_ab is oriented
// existing -> new; inter_ba is used for directed graphs only.
struct BlockContent {
    std::vector<int> node_labels;
    std::vector<Edge> internal_edges;
    std::vector<Edge> inter_ab;
    std::vector<Edge> inter_ba;
};

// Appends a block to the current graph, existing nodes first.
Graph merge_block(const Graph& current, const BlockContent& block, bool undirected);

class Filler {
public:
    virtual ~Filler() = default;
    virtual BlockContent fill(const Graph& current, int r, Rng& rng) const = 0;
};

// One-shot node-count sampler: the empirical node-count histogram of the
// dataset at the first step, point mass at 0 afterwards.
std::unique_ptr<InsertionDecider> make_empirical_n_sampler(const std::vector<Graph>& dataset);

// Count table n_t -> empirical distribution over r_t observed in records;
// unseen n_t falls back to the categorical posterior averaged over the
// training graphs' node counts.
std::unique_ptr<InsertionDecider> make_categorical_insertion_table(
    const std::vector<RemovalRecord>& records, const CategoricalProcess& process);

// Predicts the removed-so-far count as the empirical mean given (t, n_t) and
// returns the binomial posterior at the rounded prediction. The generation
// step is mapped to t = T - gen_step + 1 on the fixed-length schedule.
std::unique_ptr<InsertionDecider> make_binomial_insertion_regressor(
    const std::vector<RemovalRecord>& records, const BinomialSchedule& schedule);

// Node labels from dataset marginals; every candidate edge slot drawn
// independently with the dataset edge density of the existing node's degree
// bucket (interconnects) or the overall density (block-internal edges).
std::unique_ptr<Filler> make_empirical_marginal_filler(const std::vector<Graph>& dataset);

// Independent Bernoulli(p_edge) on every candidate edge slot.
std::unique_ptr<Filler> make_erdos_renyi_filler(double p_edge, Pmf node_label_pmf,
                                                Pmf edge_label_pmf);

}  // namespace ifh
