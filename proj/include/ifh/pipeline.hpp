#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ifh/generators.hpp"
#include "ifh/graph.hpp"
#include "ifh/halting.hpp"
#include "ifh/record.hpp"
#include "ifh/removal.hpp"

namespace ifh {

enum class OrderingKind { Uniform, Bfs };
OrderingKind parse_ordering_spec(const std::string& text);
std::string to_string(OrderingKind kind);

Permutation make_ordering(const Graph& g, OrderingKind kind, Rng& rng);

// Per-graph RNG stream derived from (seed, graph_id); record generation is
// independent across graphs, so output is deterministic regardless of jobs.
Rng graph_rng(std::uint64_t seed, long graph_id);

// Samples one forward removal sequence per graph and emits one record per
// step, ordered by graph_id then t. Deterministic given seed.
std::vector<RemovalRecord> build_training_records(const std::vector<Graph>& dataset,
                                                  const ProcessSpec& process, OrderingKind ordering,
                                                  std::uint64_t seed, int jobs = 1);

struct SampleResult {
    Graph graph;
    bool truncated = false;
    int steps = 0;
    int max_block = 0;
};

// Insert-fill-halt loop from the empty graph; returns at the first positive
// halting draw or, flagged truncated, at max_steps.
SampleResult sample_graph(const InsertionDecider& insertion, const Filler& filler,
                          const Halter& halter, int max_steps, Rng& rng, bool undirected = true);

struct KlReport {
    double aggregate = 0.0;
    std::vector<std::pair<int, double>> per_step;  // (t, mean KL)
    bool infinite = false;
};

// Mean KL(posterior || decider) over records, per removal step and aggregate.
KlReport insertion_kl(const ProcessSpec& process, const std::vector<RemovalRecord>& records,
                      const InsertionDecider& decider);

// Replays one graph's recorded removal sequence in generation direction.
// Drives sample_graph to an exact reconstruction of the source graph, up to
// the node ordering recovered by to_source_order().
class ReplayDriver {
public:
    explicit ReplayDriver(std::vector<RemovalRecord> records_for_one_graph);
    ~ReplayDriver();

    const InsertionDecider& insertion() const;
    const Filler& filler() const;
    const Halter& halter() const;
    int total_steps() const;
    bool undirected() const;

    // Relabels a fully sampled graph back to the source indexing.
    Graph to_source_order(const Graph& sampled) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Named sequentiality presets binding process, ordering, and baseline
// component choices.
struct Preset {
    std::string name;
    std::string process;    // process spec string
    std::string ordering;   // "uniform" | "bfs"
    std::string insertion;  // "empirical-n" | "table" | "regressor"
    std::string filler;     // "empirical" | "er:p=<float>"
    std::string halter;     // "oracle:n=<int>" | "empirical" | "fixed-lambda:<float>"
};

Preset preset_by_name(const std::string& name);
const std::vector<std::string>& preset_names();

struct CostReport {
    std::string preset;
    long total_steps = 0;
    int max_block = 0;
    long peak_nodes = 0;
    long peak_edges = 0;
    double seconds = 0.0;
};

// Desk-scale cost survey: forward-sequence step counts and block sizes the
// preset would materialize on the dataset.
CostReport cost_probe(const Preset& preset, const std::vector<Graph>& dataset, std::uint64_t seed);

}  // namespace ifh
