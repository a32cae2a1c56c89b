#include "ifh/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace ifh {

OrderingKind parse_ordering_spec(const std::string& text) {
    if (text == "uniform") return OrderingKind::Uniform;
    if (text == "bfs") return OrderingKind::Bfs;
    throw std::invalid_argument("bad ordering spec: " + text);
}

std::string to_string(OrderingKind kind) {
    return kind == OrderingKind::Uniform ? "uniform" : "bfs";
}

Permutation make_ordering(const Graph& g, OrderingKind kind, Rng& rng) {
    return kind == OrderingKind::Uniform ? random_ordering(g, rng) : bfs_ordering(g, rng);
}

Rng graph_rng(std::uint64_t seed, long graph_id) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(graph_id) + 1));
    // splitmix64 scramble so neighboring ids give unrelated streams
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return Rng(x ^ (x >> 31));
}

namespace {

std::vector<RemovalRecord> records_for_graph(const Graph& g, long graph_id,
                                             const ProcessSpec& process, OrderingKind ordering,
                                             std::uint64_t seed) {
    Rng rng = graph_rng(seed, graph_id);
    Permutation order = make_ordering(g, ordering, rng);
    auto seq = sample_forward_sequence(g, process, order, rng);

    std::vector<RemovalRecord> records;
    records.reserve(seq.size());
    std::vector<int> prev_ids(g.n());
    std::iota(prev_ids.begin(), prev_ids.end(), 0);
    Graph prev = g;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        // kept indices relative to the previous step's graph
        std::vector<int> keep_local;
        keep_local.reserve(seq[i].kept_ids.size());
        std::size_t j = 0;
        for (int id : seq[i].kept_ids) {
            while (j < prev_ids.size() && prev_ids[j] < id) ++j;
            keep_local.push_back(static_cast<int>(j));
        }
        Split sp = split(prev, keep_local);

        RemovalRecord rec;
        rec.graph_id = graph_id;
        rec.t = static_cast<int>(i) + 1;
        rec.total_steps = static_cast<int>(seq.size());
        rec.n_t = sp.kept.n();
        rec.r_t = seq[i].removed;
        rec.h_t = (i == 0) ? 1 : 0;
        rec.kept = sp.kept;
        rec.block_labels = sp.block.node_labels();
        rec.block_edges = sp.block.edges();
        rec.inter_ab = std::move(sp.inter_ab);
        rec.inter_ba = std::move(sp.inter_ba);
        rec.ordering = order;
        records.push_back(std::move(rec));

        prev = std::move(sp.kept);
        prev_ids = seq[i].kept_ids;
    }
    return records;
}

}  // namespace

std::vector<RemovalRecord> build_training_records(const std::vector<Graph>& dataset,
                                                  const ProcessSpec& process, OrderingKind ordering,
                                                  std::uint64_t seed, int jobs) {
    const long n = static_cast<long>(dataset.size());
    std::vector<std::vector<RemovalRecord>> per_graph(n);
    if (jobs < 1) jobs = 1;
    jobs = std::min<long>(jobs, std::max<long>(n, 1));

    auto work = [&](long first) {
        for (long i = first; i < n; i += jobs)
            per_graph[i] = records_for_graph(dataset[i], i, process, ordering, seed);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (long w = 0; w < jobs; ++w) threads.emplace_back(work, w);
        for (auto& th : threads) th.join();
    }

    std::vector<RemovalRecord> records;
    for (auto& chunk : per_graph)
        for (auto& rec : chunk) records.push_back(std::move(rec));
    return records;
}

SampleResult sample_graph(const InsertionDecider& insertion, const Filler& filler,
                          const Halter& halter, int max_steps, Rng& rng, bool undirected) {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    SampleResult result;
    result.graph = Graph::empty(undirected);
    for (int s = 1; s <= max_steps; ++s) {
        Pmf pmf = insertion.distribution(result.graph, {s});
        int r = pmf.sample(rng);
        BlockContent block = filler.fill(result.graph, r, rng);
        if (static_cast<int>(block.node_labels.size()) != r)
            throw std::runtime_error("inconsistent state: filler produced wrong block size");
        result.graph = merge_block(result.graph, block, undirected);
        result.steps = s;
        result.max_block = std::max(result.max_block, r);
        if (uniform01(rng) < halter.halt_probability(result.graph, s)) return result;
    }
    result.truncated = true;
    return result;
}

KlReport insertion_kl(const ProcessSpec& process, const std::vector<RemovalRecord>& records,
                      const InsertionDecider& decider) {
    std::map<long, int> n0;
    int max_n0 = 1;
    for (const auto& rec : records)
        if (rec.t == 1) {
            n0[rec.graph_id] = rec.n_prev();
            max_n0 = std::max(max_n0, rec.n_prev());
        }

    const auto* cat = std::get_if<CategoricalSpec>(&process);
    std::unique_ptr<CategoricalProcess> cat_proc;
    if (cat) cat_proc = std::make_unique<CategoricalProcess>(cat->denominations, std::max(max_n0, 64));

    std::map<int, std::pair<double, long>> per_step;
    double total = 0.0;
    long count = 0;
    bool infinite = false;
    for (const auto& rec : records) {
        int source_n = n0.at(rec.graph_id);
        Pmf posterior;
        if (cat) {
            posterior = categorical_posterior_pmf(*cat_proc, source_n, rec.n_t, rec.t);
        } else {
            BinomialSchedule sched =
                std::holds_alternative<BinomialLinearSpec>(process)
                    ? BinomialSchedule::linear(std::get<BinomialLinearSpec>(process).steps)
                    : BinomialSchedule::adaptive(source_n,
                                                 std::get<BinomialAdaptiveSpec>(process).velocity);
            posterior = binomial_posterior_pmf(sched, rec.t, source_n - rec.n_t);
        }
        Pmf predicted = decider.distribution(rec.kept, {rec.total_steps - rec.t + 1});
        double kl = kl_divergence(posterior, predicted);
        if (std::isinf(kl)) infinite = true;
        auto& [sum, c] = per_step[rec.t];
        sum += kl;
        c += 1;
        total += kl;
        ++count;
    }

    KlReport report;
    report.infinite = infinite;
    report.aggregate = count > 0 ? total / count : 0.0;
    for (auto [t, sc] : per_step) report.per_step.emplace_back(t, sc.first / sc.second);
    return report;
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

struct ReplayDriver::Impl {
    std::vector<RemovalRecord> records;  // generation order: t = T .. 1
    int source_n = 0;
    bool undirected = true;

    // mutable replay state
    mutable std::size_t cursor = 0;
    mutable std::vector<int> current_ids;  // original id of each current node

    class ReplayInsertion final : public InsertionDecider {
    public:
        explicit ReplayInsertion(const Impl* impl) : impl_(impl) {}
        Pmf distribution(const Graph&, const StepContext& ctx) const override {
            std::size_t idx = static_cast<std::size_t>(ctx.gen_step) - 1;
            if (idx >= impl_->records.size())
                throw std::runtime_error("replay exhausted: no record for this step");
            return Pmf::point_mass(impl_->records[idx].r_t);
        }

    private:
        const Impl* impl_;
    };

    class ReplayFiller final : public Filler {
    public:
        explicit ReplayFiller(const Impl* impl) : impl_(impl) {}
        BlockContent fill(const Graph& current, int r, Rng&) const override {
            if (impl_->cursor >= impl_->records.size())
                throw std::runtime_error("replay exhausted");
            const RemovalRecord& rec = impl_->records[impl_->cursor];
            if (r != rec.r_t)
                throw std::runtime_error("replay filler: requested block size != recorded r_t");
            if (current.n() != rec.n_t)
                throw std::runtime_error("replay filler: current graph out of sync with record");

            // Original ids of the recorded kept set (ascending) and of the block.
            std::vector<int> kept_ids(rec.ordering.begin(), rec.ordering.begin() + rec.n_t);
            std::sort(kept_ids.begin(), kept_ids.end());
            std::vector<int> block_ids(rec.ordering.begin() + rec.n_t,
                                       rec.ordering.begin() + rec.n_t + rec.r_t);
            std::sort(block_ids.begin(), block_ids.end());

            // Map a recorded kept index to the current graph's index.
            std::map<int, int> position;
            for (std::size_t j = 0; j < impl_->current_ids.size(); ++j)
                position[impl_->current_ids[j]] = static_cast<int>(j);

            BlockContent blk;
            blk.node_labels = rec.block_labels;
            blk.internal_edges = rec.block_edges;
            for (const auto& e : rec.inter_ab)
                blk.inter_ab.push_back({position.at(kept_ids[e.u]), e.v, e.label});
            for (const auto& e : rec.inter_ba)
                blk.inter_ba.push_back({e.u, position.at(kept_ids[e.v]), e.label});

            impl_->current_ids.insert(impl_->current_ids.end(), block_ids.begin(), block_ids.end());
            ++impl_->cursor;
            return blk;
        }

    private:
        const Impl* impl_;
    };

    class ReplayHalter final : public Halter {
    public:
        explicit ReplayHalter(const Impl* impl) : impl_(impl) {}
        double halt_probability(const Graph&, int) const override {
            return impl_->cursor >= impl_->records.size() ? 1.0 : 0.0;
        }

    private:
        const Impl* impl_;
    };

    ReplayInsertion insertion{this};
    ReplayFiller filler{this};
    ReplayHalter halter{this};
};

ReplayDriver::ReplayDriver(std::vector<RemovalRecord> records_for_one_graph)
    : impl_(std::make_unique<Impl>()) {
    if (records_for_one_graph.empty())
        throw std::invalid_argument("replay needs at least one record");
    std::sort(records_for_one_graph.begin(), records_for_one_graph.end(),
              [](const RemovalRecord& a, const RemovalRecord& b) { return a.t > b.t; });
    for (const auto& rec : records_for_one_graph)
        if (rec.graph_id != records_for_one_graph.front().graph_id)
            throw std::invalid_argument("replay records must belong to one graph");
    impl_->source_n = records_for_one_graph.back().n_prev();  // t = 1 record
    impl_->undirected = records_for_one_graph.back().kept.undirected();
    impl_->records = std::move(records_for_one_graph);
}

ReplayDriver::~ReplayDriver() = default;

const InsertionDecider& ReplayDriver::insertion() const { return impl_->insertion; }
const Filler& ReplayDriver::filler() const { return impl_->filler; }
const Halter& ReplayDriver::halter() const { return impl_->halter; }
int ReplayDriver::total_steps() const { return static_cast<int>(impl_->records.size()); }
bool ReplayDriver::undirected() const { return impl_->undirected; }

Graph ReplayDriver::to_source_order(const Graph& sampled) const {
    if (static_cast<int>(impl_->current_ids.size()) != sampled.n())
        throw std::logic_error("replay incomplete: sampled graph size mismatch");
    Permutation inv(sampled.n());
    for (int j = 0; j < sampled.n(); ++j) inv[impl_->current_ids[j]] = j;
    return relabel(sampled, inv);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"seq-1", "seq-small", "seq-big", "one-shot"};
    return names;
}

Preset preset_by_name(const std::string& name) {
    if (name == "seq-1")
        return {"seq-1", "categorical:D=1", "bfs", "table", "empirical", "empirical"};
    if (name == "seq-small")
        return {"seq-small", "categorical:D=1,3", "bfs", "table", "empirical", "empirical"};
    if (name == "seq-big")
        return {"seq-big", "categorical:D=1,2,8", "bfs", "table", "empirical", "empirical"};
    if (name == "one-shot")
        return {"one-shot", "binomial:linear:T=1", "uniform", "empirical-n", "empirical",
                "empirical"};
    throw std::invalid_argument("unknown preset: " + name);
}

CostReport cost_probe(const Preset& preset, const std::vector<Graph>& dataset, std::uint64_t seed) {
    CostReport report;
    report.preset = preset.name;
    ProcessSpec process = parse_process_spec(preset.process);
    OrderingKind ordering = parse_ordering_spec(preset.ordering);

    auto start = std::chrono::steady_clock::now();
    for (long i = 0; i < static_cast<long>(dataset.size()); ++i) {
        Rng rng = graph_rng(seed, i);
        Permutation order = make_ordering(dataset[i], ordering, rng);
        auto seq = sample_forward_sequence(dataset[i], process, order, rng);
        report.total_steps += static_cast<long>(seq.size());
        for (const auto& st : seq) report.max_block = std::max(report.max_block, st.removed);
        report.peak_nodes = std::max<long>(report.peak_nodes, dataset[i].n());
        report.peak_edges = std::max<long>(report.peak_edges, dataset[i].m());
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace ifh
