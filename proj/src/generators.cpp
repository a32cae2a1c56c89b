#include "ifh/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ifh {

Graph merge_block(const Graph& current, const BlockContent& block, bool undirected) {
    Split s;
    s.kept = current;
    s.block = Graph(block.node_labels, block.internal_edges, undirected);
    s.inter_ab = block.inter_ab;
    s.inter_ba = block.inter_ba;
    return merge(s);
}

namespace {

Pmf pmf_from_counts(const std::map<int, long>& counts) {
    Pmf pmf;
    long total = 0;
    for (auto [v, c] : counts) total += c;
    if (total == 0) throw std::invalid_argument("empty count table");
    for (auto [v, c] : counts) {
        pmf.values.push_back(v);
        pmf.probs.push_back(static_cast<double>(c) / total);
    }
    return pmf;
}

// n0 of each training graph, keyed by graph_id (from the t = 1 records).
std::map<long, int> source_sizes(const std::vector<RemovalRecord>& records) {
    std::map<long, int> n0;
    for (const auto& rec : records)
        if (rec.t == 1) n0[rec.graph_id] = rec.n_prev();
    return n0;
}

class EmpiricalNSampler final : public InsertionDecider {
public:
    explicit EmpiricalNSampler(const std::vector<Graph>& dataset) {
        std::map<int, long> counts;
        for (const auto& g : dataset) ++counts[g.n()];
        pmf_ = pmf_from_counts(counts);
    }
    Pmf distribution(const Graph&, const StepContext& ctx) const override {
        if (ctx.gen_step == 1) return pmf_;
        return Pmf::point_mass(0);
    }

private:
    Pmf pmf_;
};

class CategoricalInsertionTable final : public InsertionDecider {
public:
    CategoricalInsertionTable(const std::vector<RemovalRecord>& records,
                              const CategoricalProcess& process)
        : process_(process.denominations(), process.max_amount()) {
        for (const auto& rec : records) ++table_[rec.n_t][rec.r_t];
        for (auto [id, n0] : source_sizes(records)) source_sizes_.push_back(n0);
        if (source_sizes_.empty()) throw std::invalid_argument("no records to fit insertion table on");
    }

    Pmf distribution(const Graph& g, const StepContext&) const override {
        auto it = table_.find(g.n());
        if (it != table_.end()) return pmf_from_counts(it->second);
        return posterior_fallback(g.n());
    }

private:
    Pmf posterior_fallback(int n) const {
        std::map<int, double> acc;
        int contributors = 0;
        for (int n0 : source_sizes_) {
            if (n0 <= n) continue;
            int delta = n0 - n;
            int coins = process_.coin_count(delta);
            for (auto [d, c] : process_.histogram(delta))
                acc[d] += static_cast<double>(c) / coins;
            ++contributors;
        }
        if (contributors == 0) return Pmf::point_mass(process_.denominations().front());
        Pmf pmf;
        for (auto [d, p] : acc) {
            pmf.values.push_back(d);
            pmf.probs.push_back(p / contributors);
        }
        return pmf;
    }

    CategoricalProcess process_;
    std::map<int, std::map<int, long>> table_;  // n_t -> r_t counts
    std::vector<int> source_sizes_;
};

class BinomialInsertionRegressor final : public InsertionDecider {
public:
    BinomialInsertionRegressor(const std::vector<RemovalRecord>& records,
                               const BinomialSchedule& schedule)
        : schedule_(schedule) {
        auto n0 = source_sizes(records);
        double global_sum = 0.0;
        long global_count = 0;
        for (const auto& rec : records) {
            int delta = n0.at(rec.graph_id) - rec.n_t;
            auto& [sum, count] = table_[{rec.t, rec.n_t}];
            sum += delta;
            count += 1;
            auto& [tsum, tcount] = by_step_[rec.t];
            tsum += delta;
            tcount += 1;
            global_sum += delta;
            global_count += 1;
        }
        if (global_count == 0) throw std::invalid_argument("no records to fit regressor on");
        global_mean_ = global_sum / global_count;
    }

    Pmf distribution(const Graph& g, const StepContext& ctx) const override {
        int t = std::clamp(schedule_.steps() - ctx.gen_step + 1, 1, schedule_.steps());
        double predicted = global_mean_;
        if (auto it = table_.find({t, g.n()}); it != table_.end())
            predicted = it->second.first / static_cast<double>(it->second.second);
        else if (auto bt = by_step_.find(t); bt != by_step_.end())
            predicted = bt->second.first / static_cast<double>(bt->second.second);
        int delta_hat = std::max(0, static_cast<int>(std::lround(predicted)));
        return binomial_posterior_pmf(schedule_, t, delta_hat);
    }

private:
    BinomialSchedule schedule_;
    std::map<std::pair<int, int>, std::pair<double, long>> table_;  // (t, n_t) -> (sum, count)
    std::map<int, std::pair<double, long>> by_step_;
    double global_mean_ = 0.0;
};

int sample_label(const Pmf& pmf, Rng& rng) { return pmf.sample(rng); }

class EmpiricalMarginalFiller final : public Filler {
public:
    explicit EmpiricalMarginalFiller(const std::vector<Graph>& dataset) {
        if (dataset.empty()) throw std::invalid_argument("empty dataset");
        undirected_ = dataset.front().undirected();

        std::map<int, long> node_counts, edge_counts;
        std::vector<int> all_degrees;
        std::vector<double> all_probs;  // per-node connect probability deg/(n-1)
        double density_sum = 0.0;
        int density_graphs = 0;
        for (const auto& g : dataset) {
            for (int l : g.node_labels()) ++node_counts[l];
            for (const auto& e : g.edges()) ++edge_counts[e.label];
            if (g.n() >= 2) {
                double slots = undirected_ ? g.n() * (g.n() - 1) / 2.0
                                           : static_cast<double>(g.n()) * (g.n() - 1);
                density_sum += g.m() / slots;
                ++density_graphs;
                auto deg = g.degrees();
                for (int i = 0; i < g.n(); ++i) {
                    all_degrees.push_back(deg[i]);
                    all_probs.push_back(static_cast<double>(deg[i]) / (g.n() - 1));
                }
            }
        }
        node_pmf_ = pmf_from_counts(node_counts);
        edge_pmf_ = edge_counts.empty() ? Pmf::point_mass(0) : pmf_from_counts(edge_counts);
        density_ = density_graphs > 0 ? density_sum / density_graphs : 0.0;

        // Degree quartile buckets with per-bucket mean connect probability.
        if (!all_degrees.empty()) {
            std::vector<int> sorted = all_degrees;
            std::sort(sorted.begin(), sorted.end());
            for (int q = 1; q < 4; ++q)
                thresholds_[q - 1] = sorted[sorted.size() * q / 4];
            double sums[4] = {0, 0, 0, 0};
            long counts[4] = {0, 0, 0, 0};
            for (std::size_t i = 0; i < all_degrees.size(); ++i) {
                int b = bucket(all_degrees[i]);
                sums[b] += all_probs[i];
                ++counts[b];
            }
            for (int b = 0; b < 4; ++b)
                bucket_prob_[b] = counts[b] > 0 ? sums[b] / counts[b] : density_;
        } else {
            for (int b = 0; b < 4; ++b) bucket_prob_[b] = density_;
        }
    }

    BlockContent fill(const Graph& current, int r, Rng& rng) const override {
        BlockContent blk;
        for (int i = 0; i < r; ++i) blk.node_labels.push_back(sample_label(node_pmf_, rng));
        auto add = [&](std::vector<Edge>& out, int u, int v, double p) {
            if (uniform01(rng) < p) out.push_back({u, v, sample_label(edge_pmf_, rng)});
        };
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                add(blk.internal_edges, i, j, density_);
                if (!undirected_) add(blk.internal_edges, j, i, density_);
            }
        auto deg = current.degrees();
        for (int j = 0; j < current.n(); ++j) {
            double p = bucket_prob_[bucket(deg[j])];
            for (int i = 0; i < r; ++i) {
                add(blk.inter_ab, j, i, p);
                if (!undirected_) add(blk.inter_ba, i, j, p);
            }
        }
        return blk;
    }

private:
    int bucket(int degree) const {
        for (int b = 0; b < 3; ++b)
            if (degree < thresholds_[b]) return b;
        return 3;
    }

    bool undirected_ = true;
    Pmf node_pmf_, edge_pmf_;
    double density_ = 0.0;
    int thresholds_[3] = {0, 0, 0};
    double bucket_prob_[4] = {0, 0, 0, 0};
};

class ErdosRenyiFiller final : public Filler {
public:
    ErdosRenyiFiller(double p_edge, Pmf node_label_pmf, Pmf edge_label_pmf)
        : p_(p_edge), node_pmf_(std::move(node_label_pmf)), edge_pmf_(std::move(edge_label_pmf)) {
        if (p_ < 0.0 || p_ > 1.0) throw std::invalid_argument("p_edge outside [0,1]");
    }

    BlockContent fill(const Graph& current, int r, Rng& rng) const override {
        const bool undirected = current.undirected();
        BlockContent blk;
        for (int i = 0; i < r; ++i) blk.node_labels.push_back(sample_label(node_pmf_, rng));
        auto add = [&](std::vector<Edge>& out, int u, int v) {
            if (uniform01(rng) < p_) out.push_back({u, v, sample_label(edge_pmf_, rng)});
        };
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) {
                add(blk.internal_edges, i, j);
                if (!undirected) add(blk.internal_edges, j, i);
            }
        for (int j = 0; j < current.n(); ++j)
            for (int i = 0; i < r; ++i) {
                add(blk.inter_ab, j, i);
                if (!undirected) add(blk.inter_ba, i, j);
            }
        return blk;
    }

private:
    double p_;
    Pmf node_pmf_, edge_pmf_;
};

}  // namespace

std::unique_ptr<InsertionDecider> make_empirical_n_sampler(const std::vector<Graph>& dataset) {
    return std::make_unique<EmpiricalNSampler>(dataset);
}

std::unique_ptr<InsertionDecider> make_categorical_insertion_table(
    const std::vector<RemovalRecord>& records, const CategoricalProcess& process) {
    return std::make_unique<CategoricalInsertionTable>(records, process);
}

std::unique_ptr<InsertionDecider> make_binomial_insertion_regressor(
    const std::vector<RemovalRecord>& records, const BinomialSchedule& schedule) {
    return std::make_unique<BinomialInsertionRegressor>(records, schedule);
}

std::unique_ptr<Filler> make_empirical_marginal_filler(const std::vector<Graph>& dataset) {
    return std::make_unique<EmpiricalMarginalFiller>(dataset);
}

std::unique_ptr<Filler> make_erdos_renyi_filler(double p_edge, Pmf node_label_pmf,
                                                Pmf edge_label_pmf) {
    return std::make_unique<ErdosRenyiFiller>(p_edge, std::move(node_label_pmf),
                                              std::move(edge_label_pmf));
}

}  // namespace ifh
