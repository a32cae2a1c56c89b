// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-9 run in-process; criterion 10 drives the CLI binary.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ifh/eval.hpp"
#include "ifh/generators.hpp"
#include "ifh/halting.hpp"
#include "ifh/io.hpp"
#include "ifh/pipeline.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace ifh;
using oracle::Rat;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// --- criterion 1: binomial closed forms vs rational oracle ------------------

bool binomial_exactness() {
    for (int T = 1; T <= 6; ++T) {
        std::vector<Rat> survive(T + 1);
        for (int t = 1; t <= T; ++t) survive[t] = Rat(T - t, T - t + 1);
        auto s = BinomialSchedule::linear(T);
        for (int n0 = 0; n0 <= 12; ++n0) {
            std::vector<oracle::Dist> marg(T + 1);
            marg[0][n0] = 1;
            for (int t = 1; t <= T; ++t) marg[t] = oracle::binomial_step(marg[t - 1], survive[t]);

            for (int t = 0; t <= T; ++t) {
                Pmf got = binomial_marginal_pmf(s, t, n0);
                for (int k = 0; k <= n0; ++k) {
                    double want = marg[t].count(k) ? oracle::to_double(marg[t][k]) : 0.0;
                    if (std::abs(got.prob_of(k) - want) > 1e-12) return false;
                }
            }
            for (int t = 1; t <= T; ++t) {
                for (int n_t = 0; n_t <= n0; ++n_t) {
                    if (!marg[t].count(n_t) || marg[t][n_t] == 0) continue;
                    Pmf post = binomial_posterior_pmf(s, t, n0 - n_t);
                    for (int r = 0; r <= n0 - n_t; ++r) {
                        int n_prev = n_t + r;
                        if (!marg[t - 1].count(n_prev)) continue;
                        // exact Bayes: P(n_t | n_prev) P(n_prev) / P(n_t)
                        Rat trans = Rat(oracle::binom(n_prev, n_t));
                        for (int i = 0; i < n_t; ++i) trans *= survive[t];
                        for (int i = 0; i < n_prev - n_t; ++i) trans *= (1 - survive[t]);
                        Rat bayes = trans * marg[t - 1][n_prev] / marg[t][n_t];
                        if (std::abs(post.prob_of(r) - oracle::to_double(bayes)) > 1e-12)
                            return false;
                    }
                }
            }
        }
    }
    return true;
}

// --- criterion 2: categorical closed forms vs rational enumeration ----------

bool categorical_exactness() {
    const std::vector<std::vector<int>> denom_sets = {{1, 2}, {1, 3}, {1, 4}, {1, 2, 8}};
    for (const auto& D : denom_sets) {
        CategoricalProcess p(D);
        for (int n0 = 0; n0 <= 30; ++n0) {
            int T = p.coin_count(n0);
            auto h = p.histogram(n0);
            std::vector<oracle::Dist> marg(T + 1);
            for (int t = 0; t <= T; ++t) marg[t] = oracle::urn_marginal(h, n0, t);

            for (int t = 0; t <= T; ++t) {
                Pmf got = categorical_marginal_pmf(p, n0, t);
                if (got.values.size() != marg[t].size()) return false;
                for (const auto& [n_t, prob] : marg[t])
                    if (std::abs(got.prob_of(n_t) - oracle::to_double(prob)) > 1e-12) return false;
            }
            // Bayes consistency of the posterior against exact enumeration
            for (int t = 1; t <= T; ++t) {
                for (const auto& [n_t, pn] : marg[t]) {
                    Pmf post = categorical_posterior_pmf(p, n0, n_t, t);
                    for (int d : post.values) {
                        int n_prev = n_t + d;
                        if (!marg[t - 1].count(n_prev)) {
                            if (post.prob_of(d) > 1e-12) return false;
                            continue;
                        }
                        // exact transition at step t: h(n_prev)[d] / (T - t + 1)
                        auto h_prev = p.histogram(n_prev);
                        Rat trans = Rat(h_prev.count(d) ? h_prev.at(d) : 0, T - t + 1);
                        Rat bayes = trans * marg[t - 1][n_prev] / pn;
                        if (std::abs(post.prob_of(d) - oracle::to_double(bayes)) > 1e-12)
                            return false;
                    }
                }
            }
        }
    }
    return true;
}

// --- criterion 3: change-making DP ------------------------------------------

bool change_making() {
    auto regression = coin_histogram({1, 3, 4}, 6);
    if (regression.count != 2) return false;
    const std::vector<std::vector<int>> denom_sets = {{1}, {1, 3}, {1, 2, 8}, {1, 3, 4}, {1, 4}};
    for (const auto& D : denom_sets)
        for (int n = 0; n <= 200; ++n)
            if (coin_histogram(D, n).count != oracle::min_coins_bruteforce(D, n)) return false;
    return true;
}

// --- criterion 4: adaptive schedule ------------------------------------------

bool adaptive_schedule(std::string& detail) {
    auto worked = BinomialSchedule::adaptive(12, 3);
    if (worked.steps() != 4) return false;

    Graph g = synth::complete_graph(30);
    auto spec = BinomialAdaptiveSpec{3.0};
    Rng rng(2718);
    long removed = 0, steps = 0;
    for (int i = 0; i < 10000; ++i) {
        Permutation order = random_ordering(g, rng);
        auto seq = sample_forward_sequence(g, spec, order, rng);
        for (const auto& st : seq) removed += st.removed;
        steps += static_cast<long>(seq.size());
    }
    double mean = static_cast<double>(removed) / steps;
    detail = "mean removal/step " + fmt(mean);
    return mean >= 2.85 && mean <= 3.15;
}

// --- criterion 5: split/merge roundtrip and replay inversion ------------------

bool roundtrip_and_replay() {
    Rng rng(5150);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(uniform_below(rng, 64));
        Graph g = synth::random_graph(n, 0.25, rng, 3, 2);
        std::vector<int> keep;
        for (int i = 0; i < n; ++i)
            if (uniform01(rng) < 0.5) keep.push_back(i);
        Split sp = split(g, keep);
        std::vector<int> ids = sp.kept_ids;
        ids.insert(ids.end(), sp.block_ids.begin(), sp.block_ids.end());
        Permutation inv(n);
        for (int j = 0; j < n; ++j) inv[ids[j]] = j;
        if (!(relabel(merge(sp), inv) == g)) return false;
    }

    auto dataset = synth::random_set(100, 2, 40, 0.3, 8191);
    auto records = build_training_records(dataset, CategoricalSpec{{1, 3}}, OrderingKind::Bfs, 71);
    std::map<long, std::vector<RemovalRecord>> grouped;
    for (const auto& rec : records) grouped[rec.graph_id].push_back(rec);
    if (grouped.size() != dataset.size()) return false;
    for (const auto& [id, recs] : grouped) {
        ReplayDriver driver(recs);
        auto result = sample_graph(driver.insertion(), driver.filler(), driver.halter(),
                                   driver.total_steps() + 1, rng, driver.undirected());
        if (result.truncated) return false;
        if (!(driver.to_source_order(result.graph) == dataset[id])) return false;
    }
    return true;
}

// --- criterion 6: sequentiality specializations ------------------------------

bool sequentiality() {
    auto dataset = synth::random_set(20, 4, 12, 0.4, 99);
    Rng rng(31);

    // one-shot: empirical node-count insertion + halter fitted on T=1 records
    auto records = build_training_records(dataset, BinomialLinearSpec{1}, OrderingKind::Uniform, 3);
    auto insertion = make_empirical_n_sampler(dataset);
    auto filler = make_empirical_marginal_filler(dataset);
    auto halter = make_empirical_halter(records);
    for (int i = 0; i < 100; ++i) {
        auto result = sample_graph(*insertion, *filler, *halter, 50, rng);
        if (result.steps != 1 || result.truncated) return false;
    }

    // seq-1 with an oracle halter on an n-node target: exactly n steps
    for (int n = 1; n <= 20; ++n) {
        std::vector<Graph> one = {synth::path_graph(n)};
        auto recs = build_training_records(one, CategoricalSpec{{1}}, OrderingKind::Bfs, 5);
        CategoricalProcess process({1});
        auto table = make_categorical_insertion_table(recs, process);
        auto fill1 = make_empirical_marginal_filler(one);
        auto oracle_h = make_oracle_halter(n);
        for (int i = 0; i < 20; ++i) {
            auto result = sample_graph(*table, *fill1, *oracle_h, n + 10, rng);
            if (result.steps != n || result.graph.n() != n || result.truncated) return false;
        }
    }
    return true;
}

// --- criterion 7: insertion KL fixtures ---------------------------------------

bool insertion_kl_fixtures(std::string& detail) {
    CategoricalSpec spec{{1, 4}};
    auto dataset = synth::random_set(20, 5, 18, 0.3, 31);
    auto records = build_training_records(dataset, spec, OrderingKind::Uniform, 17);

    struct ExactPosterior : InsertionDecider {
        CategoricalProcess process{{1, 4}};
        const std::vector<RemovalRecord>* records = nullptr;
        mutable std::size_t cursor = 0;
        Pmf distribution(const Graph&, const StepContext&) const override {
            const auto& rec = (*records)[cursor++];
            int n0 = 0;
            for (const auto& r2 : *records)
                if (r2.graph_id == rec.graph_id && r2.t == 1) n0 = r2.n_prev();
            return categorical_posterior_pmf(process, n0, rec.n_t, rec.t);
        }
    };
    ExactPosterior exact;
    exact.records = &records;
    KlReport zero = insertion_kl(spec, records, exact);
    if (zero.infinite || std::abs(zero.aggregate) > 1e-12) return false;

    struct UniformD : InsertionDecider {
        Pmf distribution(const Graph&, const StepContext&) const override {
            return Pmf{{1, 4}, {0.5, 0.5}};
        }
    };
    std::vector<Graph> nine = {synth::cycle_graph(9)};
    auto recs9 = build_training_records(nine, spec, OrderingKind::Uniform, 23);
    std::vector<RemovalRecord> first_steps;
    for (const auto& rec : recs9)
        if (rec.t == 1) first_steps.push_back(rec);
    KlReport ln2 = insertion_kl(spec, first_steps, UniformD{});
    detail = "kl0 " + fmt(zero.aggregate) + ", ln2 " + fmt(ln2.aggregate);
    return std::abs(ln2.aggregate - std::log(2.0)) <= 1e-12;
}

// --- criterion 8: cost monotonicity across presets ----------------------------

bool cost_monotonicity(std::string& detail) {
    auto dataset = synth::random_set(200, 20, 60, 0.2, 2025);
    std::vector<CostReport> reports;
    for (const auto& name : preset_names())
        reports.push_back(cost_probe(preset_by_name(name), dataset, 11));
    std::ostringstream d;
    for (const auto& r : reports) d << r.preset << " block " << r.max_block << "/steps "
                                    << r.total_steps << "; ";
    detail = d.str();
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (!(reports[i - 1].max_block < reports[i].max_block)) return false;
        if (!(reports[i - 1].total_steps > reports[i].total_steps)) return false;
    }
    return true;
}

// --- criterion 9: evaluation sanity -------------------------------------------

bool eval_sanity(std::string& detail) {
    auto x = synth::random_set(40, 8, 20, 0.3, 1);
    for (auto kind :
         {DescriptorKind::Degree, DescriptorKind::Clustering, DescriptorKind::Spectrum})
        if (std::abs(mmd_rbf(x, x, kind)) > 1e-12) return false;

    auto a = synth::random_set(100, 20, 20, 0.2, 10);
    auto b = synth::random_set(100, 20, 20, 0.8, 20);
    auto half = [](const std::vector<Graph>& s, bool first) {
        return first ? std::vector<Graph>(s.begin(), s.begin() + s.size() / 2)
                     : std::vector<Graph>(s.begin() + s.size() / 2, s.end());
    };
    double cross = mmd_rbf(a, b, DescriptorKind::Degree);
    double self_a = mmd_rbf(half(a, true), half(a, false), DescriptorKind::Degree);
    double self_b = mmd_rbf(half(b, true), half(b, false), DescriptorKind::Degree);
    if (cross < 10 * self_a || cross < 10 * self_b) return false;

    // flexibility check: one-shot samples with the empirical node-count
    // insertion reproduce the training node-count distribution
    auto train = synth::random_set(200, 20, 60, 0.2, 2025);
    auto records = build_training_records(train, BinomialLinearSpec{1}, OrderingKind::Uniform, 6);
    auto insertion = make_empirical_n_sampler(train);
    auto filler = make_empirical_marginal_filler(train);
    auto halter = make_empirical_halter(records);
    Rng rng(1234);
    std::vector<Graph> samples;
    for (int i = 0; i < 200; ++i)
        samples.push_back(sample_graph(*insertion, *filler, *halter, 10, rng).graph);

    double baseline = node_count_distance(half(train, true), half(train, false));
    double achieved = node_count_distance(samples, train);
    detail = "cross " + fmt(cross) + " vs self " + fmt(std::max(self_a, self_b)) +
             "; node-count " + fmt(achieved) + " vs baseline " + fmt(baseline);
    return achieved <= 2 * baseline;
}

// --- criterion 10: CLI byte-reproducibility ------------------------------------

#ifndef IFH_CLI_PATH
#define IFH_CLI_PATH "ifh"
#endif

bool run_cmd(const std::string& cmd) { return std::system(cmd.c_str()) == 0; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool cli_determinism(std::string& detail) {
    namespace fs = std::filesystem;
    fs::path root = fs::temp_directory_path() / "ifh_accept";
    fs::remove_all(root);
    fs::create_directories(root / "run1");
    fs::create_directories(root / "run2");

    auto dataset = synth::random_set(25, 6, 16, 0.3, 47);
    std::string data_path = (root / "train.jsonl").string();
    save_dataset(data_path, dataset);

    const std::string cli = IFH_CLI_PATH;
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"sequences", {"sequences --dataset " + data_path +
                           " --preset seq-small --seed 7 --jobs 2 --out out.jsonl",
                       "out.jsonl", "out.jsonl.manifest.json"}},
        {"sample", {"sample --dataset " + data_path +
                        " --preset seq-small --seed 7 --count 15 --out gen.jsonl",
                    "gen.jsonl", "gen.jsonl.manifest.json"}},
        {"schedule", {"schedule --process categorical:D=1,3 --n0 17 --out sched.txt", "sched.txt"}},
        {"probe", {"probe --dataset " + data_path + " --seed 7 --out probe.jsonl", "probe.jsonl"}},
    };

    for (const auto& [name, spec] : cases) {
        const std::string& args = spec[0];
        for (const char* run : {"run1", "run2"}) {
            std::string cmd = "cd " + (root / run).string() + " && " + cli + " " + args +
                              " > /dev/null 2>&1";
            if (!run_cmd(cmd)) {
                detail = name + " exited nonzero";
                return false;
            }
        }
        for (std::size_t i = 1; i < spec.size(); ++i) {
            if (slurp(root / "run1" / spec[i]) != slurp(root / "run2" / spec[i])) {
                detail = name + " output " + spec[i] + " differs between runs";
                return false;
            }
            if (slurp(root / "run1" / spec[i]).empty()) {
                detail = name + " produced empty " + spec[i];
                return false;
            }
        }
    }

    // eval on the sample outputs, twice
    std::string gen = (root / "run1" / "gen.jsonl").string();
    for (const char* run : {"run1", "run2"}) {
        std::string cmd = "cd " + (root / run).string() + " && " + cli + " eval --dataset " +
                          data_path + " --generated " + gen + " --out report.jsonl > /dev/null 2>&1";
        if (!run_cmd(cmd)) {
            detail = "eval exited nonzero";
            return false;
        }
    }
    if (slurp(root / "run1" / "report.jsonl") != slurp(root / "run2" / "report.jsonl")) {
        detail = "eval report differs between runs";
        return false;
    }

    // error path: missing dataset must exit nonzero
    if (run_cmd(cli + std::string(" sequences --dataset ") + (root / "absent.jsonl").string() +
                " --preset seq-1 --seed 1 --out /dev/null > /dev/null 2>&1")) {
        detail = "missing dataset did not fail";
        return false;
    }
    fs::remove_all(root);
    return true;
}

bool timed(int criterion, const std::string& name, double limit_s,
           const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = body(detail);
    double elapsed = seconds_since(start);
    bool in_time = limit_s <= 0 || elapsed < limit_s;
    std::string info = detail.empty() ? "" : detail + ", ";
    report(criterion, name, ok && in_time, info + fmt(elapsed) + "s");
    return ok && in_time;
}

}  // namespace

int main() {
    timed(1, "binomial closed-form exactness vs rational oracle", 10.0,
          [](std::string&) { return binomial_exactness(); });
    timed(2, "categorical closed-form exactness vs urn enumeration", 30.0,
          [](std::string&) { return categorical_exactness(); });
    timed(3, "change-making DP vs brute force (incl. D={1,3,4} n=6 regression)", 5.0,
          [](std::string&) { return change_making(); });
    timed(4, "adaptive schedule worked example and Monte-Carlo mean", 0.0,
          [](std::string& d) { return adaptive_schedule(d); });
    timed(5, "split/merge roundtrip and replay inversion", 0.0,
          [](std::string&) { return roundtrip_and_replay(); });
    timed(6, "one-shot fills once; seq-1 takes exactly n steps", 0.0,
          [](std::string&) { return sequentiality(); });
    timed(7, "insertion KL: exact posterior 0, uniform vs point mass ln 2", 0.0,
          [](std::string& d) { return insertion_kl_fixtures(d); });
    timed(8, "cost monotonicity across presets", 120.0,
          [](std::string& d) { return cost_monotonicity(d); });
    timed(9, "evaluation sanity: MMD identity, separation, node-count fit", 0.0,
          [](std::string& d) { return eval_sanity(d); });
    timed(10, "CLI byte-reproducibility via double-run comparison", 0.0,
          [](std::string& d) { return cli_determinism(d); });

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all 10 criteria passed\n";
    return 0;
}
