// Command-line front end: reproducible runs of the removal/generation
// pipeline plus evaluation and schedule inspection.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ifh/eval.hpp"
#include "ifh/generators.hpp"
#include "ifh/halting.hpp"
#include "ifh/io.hpp"
#include "ifh/pipeline.hpp"

using nlohmann::json;

namespace {

struct RunConfig {
    std::string dataset;
    std::string generated;
    std::string preset;
    std::string preset_file;
    std::string process;
    std::string ordering = "uniform";
    std::string insertion = "auto";
    std::string filler = "empirical";
    std::string halter = "empirical";
    std::uint64_t seed = 0;
    std::string out;
    int count = 100;
    int max_steps = 1000;
    int n0 = 0;
    int jobs = 0;
    bool dump_config = false;
};

int effective_jobs(const RunConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Preset files map name -> {process, ordering, insertion, filler, halter};
// fields default to the built-in one-shot-free baselines when omitted.
ifh::Preset preset_from_file(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open preset file: " + path);
    json j = json::parse(in);
    if (!j.contains(name)) throw std::invalid_argument("preset not in file: " + name);
    const json& p = j.at(name);
    return {name,
            p.at("process").get<std::string>(),
            p.value("ordering", "uniform"),
            p.value("insertion", "auto"),
            p.value("filler", "empirical"),
            p.value("halter", "empirical")};
}

// Preset fields act as defaults; inline flags the user actually set win.
void apply_preset(RunConfig& cfg, const CLI::App& cmd) {
    if (cfg.preset.empty()) return;
    ifh::Preset p = cfg.preset_file.empty() ? ifh::preset_by_name(cfg.preset)
                                            : preset_from_file(cfg.preset_file, cfg.preset);
    if (cmd.count("--process") == 0) cfg.process = p.process;
    if (cmd.count("--ordering") == 0) cfg.ordering = p.ordering;
    if (cmd.count("--insertion") == 0) cfg.insertion = p.insertion;
    if (cmd.count("--filler") == 0) cfg.filler = p.filler;
    if (cmd.count("--halter") == 0) cfg.halter = p.halter;
}

std::string resolve_insertion(const std::string& insertion, const ifh::ProcessSpec& process) {
    if (insertion != "auto") return insertion;
    if (std::holds_alternative<ifh::CategoricalSpec>(process)) return "table";
    if (const auto* lin = std::get_if<ifh::BinomialLinearSpec>(&process); lin && lin->steps == 1)
        return "empirical-n";
    return "regressor";
}

std::unique_ptr<ifh::Halter> make_halter(const std::string& spec,
                                         const std::vector<ifh::RemovalRecord>& records) {
    if (spec == "empirical") return ifh::make_empirical_halter(records);
    if (spec.rfind("oracle:n=", 0) == 0) return ifh::make_oracle_halter(std::stoi(spec.substr(9)));
    if (spec.rfind("fixed-lambda:", 0) == 0)
        return ifh::make_fixed_lambda_halter(std::stod(spec.substr(13)));
    throw std::invalid_argument("unknown halter spec: " + spec);
}

ifh::Pmf label_pmf(const std::map<int, long>& counts) {
    if (counts.empty()) return ifh::Pmf::point_mass(0);
    double total = 0;
    for (auto [v, c] : counts) total += c;
    ifh::Pmf pmf;
    for (auto [v, c] : counts) {
        pmf.values.push_back(v);
        pmf.probs.push_back(c / total);
    }
    return pmf;
}

std::unique_ptr<ifh::Filler> make_filler(const std::string& spec,
                                         const std::vector<ifh::Graph>& dataset) {
    if (spec == "empirical") return ifh::make_empirical_marginal_filler(dataset);
    if (spec.rfind("er:p=", 0) == 0) {
        double p = std::stod(spec.substr(5));
        std::map<int, long> node_counts, edge_counts;
        for (const auto& g : dataset) {
            for (int l : g.node_labels()) ++node_counts[l];
            for (const auto& e : g.edges()) ++edge_counts[e.label];
        }
        return ifh::make_erdos_renyi_filler(p, label_pmf(node_counts), label_pmf(edge_counts));
    }
    throw std::invalid_argument("unknown filler spec: " + spec);
}

std::unique_ptr<ifh::InsertionDecider> make_insertion(const std::string& kind,
                                                      const ifh::ProcessSpec& process,
                                                      const std::vector<ifh::RemovalRecord>& records,
                                                      const std::vector<ifh::Graph>& dataset) {
    if (kind == "empirical-n") return ifh::make_empirical_n_sampler(dataset);
    if (kind == "table") {
        const auto* cat = std::get_if<ifh::CategoricalSpec>(&process);
        if (!cat) throw std::invalid_argument("insertion table requires a categorical process");
        int max_n = 1;
        for (const auto& g : dataset) max_n = std::max(max_n, g.n());
        ifh::CategoricalProcess proc(cat->denominations, std::max(max_n, 64));
        return ifh::make_categorical_insertion_table(records, proc);
    }
    if (kind == "regressor") {
        ifh::BinomialSchedule schedule = [&] {
            if (const auto* lin = std::get_if<ifh::BinomialLinearSpec>(&process))
                return ifh::BinomialSchedule::linear(lin->steps);
            const auto* ad = std::get_if<ifh::BinomialAdaptiveSpec>(&process);
            if (!ad) throw std::invalid_argument("regressor requires a binomial process");
            double mean_n = 0;
            for (const auto& g : dataset) mean_n += g.n();
            mean_n = dataset.empty() ? ad->velocity : mean_n / dataset.size();
            return ifh::BinomialSchedule::adaptive(
                std::max(1, static_cast<int>(std::lround(mean_n))), ad->velocity);
        }();
        return ifh::make_binomial_insertion_regressor(records, schedule);
    }
    throw std::invalid_argument("unknown insertion kind: " + kind);
}

json config_json(const RunConfig& cfg, const std::string& subcommand) {
    json j;
    j["subcommand"] = subcommand;
    if (!cfg.dataset.empty()) j["dataset"] = cfg.dataset;
    if (!cfg.generated.empty()) j["generated"] = cfg.generated;
    if (!cfg.preset.empty()) j["preset"] = cfg.preset;
    if (!cfg.process.empty()) j["process"] = cfg.process;
    j["ordering"] = cfg.ordering;
    j["insertion"] = cfg.insertion;
    j["filler"] = cfg.filler;
    j["halter"] = cfg.halter;
    j["seed"] = cfg.seed;
    if (!cfg.out.empty()) j["out"] = cfg.out;
    j["count"] = cfg.count;
    j["max_steps"] = cfg.max_steps;
    if (cfg.n0 > 0) j["n0"] = cfg.n0;
    return j;
}

void write_manifest(const std::string& out, json manifest) {
    ifh::write_file_atomic(out + ".manifest.json", manifest.dump(2) + "\n");
}

// --- subcommands -----------------------------------------------------------

int cmd_sequences(const RunConfig& cfg) {
    auto dataset = ifh::load_dataset(cfg.dataset);
    ifh::ProcessSpec process = ifh::parse_process_spec(cfg.process);
    ifh::OrderingKind ordering = ifh::parse_ordering_spec(cfg.ordering);
    auto records =
        ifh::build_training_records(dataset, process, ordering, cfg.seed, effective_jobs(cfg));
    ifh::save_records(cfg.out, records);

    json manifest = config_json(cfg, "sequences");
    manifest["dataset_digest"] = ifh::file_digest_hex(cfg.dataset);
    manifest["graphs"] = dataset.size();
    manifest["records"] = records.size();
    write_manifest(cfg.out, manifest);
    std::cout << "wrote " << records.size() << " records for " << dataset.size() << " graphs to "
              << cfg.out << "\n";
    return 0;
}

int cmd_sample(const RunConfig& cfg) {
    auto dataset = ifh::load_dataset(cfg.dataset);
    if (dataset.empty()) throw std::runtime_error("empty dataset: " + cfg.dataset);
    ifh::ProcessSpec process = ifh::parse_process_spec(cfg.process);
    ifh::OrderingKind ordering = ifh::parse_ordering_spec(cfg.ordering);

    auto records =
        ifh::build_training_records(dataset, process, ordering, cfg.seed, effective_jobs(cfg));
    std::string insertion_kind = resolve_insertion(cfg.insertion, process);
    auto insertion = make_insertion(insertion_kind, process, records, dataset);
    auto filler = make_filler(cfg.filler, dataset);
    auto halter = make_halter(cfg.halter, records);

    bool undirected = dataset.front().undirected();
    std::vector<ifh::Graph> samples;
    std::vector<bool> truncated;
    long steps = 0, truncations = 0;
    // Sampling streams live in a seed domain disjoint from record building.
    const std::uint64_t sample_seed = cfg.seed ^ 0x517cc1b727220a95ULL;
    for (int i = 0; i < cfg.count; ++i) {
        ifh::Rng rng = ifh::graph_rng(sample_seed, i);
        auto result = ifh::sample_graph(*insertion, *filler, *halter, cfg.max_steps, rng, undirected);
        samples.push_back(std::move(result.graph));
        truncated.push_back(result.truncated);
        steps += result.steps;
        truncations += result.truncated ? 1 : 0;
    }
    ifh::save_dataset(cfg.out, samples, &truncated);

    json manifest = config_json(cfg, "sample");
    manifest["insertion_resolved"] = insertion_kind;
    manifest["dataset_digest"] = ifh::file_digest_hex(cfg.dataset);
    manifest["samples"] = samples.size();
    manifest["fill_steps"] = steps;
    manifest["truncated"] = truncations;
    write_manifest(cfg.out, manifest);
    std::cout << "wrote " << samples.size() << " graphs (" << steps << " fill steps, "
              << truncations << " truncated) to " << cfg.out << "\n";
    return 0;
}

int cmd_eval(const RunConfig& cfg) {
    auto train = ifh::load_dataset(cfg.dataset);
    auto generated = ifh::load_dataset(cfg.generated);
    const json sizes = {generated.size(), train.size()};

    std::ostringstream report;
    std::vector<std::pair<std::string, double>> metrics;
    auto add_mmd = [&](const std::string& name, const std::string& kind_name,
                       ifh::DescriptorKind kind) {
        double sigma = 0.0;
        double value = ifh::mmd_rbf(generated, train, kind, std::nullopt, &sigma);
        metrics.emplace_back(name, value);
        json line = {{"metric", name}, {"kind", kind_name}, {"value", value},
                     {"bandwidth", sigma}, {"sizes", sizes}};
        report << line.dump() << "\n";
    };
    auto add_plain = [&](const std::string& name, double value) {
        metrics.emplace_back(name, value);
        json line = {{"metric", name}, {"kind", nullptr}, {"value", value},
                     {"bandwidth", nullptr}, {"sizes", sizes}};
        report << line.dump() << "\n";
    };
    add_mmd("mmd_degree", "degree", ifh::DescriptorKind::Degree);
    add_mmd("mmd_clustering", "clustering", ifh::DescriptorKind::Clustering);
    add_mmd("mmd_spectrum", "spectrum", ifh::DescriptorKind::Spectrum);
    add_plain("uniqueness", ifh::uniqueness(generated));
    add_plain("novelty", ifh::novelty(generated, train));
    add_plain("node_count_distance", ifh::node_count_distance(generated, train));

    // Chemistry-toolkit and pretrained-embedding metrics are out of scope.
    const std::vector<std::string> unavailable = {"validity", "fcd", "nspdk", "gin_mmd"};
    for (const auto& name : unavailable) {
        json line = {{"metric", name}, {"kind", nullptr}, {"value", "n/a"},
                     {"bandwidth", nullptr}, {"sizes", sizes}};
        report << line.dump() << "\n";
    }

    char buf[64];
    for (const auto& [name, value] : metrics) {
        std::snprintf(buf, sizeof(buf), "%-22s %.6g", name.c_str(), value);
        std::cout << buf << "\n";
    }
    for (const auto& name : unavailable) {
        std::snprintf(buf, sizeof(buf), "%-22s n/a", name.c_str());
        std::cout << buf << "\n";
    }
    if (!cfg.out.empty()) ifh::write_file_atomic(cfg.out, report.str());
    return 0;
}

int cmd_schedule(const RunConfig& cfg) {
    ifh::ProcessSpec process = ifh::parse_process_spec(cfg.process);
    std::ostringstream out;
    char buf[128];

    auto print_pmf = [&](int t, const ifh::Pmf& pmf) {
        out << "marginal t=" << t << ":";
        for (std::size_t i = 0; i < pmf.values.size(); ++i) {
            std::snprintf(buf, sizeof(buf), " %d:%.12g", pmf.values[i], pmf.probs[i]);
            out << buf;
        }
        out << "\n";
    };

    if (const auto* cat = std::get_if<ifh::CategoricalSpec>(&process)) {
        if (cfg.n0 <= 0) throw std::invalid_argument("schedule: categorical process needs --n0");
        ifh::CategoricalProcess proc(cat->denominations, std::max(cfg.n0, 64));
        out << "process " << ifh::to_string(process) << "\n";
        out << "n0 " << cfg.n0 << "  T " << proc.coin_count(cfg.n0) << "\n";
        out << "h(n0):";
        for (auto [d, c] : proc.histogram(cfg.n0)) out << " " << d << ":" << c;
        out << "\n";
        for (int t = 1; t <= proc.coin_count(cfg.n0); ++t)
            print_pmf(t, ifh::categorical_marginal_pmf(proc, cfg.n0, t));
    } else {
        ifh::BinomialSchedule schedule = [&] {
            if (const auto* lin = std::get_if<ifh::BinomialLinearSpec>(&process))
                return ifh::BinomialSchedule::linear(lin->steps);
            if (cfg.n0 <= 0) throw std::invalid_argument("schedule: adaptive process needs --n0");
            return ifh::BinomialSchedule::adaptive(
                cfg.n0, std::get<ifh::BinomialAdaptiveSpec>(process).velocity);
        }();
        out << "process " << ifh::to_string(process) << "  T " << schedule.steps() << "\n";
        out << "t pi q qbar\n";
        for (int t = 1; t <= schedule.steps(); ++t) {
            std::snprintf(buf, sizeof(buf), "%d %.12g %.12g %.12g\n", t, schedule.survival(t),
                          schedule.removal_prob(t), schedule.reinsertion_prob(t));
            out << buf;
        }
        if (cfg.n0 > 0)
            for (int t = 1; t <= schedule.steps(); ++t)
                print_pmf(t, ifh::binomial_marginal_pmf(schedule, t, cfg.n0));
    }

    std::cout << out.str();
    if (!cfg.out.empty()) ifh::write_file_atomic(cfg.out, out.str());
    return 0;
}

int cmd_probe(const RunConfig& cfg) {
    auto dataset = ifh::load_dataset(cfg.dataset);
    std::vector<std::string> names =
        cfg.preset.empty() ? ifh::preset_names() : std::vector<std::string>{cfg.preset};

    std::ostringstream out;
    for (const auto& name : names) {
        auto report = ifh::cost_probe(ifh::preset_by_name(name), dataset, cfg.seed);
        json line = {{"preset", report.preset},
                     {"total_steps", report.total_steps},
                     {"max_block", report.max_block},
                     {"peak_nodes", report.peak_nodes},
                     {"peak_edges", report.peak_edges}};
        out << line.dump() << "\n";
        // Wall time stays on stdout only, so the output file is reproducible.
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-10s steps=%-6ld max_block=%-4d peak_n=%-4ld peak_m=%-5ld (%.3fs)",
                      report.preset.c_str(), report.total_steps, report.max_block,
                      report.peak_nodes, report.peak_edges, report.seconds);
        std::cout << buf << "\n";
    }
    if (!cfg.out.empty()) ifh::write_file_atomic(cfg.out, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"insert-fill-halt graph generation toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd, bool needs_seed) {
        cmd->add_option("--preset", cfg.preset, "named preset (seq-1|seq-small|seq-big|one-shot)");
        cmd->add_option("--preset-file", cfg.preset_file, "JSON file of named preset specs")
            ->check(CLI::ExistingFile);
        cmd->add_option("--process", cfg.process,
                        "binomial:linear:T=<int> | binomial:adaptive:v=<float> | categorical:D=<list>");
        cmd->add_option("--ordering", cfg.ordering, "uniform | bfs");
        cmd->add_option("--insertion", cfg.insertion, "auto | empirical-n | table | regressor");
        cmd->add_option("--filler", cfg.filler, "empirical | er:p=<float>");
        cmd->add_option("--halter", cfg.halter, "empirical | oracle:n=<int> | fixed-lambda:<float>");
        auto* seed = cmd->add_option("--seed", cfg.seed, "RNG seed");
        if (needs_seed) seed->required();
        cmd->add_option("--jobs", cfg.jobs, "worker threads (default: available cores)");
        cmd->add_flag("--dump-config", cfg.dump_config, "print resolved config and exit");
    };

    auto* seq = app.add_subcommand("sequences", "sample removal sequences into training records");
    seq->add_option("--dataset", cfg.dataset, "input graph file")->required()->check(CLI::ExistingFile);
    seq->add_option("--out", cfg.out, "output record file")->required();
    add_common(seq, true);

    auto* sample = app.add_subcommand("sample", "generate graphs with the insert-fill-halt loop");
    sample->add_option("--dataset", cfg.dataset, "training graph file")->required()->check(CLI::ExistingFile);
    sample->add_option("--out", cfg.out, "output graph file")->required();
    sample->add_option("--count", cfg.count, "number of graphs to generate");
    sample->add_option("--max-steps", cfg.max_steps, "truncation bound on fill steps");
    add_common(sample, true);

    auto* eval = app.add_subcommand("eval", "compare a generated set against a reference set");
    eval->add_option("--dataset", cfg.dataset, "reference graph file")->required()->check(CLI::ExistingFile);
    eval->add_option("--generated", cfg.generated, "generated graph file")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", cfg.out, "optional metric report file");
    add_common(eval, false);

    auto* schedule = app.add_subcommand("schedule", "print schedule tables and marginal pmfs");
    schedule->add_option("--n0", cfg.n0, "source node count for marginals");
    schedule->add_option("--out", cfg.out, "optional table file");
    add_common(schedule, false);
    schedule->get_option("--process")->required();

    auto* probe = app.add_subcommand("probe", "survey per-preset sequence costs on a dataset");
    probe->add_option("--dataset", cfg.dataset, "input graph file")->required()->check(CLI::ExistingFile);
    probe->add_option("--out", cfg.out, "optional cost report file");
    add_common(probe, true);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* cmd = app.get_subcommands().front();
        apply_preset(cfg, *cmd);
        const std::string name = cmd->get_name();
        if (cfg.dump_config) {
            std::cout << config_json(cfg, name).dump(2) << "\n";
            return 0;
        }
        if (name == "sequences") return cmd_sequences(cfg);
        if (name == "sample") return cmd_sample(cfg);
        if (name == "eval") return cmd_eval(cfg);
        if (name == "schedule") return cmd_schedule(cfg);
        if (name == "probe") return cmd_probe(cfg);
        throw std::logic_error("unhandled subcommand: " + name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
