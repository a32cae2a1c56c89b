#include "ifh/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ifh {

using nlohmann::json;

namespace {

json edges_to_json(const std::vector<Edge>& edges) {
    json arr = json::array();
    for (const auto& e : edges) arr.push_back({e.u, e.v, e.label});
    return arr;
}

std::vector<Edge> edges_from_json(const json& arr) {
    std::vector<Edge> edges;
    for (const auto& e : arr) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    return edges;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

}  // namespace

json graph_to_json(const Graph& g, long id) {
    json j;
    j["id"] = id;
    j["n"] = g.n();
    j["node_labels"] = g.node_labels();
    j["edges"] = edges_to_json(g.edges());
    j["undirected"] = g.undirected();
    return j;
}

Graph graph_from_json(const json& j) {
    auto labels = j.at("node_labels").get<std::vector<int>>();
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(labels.size()))
        throw std::invalid_argument("graph record: n does not match node_labels length");
    return Graph(std::move(labels), edges_from_json(j.at("edges")), j.at("undirected").get<bool>());
}

std::vector<Graph> load_dataset(const std::string& path) {
    auto in = open_input(path);
    std::vector<Graph> graphs;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            graphs.push_back(graph_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return graphs;
}

void save_dataset(const std::string& path, const std::vector<Graph>& graphs,
                  const std::vector<bool>* truncated) {
    std::ostringstream out;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        json j = graph_to_json(graphs[i], static_cast<long>(i));
        if (truncated && (*truncated)[i]) j["truncated"] = true;
        out << j.dump() << '\n';
    }
    write_file_atomic(path, out.str());
}

json record_to_json(const RemovalRecord& rec) {
    json j;
    j["graph_id"] = rec.graph_id;
    j["t"] = rec.t;
    j["T"] = rec.total_steps;
    j["n_t"] = rec.n_t;
    j["r_t"] = rec.r_t;
    j["h_t"] = rec.h_t;
    j["kept"] = {{"node_labels", rec.kept.node_labels()},
                 {"edges", edges_to_json(rec.kept.edges())},
                 {"undirected", rec.kept.undirected()}};
    j["block_labels"] = rec.block_labels;
    j["block_edges"] = edges_to_json(rec.block_edges);
    j["inter_ab"] = edges_to_json(rec.inter_ab);
    j["inter_ba"] = edges_to_json(rec.inter_ba);
    j["ordering"] = rec.ordering;
    return j;
}

RemovalRecord record_from_json(const json& j) {
    RemovalRecord rec;
    rec.graph_id = j.at("graph_id").get<long>();
    rec.t = j.at("t").get<int>();
    rec.total_steps = j.at("T").get<int>();
    rec.n_t = j.at("n_t").get<int>();
    rec.r_t = j.at("r_t").get<int>();
    rec.h_t = j.at("h_t").get<int>();
    const json& kept = j.at("kept");
    rec.kept = Graph(kept.at("node_labels").get<std::vector<int>>(),
                     edges_from_json(kept.at("edges")), kept.at("undirected").get<bool>());
    rec.block_labels = j.at("block_labels").get<std::vector<int>>();
    rec.block_edges = edges_from_json(j.at("block_edges"));
    rec.inter_ab = edges_from_json(j.at("inter_ab"));
    rec.inter_ba = edges_from_json(j.at("inter_ba"));
    rec.ordering = j.at("ordering").get<std::vector<int>>();
    return rec;
}

std::vector<RemovalRecord> load_records(const std::string& path) {
    auto in = open_input(path);
    std::vector<RemovalRecord> records;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

void save_records(const std::string& path, const std::vector<RemovalRecord>& records) {
    std::ostringstream out;
    for (const auto& rec : records) out << record_to_json(rec).dump() << '\n';
    write_file_atomic(path, out.str());
}

std::string file_digest_hex(const std::string& path) {
    auto in = open_input(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace ifh
