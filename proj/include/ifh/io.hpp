#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ifh/graph.hpp"
#include "ifh/record.hpp"

namespace ifh {

// Line-delimited JSON, one graph per line:
//   {"id":0,"n":3,"node_labels":[0,0,0],"edges":[[0,1,0],[1,2,0]],"undirected":true}
nlohmann::json graph_to_json(const Graph& g, long id);
Graph graph_from_json(const nlohmann::json& j);

std::vector<Graph> load_dataset(const std::string& path);
void save_dataset(const std::string& path, const std::vector<Graph>& graphs,
                  const std::vector<bool>* truncated = nullptr);

nlohmann::json record_to_json(const RemovalRecord& rec);
RemovalRecord record_from_json(const nlohmann::json& j);

std::vector<RemovalRecord> load_records(const std::string& path);
void save_records(const std::string& path, const std::vector<RemovalRecord>& records);

// FNV-1a 64 content hash, hex encoded.
std::string file_digest_hex(const std::string& path);

// Writes content to path atomically: temp file in the same directory, then
// rename on success.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ifh
