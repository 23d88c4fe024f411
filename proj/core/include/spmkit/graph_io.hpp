#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "spmkit/graph.hpp"

namespace spmkit {

/// A graph loaded from disk together with the mapping from compact ids back
/// to the source file's node ids (original_ids[compact] = source id).
struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> original_ids;
};

/// Reads a whitespace-separated `src dst` edge list. Lines starting with `#`
/// and blank lines are ignored. Node ids are compacted to 0..N-1 in order of
/// first appearance. Malformed lines raise IoError with the line number;
/// a file with no edges raises IoError.
LoadedGraph load_edge_list(const std::filesystem::path& path);

/// Writes `src dst` lines, one per edge (i < j), in source-id space when a
/// mapping is given, compact-id space otherwise.
void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     const std::vector<std::int64_t>* original_ids = nullptr);

/// Id-mapping sidecar: two-column text `compact_id original_id`.
void write_id_map(const std::filesystem::path& path,
                  const std::vector<std::int64_t>& original_ids);
std::vector<std::int64_t> read_id_map(const std::filesystem::path& path);

}  // namespace spmkit
