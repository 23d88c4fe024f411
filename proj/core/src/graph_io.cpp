#include "spmkit/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "spmkit/errors.hpp"

namespace spmkit {

namespace {

bool parse_i64(std::string_view token, std::int64_t& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

LoadedGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path.string());

    std::unordered_map<std::int64_t, int> compact;
    std::vector<std::int64_t> original_ids;
    auto intern = [&](std::int64_t id) {
        auto [it, inserted] = compact.try_emplace(id, static_cast<int>(original_ids.size()));
        if (inserted) original_ids.push_back(id);
        return it->second;
    };

    std::vector<std::pair<int, int>> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        fields >> a >> b;
        if (!fields || (fields >> extra)) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected `src dst`, got: " + line);
        }
        std::int64_t src, dst;
        if (!parse_i64(a, src) || !parse_i64(b, dst)) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": non-integer node id: " + line);
        }
        // Sequence the interning: ids follow first appearance, src before dst.
        const int src_id = intern(src);
        const int dst_id = intern(dst);
        edges.emplace_back(src_id, dst_id);
    }
    if (original_ids.empty())
        throw IoError("edge list has no edges: " + path.string());

    LoadedGraph result;
    result.graph = Graph::from_edges(static_cast<int>(original_ids.size()), std::move(edges));
    result.original_ids = std::move(original_ids);
    return result;
}

void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     const std::vector<std::int64_t>* original_ids) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write edge list: " + path.string());
    for (auto [i, j] : g.edges()) {
        if (original_ids) {
            out << (*original_ids)[i] << ' ' << (*original_ids)[j] << '\n';
        } else {
            out << i << ' ' << j << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_id_map(const std::filesystem::path& path,
                  const std::vector<std::int64_t>& original_ids) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write id map: " + path.string());
    for (std::size_t i = 0; i < original_ids.size(); ++i)
        out << i << ' ' << original_ids[i] << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::int64_t> read_id_map(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open id map: " + path.string());
    std::vector<std::int64_t> ids;
    std::size_t idx;
    std::int64_t original;
    while (in >> idx >> original) {
        if (idx != ids.size())
            throw IoError("id map rows out of order: " + path.string());
        ids.push_back(original);
    }
    return ids;
}

}  // namespace spmkit
