#include "spmkit/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "spmkit/errors.hpp"
#include "spmkit/rng.hpp"

namespace spmkit {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double cv(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (mean == 0.0) return 0.0;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return std::sqrt(var) / mean;
}

}  // namespace

std::vector<TraceEvent> read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace: " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw IoError("trace file is empty: " + path.string());
    {
        auto header = split_csv_line(line);
        if (header.size() != 4 || header[0] != "timestamp" || header[1] != "src" ||
            header[2] != "dst" || header[3] != "malicious")
            throw IoError("trace header must be timestamp,src,dst,malicious: " +
                          path.string());
    }
    std::vector<TraceEvent> events;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": expected 4 fields");
        TraceEvent e;
        try {
            e.timestamp = std::stod(fields[0]);
            e.src = std::stoll(fields[1]);
            e.dst = std::stoll(fields[2]);
        } catch (const std::exception&) {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": bad numeric field");
        }
        if (fields[3] == "1" || fields[3] == "true") {
            e.malicious = true;
        } else if (fields[3] == "0" || fields[3] == "false") {
            e.malicious = false;
        } else {
            throw IoError(path.string() + ":" + std::to_string(line_no) +
                          ": malicious must be 0/1/true/false");
        }
        events.push_back(e);
    }
    return events;
}

void write_trace_csv(const std::filesystem::path& path,
                     std::span<const TraceEvent> events) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write trace: " + path.string());
    out << "timestamp,src,dst,malicious\n";
    out.precision(12);
    for (const auto& e : events)
        out << e.timestamp << ',' << e.src << ',' << e.dst << ','
            << (e.malicious ? 1 : 0) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

DeltaTDiagnostics delta_t_diagnostics(std::span<const TraceEvent> events) {
    double t_end = -std::numeric_limits<double>::infinity();
    std::map<std::int64_t, std::vector<double>> attacks;  // ordered for determinism
    for (const auto& e : events) {
        t_end = std::max(t_end, e.timestamp);
        if (e.malicious) attacks[e.src].push_back(e.timestamp);
    }
    if (attacks.empty())
        throw ConfigError("delta_t_diagnostics: trace has no malicious events");

    DeltaTDiagnostics d;
    for (auto& [host, ts] : attacks) {
        std::sort(ts.begin(), ts.end());
        if (ts.size() == 1) {
            ++d.single_attack_hosts;
        } else {
            for (std::size_t i = 1; i < ts.size(); ++i)
                d.inter_attack.push_back(ts[i] - ts[i - 1]);
        }
        d.last_attack_to_end.push_back(t_end - ts.back());
    }
    d.inter_attack_cv = cv(d.inter_attack);
    d.last_to_end_cv = cv(d.last_attack_to_end);
    return d;
}

std::vector<TraceEvent> synthetic_trace(const Graph& g, Model model,
                                        const SiidrParams& params,
                                        std::optional<int> patient_zero,
                                        int max_steps, std::uint64_t seed) {
    ActivityLog log;
    Trajectory traj = simulate(g, model, params, patient_zero, max_steps, seed, &log);

    std::vector<TraceEvent> events;
    events.reserve(log.events.size() + g.num_nodes());
    const int n = g.num_nodes();
    for (int v = 0; v < n; ++v)
        events.push_back({0.0, v, (v + 1) % n, false});
    // Scan targets only flavor the dst column; a separate stream keeps them
    // from perturbing the simulation's own draws.
    Rng dst_rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (auto [step, host] : log.events) {
        auto nbrs = g.neighbors(host);
        const std::int64_t dst =
            nbrs.empty() ? host
                         : nbrs[dst_rng.uniform_int(nbrs.size())];
        events.push_back({step * params.dt, host, dst, true});
    }
    return events;
}

}  // namespace spmkit
