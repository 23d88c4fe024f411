#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "spmkit/epidemic.hpp"
#include "spmkit/graph.hpp"

namespace spmkit {

/// One observed communication event from an attack trace.
struct TraceEvent {
    double timestamp = 0.0;  // seconds
    std::int64_t src = 0;
    std::int64_t dst = 0;
    bool malicious = false;
};

/// CSV with a required `timestamp,src,dst,malicious` header. malicious is
/// 0/1 or true/false.
std::vector<TraceEvent> read_trace_csv(const std::filesystem::path& path);
void write_trace_csv(const std::filesystem::path& path,
                     std::span<const TraceEvent> events);

/// Heterogeneity diagnostics behind the dormancy and recovery modeling
/// arguments: gaps between consecutive attacks of the same host, and the gap
/// between each host's last attack and the end of observation.
struct DeltaTDiagnostics {
    std::vector<double> inter_attack;        // pooled over hosts
    std::vector<double> last_attack_to_end;  // one per attacking host
    int single_attack_hosts = 0;             // excluded from inter_attack
    double inter_attack_cv = 0.0;            // coefficient of variation
    double last_to_end_cv = 0.0;
};

DeltaTDiagnostics delta_t_diagnostics(std::span<const TraceEvent> events);

/// Emits a synthetic attack trace from a stochastic simulation: every step a
/// host spends actively infectious produces one malicious event to a random
/// neighbor, and every host announces itself with one benign event at t=0 so
/// the trace covers the full population. Timestamps are step * params.dt.
std::vector<TraceEvent> synthetic_trace(const Graph& g, Model model,
                                        const SiidrParams& params,
                                        std::optional<int> patient_zero,
                                        int max_steps, std::uint64_t seed);

}  // namespace spmkit
