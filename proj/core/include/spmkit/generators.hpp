#pragma once

#include <cstdint>

#include "spmkit/graph.hpp"

namespace spmkit {

/// Preferential-attachment (Barabasi-Albert style) scale-free graph, the
/// synthetic stand-in for proprietary communication graphs. Starts from m
/// unconnected nodes; each subsequent node attaches to m distinct existing
/// nodes drawn proportionally to degree (uniformly while all degrees are
/// zero, which forces the first arrival to link to all m seeds). Total edges
/// come out to exactly m*(n-m). Deterministic per seed. Requires n > m >= 1.
Graph generate_scale_free(int n, int m, std::uint64_t seed);

}  // namespace spmkit
