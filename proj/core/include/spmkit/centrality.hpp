#pragma once

#include <string>
#include <vector>

#include "spmkit/graph.hpp"

namespace spmkit {

enum class CentralityKind { Degree, Ens, Nb };

std::string to_string(CentralityKind kind);

struct CentralityVector {
    CentralityKind kind;
    std::vector<double> scores;
};

/// Node scores used by the hardening strategies.
///  - Degree: plain degrees.
///  - Ens: Burt effective network size, d_i - 2*t_i/d_i with t_i the number
///    of edges among i's neighbors; 0 for isolated nodes.
///  - Nb: non-backtracking centrality. Leading eigenvector of the Hashimoto
///    operator on directed half-edges, computed on the 2-core (degree-1
///    vertices contribute nothing to non-backtracking walks); a node's score
///    is the sum over its incoming half-edges. Throws NumericalError when
///    the 2-core is empty.
CentralityVector centrality(const Graph& g, CentralityKind kind);

/// `node,score` CSV dump.
std::string centrality_csv(const CentralityVector& cv);

}  // namespace spmkit
