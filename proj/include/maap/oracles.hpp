#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maap/graphs.hpp"

namespace maap::oracle {

// Classical reference implementations, all in exact rational arithmetic.
// They define ground truth for the program and network equivalence tests and
// favor obviousness over speed.

// Exact MST value of the complete graph with the given weights.
Rational kruskal(const EdgeWeightVector& x);

// Minimum over all n^(n-2) spanning trees, enumerated via Pruefer sequences.
// Limited to n <= 7.
Rational brute_force_mst(const EdgeWeightVector& x);

struct MaxflowResult {
    FlowVector flow;  // signed values on forward arcs
    Rational value;
};

// Shortest-augmenting-path maximum flow.
MaxflowResult edmonds_karp(const FlowNetwork& net, const CapacityVector& nu);

// BFS distances from the source over arcs with c_e > 0; nullopt = unreachable.
std::vector<std::optional<std::uint32_t>> residual_distances(const FlowNetwork& net,
                                                             const CapacityVector& c);
// Same, towards the sink (distance from each node to t).
std::vector<std::optional<std::uint32_t>> residual_distances_to_sink(const FlowNetwork& net,
                                                                     const CapacityVector& c);

struct FlowCheck {
    bool feasible = true;
    std::vector<std::string> violations;
};

// Capacity bounds (-nu_vu <= y_uv <= nu_uv per forward arc) and flow
// conservation at every node except source and sink.
FlowCheck check_flow(const FlowNetwork& net, const CapacityVector& nu, const FlowVector& x);

// Minimum s-t cut value by enumerating all 2^(n-2) node partitions (n <= 20).
Rational min_cut_brute_force(const FlowNetwork& net, const CapacityVector& nu);

// Arcs that lie on an s-t path of length exactly k in the residual network.
// Returned as indices into net.arcs.
std::vector<std::size_t> arcs_on_exact_length_paths(const FlowNetwork& net,
                                                    const CapacityVector& c, std::uint32_t k);

}  // namespace maap::oracle
