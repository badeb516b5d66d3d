#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maap/rational.hpp"

namespace maap {

// Edge weights of the complete graph on n vertices, one entry per unordered
// pair in lexicographic order: (1,2), (1,3), ..., (1,n), (2,3), ...
// Vertices are 1-based in the pair notation, 0-based in code.
struct EdgeWeightVector {
    std::uint32_t n = 0;
    std::vector<Rational> w;

    EdgeWeightVector() = default;
    EdgeWeightVector(std::uint32_t n_, std::vector<Rational> w_);

    // Index of unordered pair {i, j}, 0 <= i < j < n.
    static std::size_t pair_index(std::uint32_t n, std::uint32_t i, std::uint32_t j);
    static std::size_t pair_count(std::uint32_t n) {
        return static_cast<std::size_t>(n) * (n - 1) / 2;
    }

    const Rational& at(std::uint32_t i, std::uint32_t j) const {
        return w[pair_index(n, i, j)];
    }
};

// Undirected weighted graph given as an edge list (not necessarily complete).
struct WeightedGraph {
    struct Edge {
        std::uint32_t u, v;  // 0-based, u != v
        Rational w;
    };
    std::uint32_t n = 0;
    std::vector<Edge> edges;
};

// Fixed digraph for the flow problems. Nodes are 0-based with source 0 and
// sink n-1. The arc set is closed under reversal (missing reverse directions
// are added; their capacities are 0 on input). Arcs are kept in lexicographic
// (u, v) order; forward arcs are those with u < v.
struct FlowNetwork {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;  // E, canonical order

    static FlowNetwork make(std::uint32_t n,
                            std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs);

    std::uint32_t source() const { return 0; }
    std::uint32_t sink() const { return n - 1; }
    std::size_t arc_count() const { return arcs.size(); }  // m = |E|

    std::size_t arc_index(std::uint32_t u, std::uint32_t v) const;  // throws if absent
    std::optional<std::size_t> try_arc_index(std::uint32_t u, std::uint32_t v) const;

    std::vector<std::size_t> forward_arcs() const;  // indices into arcs, u < v
    // Successor / predecessor node lists in ascending index order.
    std::vector<std::vector<std::uint32_t>> successors() const;
    std::vector<std::vector<std::uint32_t>> predecessors() const;
};

struct CapacityVector {
    std::vector<Rational> c;  // aligned with FlowNetwork::arcs
};

struct FlowVector {
    std::vector<Rational> y;  // aligned with FlowNetwork::forward_arcs()
};

// Text formats shared with the CLI.
//   undirected: header "n m undirected", then m lines "u v weight" (1-based)
//   directed:   header "n m directed source=<s> sink=<t>", then "u v capacity"
WeightedGraph parse_undirected_graph(std::istream& in);
std::pair<FlowNetwork, CapacityVector> parse_directed_graph(std::istream& in);

}  // namespace maap
