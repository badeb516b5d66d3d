#pragma once

#include <optional>

#include "maap/graphs.hpp"
#include "maap/ir.hpp"

namespace maap::mst {

// Value-of-MST program for the complete graph on n >= 2 vertices. Inputs are
// the edge weights in lexicographic pair order. The construction eliminates
// the highest-numbered vertex per round: y <- min over arcs into it, a
// parallel star-mesh update x'_ij <- min{x_ij, x_in + x_jn - y}, then the
// same on the remaining n-1 vertices; the output accumulates the y values
// plus the final surviving edge weight. n = 2 is the identity on the single
// edge weight.
MaapProgram build_mst_program(std::uint32_t n);

// Packs an arbitrary connected graph into a complete-graph weight vector.
// Missing pairs get big_M, which must exceed (n-1) times the largest edge
// weight so they can never enter a minimum spanning tree. Default:
// 1 + n * max|w|.
EdgeWeightVector mst_input_vector(const WeightedGraph& g,
                                  std::optional<Rational> big_M = std::nullopt);

}  // namespace maap::mst
