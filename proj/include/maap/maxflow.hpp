#pragma once

#include <cstdint>
#include <vector>

#include "maap/graphs.hpp"
#include "maap/interpret.hpp"
#include "maap/ir.hpp"

namespace maap::flow {

// Variable tables of one augmenting-flow subroutine instance, for inspecting
// intermediate state through snapshot interpretation.
struct FafLayout {
    std::vector<VarId> z;                      // per arc index: push flow
    std::vector<std::vector<VarId>> excess;    // [v][i], v != sink, i in 1..k
    std::vector<std::vector<VarId>> fattest;   // [v][i], v != sink, i in 1..k
    std::vector<VarId> y;                      // per forward-arc position
};

struct FafBuild {
    MaapProgram prog;  // inputs: residual capacities per arc; outputs: y per forward arc
    FafLayout vars;
    std::vector<VarId> c_in;
    // Snapshot paths into prog.body after each phase.
    InstrPath after_init, after_fattest, after_push, after_cleanup;
};

// The length-k augmenting-flow routine for a fixed network. Four phases:
// zero-initialization, fattest-path table a[i][v] (the most flow sendable
// from v to the sink on a single residual path of length exactly i), a greedy
// push of a[k][source] units in node-index order, and a clean-up sweep in
// reverse index order that returns stranded excess. If the residual distance
// from source to sink is at least k, the output is a feasible flow supported
// on arcs of exact-length-k source-sink paths; if the distance equals k the
// flow is strictly positive and saturates at least one residual arc.
FafBuild build_find_augmenting_flow(const FlowNetwork& net, std::uint32_t k);

struct MaxflowBuild {
    MaapProgram prog;  // inputs: capacities per arc; outputs: x per forward arc
    std::vector<VarId> nu_in;
    std::vector<VarId> x_vars;  // flow accumulators (the outputs)
    std::vector<VarId> c_vars;  // residual capacities
    std::uint32_t n = 0;
    std::size_t m = 0;

    // Path to the Seq node of inner iteration (k, i), both 1-based; a
    // snapshot there sees x and c right after that augmentation.
    InstrPath inner_iteration_path(std::uint32_t k, std::size_t i) const;
    // Path to the node after which outer iteration k is complete.
    InstrPath outer_iteration_path(std::uint32_t k) const;
};

// The full max-flow program: x = 0, c = capacities, then for k = 1..n-1 and
// i = 1..m: find a length-k augmenting flow and augment x and c by it.
MaxflowBuild build_maxflow_program(const FlowNetwork& net);

// Net flow out of the source under the signed forward-arc convention.
Rational flow_value(const FlowNetwork& net, const FlowVector& x);

}  // namespace maap::flow
