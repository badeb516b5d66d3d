#pragma once

#include "maap/complexity.hpp"
#include "maap/ir.hpp"
#include "maap/relu_net.hpp"

namespace maap {

enum class GadgetMode { Max, Min };

// Network fragment computing the exact max (or min) of its k >= 2 inputs,
// built as a balanced tree of two-input gadgets. Each pairwise gadget uses a
// single hidden neuron and a skip connection for the pass-through operand:
//   max{a, b} = a + relu(b - a),   min{a, b} = b - relu(b - a).
// Statistics stay within (ceil(log2 k) + 1, 2k, 4k).
ReluNet max_gadget(std::uint32_t k, GadgetMode mode);

// Lowers a valid program to a network computing the same function exactly:
// forward(compile(p), x) == interpret(p, x) in rational mode for every x, and
// stats(compile(p)) <= (d + 1, w, s) componentwise where (d, w, s) is the
// program's ledger. Affine assignments become arcs and biases, max/min
// assignments instantiate gadget trees, and a final minimal-layer assignment
// keeps the depth equal to the longest gadget chain. Live values are carried
// across layers by skip connections; when a symbolic value grows wide enough
// that re-reading it would flood the net with arcs, it is rematerialized
// through an identity ReLU pair (relu(v) - relu(-v)), placed only where the
// ledger's width and size leave room and never on a level that would delay a
// reader.
ReluNet compile(const MaapProgram& p);

// Emits the generic program that executes a given net: per hidden layer a
// ForDoParallel over its neurons assigning the affine pre-activation and then
// its rectification, and an affine-only pass for the output layer. The
// resulting ledger is (d, 4w, 8s) for a net with stats (d + 1, w, s); see the
// measure rules (a 2-term max scores (1, 4, 8) per neuron).
MaapProgram decompile(const ReluNet& net);

// Width reduction: every parallel construct becomes a sequence (block-local
// variables are renamed fresh to keep them disjoint) and every k-ary max/min
// with k > 2 becomes a chain of binary ones through an accumulator. The
// interpretation is unchanged and the resulting width measure is at most 4.
MaapProgram sequentialize(const MaapProgram& p);

}  // namespace maap
