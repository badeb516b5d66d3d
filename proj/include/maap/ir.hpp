#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maap/rational.hpp"
#include "maap/validation.hpp"

namespace maap {

using VarId = std::uint32_t;

struct AffineTerm {
    Rational coef;
    VarId var;
};

// b + sum(c_j * v_j). Terms are kept sorted by variable id with duplicate
// variables merged and zero coefficients dropped at construction.
class AffineExpr {
public:
    AffineExpr() = default;
    explicit AffineExpr(Rational c) : const_(std::move(c)) {}
    AffineExpr(Rational c, std::vector<AffineTerm> terms);

    static AffineExpr constant(Rational c) { return AffineExpr(std::move(c)); }
    static AffineExpr var(VarId v) { return AffineExpr(Rational(0), {{Rational(1), v}}); }

    const Rational& constant_part() const { return const_; }
    const std::vector<AffineTerm>& terms() const { return terms_; }

    // Arithmetic on expressions, used by the program builders.
    AffineExpr plus(const AffineExpr& o) const;
    AffineExpr minus(const AffineExpr& o) const;
    AffineExpr scaled(const Rational& f) const;

    friend bool operator==(const AffineExpr& a, const AffineExpr& b);

private:
    Rational const_;
    std::vector<AffineTerm> terms_;
};

bool operator==(const AffineTerm& a, const AffineTerm& b);

enum class InstrKind { Affine, Max, Min, Seq, Par, ForDo, ForDoPar };

// One node of a program body. Assignment kinds use target/exprs, the block
// kinds use children. Loops are stored pre-unrolled: children holds one block
// per iteration, so the trip count is children.size(). Par and ForDoPar may
// carry per-block local variables in block_locals (parallel to children);
// locals are scoped to their block and exempt from write-disjointness.
struct Instruction {
    InstrKind kind = InstrKind::Seq;
    VarId target = 0;
    std::vector<AffineExpr> exprs;
    std::vector<Instruction> children;
    std::vector<std::vector<VarId>> block_locals;
};

bool operator==(const Instruction& a, const Instruction& b);

// Builder helpers. assign_max/assign_min normalize a 1-term list to a plain
// affine assignment so the complexity recursion stays total.
Instruction assign(VarId target, AffineExpr e);
Instruction assign_max(VarId target, std::vector<AffineExpr> terms);
Instruction assign_min(VarId target, std::vector<AffineExpr> terms);
Instruction seq(std::vector<Instruction> items);
Instruction par(std::vector<Instruction> blocks, std::vector<std::vector<VarId>> locals = {});
Instruction for_do(std::vector<Instruction> iteration_blocks);
Instruction for_do_par(std::vector<Instruction> iteration_blocks,
                       std::vector<std::vector<VarId>> locals = {});

struct MaapProgram {
    std::vector<VarId> inputs;
    std::vector<VarId> outputs;
    Instruction body;
};

bool operator==(const MaapProgram& a, const MaapProgram& b);

// Smallest id not used anywhere in the program (inputs, outputs, body).
VarId count_vars(const MaapProgram& p);

// Hands out fresh variable ids; builders thread one through construction.
class VarPool {
public:
    VarPool() = default;
    explicit VarPool(VarId first) : next_(first) {}
    VarId fresh() { return next_++; }
    VarId peek() const { return next_; }

private:
    VarId next_ = 0;
};

// Static checks: use-before-def in program order, write-disjointness of
// parallel blocks, max/min arity, duplicate inputs, defined outputs.
// Violations are data; an empty report means the program is valid.
ValidationReport validate_program(const MaapProgram& p);

// ForDo becomes Seq, ForDoPar becomes Par, recursively. Complexity and
// interpretation are unchanged.
MaapProgram unroll(const MaapProgram& p);
Instruction unroll_instr(const Instruction& ins);

}  // namespace maap
