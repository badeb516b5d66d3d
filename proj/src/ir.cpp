#include "maap/ir.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace maap {

AffineExpr::AffineExpr(Rational c, std::vector<AffineTerm> terms) : const_(std::move(c)) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const AffineTerm& a, const AffineTerm& b) { return a.var < b.var; });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().var == t.var) {
            terms_.back().coef += t.coef;
        } else {
            terms_.push_back(std::move(t));
        }
    }
    std::erase_if(terms_, [](const AffineTerm& t) { return t.coef.is_zero(); });
}

AffineExpr AffineExpr::plus(const AffineExpr& o) const {
    std::vector<AffineTerm> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return AffineExpr(const_ + o.const_, std::move(ts));
}

AffineExpr AffineExpr::minus(const AffineExpr& o) const {
    std::vector<AffineTerm> ts = terms_;
    for (const auto& t : o.terms_) ts.push_back({-t.coef, t.var});
    return AffineExpr(const_ - o.const_, std::move(ts));
}

AffineExpr AffineExpr::scaled(const Rational& f) const {
    std::vector<AffineTerm> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back({t.coef * f, t.var});
    return AffineExpr(const_ * f, std::move(ts));
}

bool operator==(const AffineTerm& a, const AffineTerm& b) {
    return a.var == b.var && a.coef == b.coef;
}

bool operator==(const AffineExpr& a, const AffineExpr& b) {
    return a.const_ == b.const_ && a.terms_ == b.terms_;
}

bool operator==(const Instruction& a, const Instruction& b) {
    return a.kind == b.kind && a.target == b.target && a.exprs == b.exprs &&
           a.children == b.children && a.block_locals == b.block_locals;
}

bool operator==(const MaapProgram& a, const MaapProgram& b) {
    return a.inputs == b.inputs && a.outputs == b.outputs && a.body == b.body;
}

Instruction assign(VarId target, AffineExpr e) {
    Instruction ins;
    ins.kind = InstrKind::Affine;
    ins.target = target;
    ins.exprs.push_back(std::move(e));
    return ins;
}

static Instruction assign_minmax(InstrKind kind, VarId target, std::vector<AffineExpr> terms) {
    if (terms.size() == 1) return assign(target, std::move(terms.front()));
    Instruction ins;
    ins.kind = kind;
    ins.target = target;
    ins.exprs = std::move(terms);
    return ins;
}

Instruction assign_max(VarId target, std::vector<AffineExpr> terms) {
    return assign_minmax(InstrKind::Max, target, std::move(terms));
}

Instruction assign_min(VarId target, std::vector<AffineExpr> terms) {
    return assign_minmax(InstrKind::Min, target, std::move(terms));
}

Instruction seq(std::vector<Instruction> items) {
    Instruction ins;
    ins.kind = InstrKind::Seq;
    ins.children = std::move(items);
    return ins;
}

static Instruction block_instr(InstrKind kind, std::vector<Instruction> blocks,
                               std::vector<std::vector<VarId>> locals) {
    Instruction ins;
    ins.kind = kind;
    ins.children = std::move(blocks);
    if (!locals.empty() && locals.size() != ins.children.size())
        throw Error("block locals must be given for every block or not at all");
    bool any = false;
    for (const auto& ls : locals) any = any || !ls.empty();
    if (any) ins.block_locals = std::move(locals);
    return ins;
}

Instruction par(std::vector<Instruction> blocks, std::vector<std::vector<VarId>> locals) {
    return block_instr(InstrKind::Par, std::move(blocks), std::move(locals));
}

Instruction for_do(std::vector<Instruction> iteration_blocks) {
    Instruction ins;
    ins.kind = InstrKind::ForDo;
    ins.children = std::move(iteration_blocks);
    return ins;
}

Instruction for_do_par(std::vector<Instruction> iteration_blocks,
                       std::vector<std::vector<VarId>> locals) {
    return block_instr(InstrKind::ForDoPar, std::move(iteration_blocks), std::move(locals));
}

static void max_var_scan(const Instruction& ins, VarId& m) {
    switch (ins.kind) {
        case InstrKind::Affine:
        case InstrKind::Max:
        case InstrKind::Min:
            m = std::max(m, ins.target + 1);
            for (const auto& e : ins.exprs)
                for (const auto& t : e.terms()) m = std::max(m, t.var + 1);
            break;
        default:
            for (const auto& c : ins.children) max_var_scan(c, m);
            for (const auto& ls : ins.block_locals)
                for (VarId v : ls) m = std::max(m, v + 1);
            break;
    }
}

VarId count_vars(const MaapProgram& p) {
    VarId m = 0;
    for (VarId v : p.inputs) m = std::max(m, v + 1);
    for (VarId v : p.outputs) m = std::max(m, v + 1);
    max_var_scan(p.body, m);
    return m;
}

namespace {

// Reads and writes of an instruction subtree, ignoring variables that are
// local to some parallel block inside it.
void collect_reads_writes(const Instruction& ins, std::set<VarId> active_locals,
                          std::set<VarId>& reads, std::set<VarId>& writes) {
    switch (ins.kind) {
        case InstrKind::Affine:
        case InstrKind::Max:
        case InstrKind::Min:
            for (const auto& e : ins.exprs)
                for (const auto& t : e.terms())
                    if (!active_locals.count(t.var)) reads.insert(t.var);
            if (!active_locals.count(ins.target)) writes.insert(ins.target);
            break;
        case InstrKind::Seq:
        case InstrKind::ForDo:
            for (const auto& c : ins.children)
                collect_reads_writes(c, active_locals, reads, writes);
            break;
        case InstrKind::Par:
        case InstrKind::ForDoPar:
            for (std::size_t i = 0; i < ins.children.size(); ++i) {
                std::set<VarId> inner = active_locals;
                if (i < ins.block_locals.size())
                    inner.insert(ins.block_locals[i].begin(), ins.block_locals[i].end());
                collect_reads_writes(ins.children[i], std::move(inner), reads, writes);
            }
            break;
    }
}

struct Validator {
    ValidationReport report;

    // defined is the set of variables carrying a value at this point.
    void walk(const Instruction& ins, std::set<VarId>& defined) {
        switch (ins.kind) {
            case InstrKind::Affine:
            case InstrKind::Max:
            case InstrKind::Min:
                if (ins.kind != InstrKind::Affine && ins.exprs.size() < 2) {
                    report.add("arity", "max/min assignment to v" + std::to_string(ins.target) +
                                            " has " + std::to_string(ins.exprs.size()) +
                                            " term(s); at least 2 required");
                }
                for (const auto& e : ins.exprs)
                    for (const auto& t : e.terms())
                        if (!defined.count(t.var))
                            report.add("use-before-def",
                                       "v" + std::to_string(t.var) + " read before assignment");
                defined.insert(ins.target);
                break;
            case InstrKind::Seq:
            case InstrKind::ForDo:
                for (const auto& c : ins.children) walk(c, defined);
                break;
            case InstrKind::Par:
            case InstrKind::ForDoPar:
                walk_parallel(ins, defined);
                break;
        }
    }

    void walk_parallel(const Instruction& ins, std::set<VarId>& defined) {
        const std::size_t nb = ins.children.size();
        std::vector<std::set<VarId>> reads(nb), writes(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            std::set<VarId> locals;
            if (i < ins.block_locals.size())
                locals.insert(ins.block_locals[i].begin(), ins.block_locals[i].end());
            collect_reads_writes(ins.children[i], locals, reads[i], writes[i]);
        }
        std::set<VarId> reported;
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = 0; j < nb; ++j) {
                if (i == j) continue;
                for (VarId v : writes[i]) {
                    if ((writes[j].count(v) || reads[j].count(v)) && reported.insert(v).second) {
                        report.add("par-write-conflict",
                                   "v" + std::to_string(v) +
                                       " assigned in one parallel block and used in a sibling");
                    }
                }
            }
        }
        // Each block starts from the same environment; its locals shadow any
        // outer binding and evaporate afterwards.
        std::set<VarId> after = defined;
        for (std::size_t i = 0; i < nb; ++i) {
            std::set<VarId> locals;
            if (i < ins.block_locals.size())
                locals.insert(ins.block_locals[i].begin(), ins.block_locals[i].end());
            std::set<VarId> inner = defined;
            for (VarId v : locals) inner.erase(v);
            walk(ins.children[i], inner);
            for (VarId v : inner)
                if (!locals.count(v)) after.insert(v);
        }
        defined = std::move(after);
    }
};

}  // namespace

ValidationReport validate_program(const MaapProgram& p) {
    Validator v;
    std::set<VarId> defined;
    for (VarId in : p.inputs) {
        if (!defined.insert(in).second)
            v.report.add("input-dup", "v" + std::to_string(in) + " listed twice as input");
    }
    v.walk(p.body, defined);
    for (VarId out : p.outputs) {
        if (!defined.count(out))
            v.report.add("output-undefined",
                         "output v" + std::to_string(out) + " never assigned");
    }
    return v.report;
}

Instruction unroll_instr(const Instruction& ins) {
    Instruction out = ins;
    out.children.clear();
    for (const auto& c : ins.children) out.children.push_back(unroll_instr(c));
    if (ins.kind == InstrKind::ForDo) out.kind = InstrKind::Seq;
    if (ins.kind == InstrKind::ForDoPar) out.kind = InstrKind::Par;
    return out;
}

MaapProgram unroll(const MaapProgram& p) {
    MaapProgram out;
    out.inputs = p.inputs;
    out.outputs = p.outputs;
    out.body = unroll_instr(p.body);
    return out;
}

}  // namespace maap
