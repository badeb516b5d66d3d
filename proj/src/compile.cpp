#include "maap/compile.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace maap {

namespace {

// A value known symbolically as an affine combination of net signals. A
// signal is the output of a neuron (input or hidden), identified by its
// position in the net under construction.
struct Form {
    Rational c;
    std::vector<std::pair<std::uint32_t, Rational>> terms;  // sorted by signal
    std::uint32_t level = 0;                                // max signal layer
};

// Support size beyond which a form is worth rematerializing before re-reads.
constexpr std::size_t kCompressThreshold = 16;
// How many candidate levels to probe for an identity pair before giving up.
constexpr std::uint32_t kCompressProbes = 8;

std::uint64_t minimal_hidden_count(const Instruction& ins) {
    switch (ins.kind) {
        case InstrKind::Affine:
            return 0;
        case InstrKind::Max:
        case InstrKind::Min:
            return ins.exprs.size() - 1;  // one neuron per pairwise gadget
        default: {
            std::uint64_t total = 0;
            for (const auto& c : ins.children) total += minimal_hidden_count(c);
            return total;
        }
    }
}

class Compiler {
public:
    explicit Compiler(const MaapProgram& p) : prog_(p) {
        if (auto report = validate_program(p); !report.ok())
            throw ValidationError("cannot compile invalid program:\n" + report.summary());
        if (p.outputs.empty()) throw ValidationError("cannot compile a program with no outputs");
        const Complexity ledger = complexity(p);
        width_budget_ = ledger.w;
        size_slack_ = ledger.s - minimal_hidden_count(p.body);
        env_.resize(count_vars(p));
    }

    ReluNet run() {
        for (std::size_t i = 0; i < prog_.inputs.size(); ++i) {
            std::uint32_t pos = add_neuron(0, Rational(0), Role::Input);
            Form f;
            f.terms = {{pos, Rational(1)}};
            env_[prog_.inputs[i]] = f;
        }
        exec(prog_.body);
        finish_outputs();
        return std::move(net_);
    }

private:
    std::uint32_t add_neuron(std::uint32_t layer, Rational bias, Role role) {
        std::uint32_t pos = static_cast<std::uint32_t>(net_.neurons.size());
        net_.neurons.push_back({pos, layer, std::move(bias), role});
        if (role == Role::Hidden) ++layer_count_[layer];
        return pos;
    }

    std::uint32_t add_hidden(std::uint32_t layer, Rational bias, const Form& input) {
        std::uint32_t pos = add_neuron(layer, std::move(bias), Role::Hidden);
        for (const auto& [sig, coef] : input.terms) net_.arcs.push_back({sig, pos, coef});
        return pos;
    }

    using Terms = std::vector<std::pair<std::uint32_t, Rational>>;

    // acc := acc + coef * terms, both sorted by signal; entries of acc are
    // moved, entries of terms are scaled into fresh values.
    static Terms merge_terms(Terms acc, const Rational& coef, const Terms& terms) {
        Terms next;
        next.reserve(acc.size() + terms.size());
        auto ia = acc.begin();
        auto ib = terms.begin();
        while (ia != acc.end() || ib != terms.end()) {
            if (ib == terms.end() || (ia != acc.end() && ia->first < ib->first)) {
                next.push_back(std::move(*ia));
                ++ia;
            } else if (ia == acc.end() || ib->first < ia->first) {
                next.push_back({ib->first, coef * ib->second});
                ++ib;
            } else {
                Rational w = std::move(ia->second);
                w += coef * ib->second;
                if (!w.is_zero()) next.push_back({ia->first, std::move(w)});
                ++ia;
                ++ib;
            }
        }
        return next;
    }

    void set_level_from_terms(Form& f) const {
        f.level = 0;
        for (const auto& [sig, w] : f.terms)
            f.level = std::max(f.level, net_.neurons[sig].layer);
    }

    // Levels are recomputed from the surviving terms so that layer indices
    // stay equal to true longest paths even when terms cancel.
    Form weighted_sum(const Rational& c,
                      const std::vector<std::pair<Rational, const Form*>>& parts) const {
        Form out;
        out.c = c;
        for (const auto& [coef, f] : parts) {
            out.c += coef * f->c;
            if (!f->terms.empty() && !coef.is_zero())
                out.terms = merge_terms(std::move(out.terms), coef, f->terms);
        }
        set_level_from_terms(out);
        return out;
    }

    Form eval_expr(const AffineExpr& e) const {
        std::vector<std::pair<Rational, const Form*>> parts;
        parts.reserve(e.terms().size());
        for (const auto& t : e.terms()) parts.push_back({t.coef, &env_[t.var]});
        return weighted_sum(e.constant_part(), parts);
    }

    // Affine assignment where the target may appear on the right-hand side
    // with unit coefficient (the accumulator pattern v <- v + small): the
    // target's dying form is stolen as the merge base instead of re-copying
    // its whole term list, which keeps long accumulation chains linear.
    Form eval_expr_into(VarId target, const AffineExpr& e) {
        const AffineTerm* self = nullptr;
        for (const auto& t : e.terms())
            if (t.var == target && t.coef == Rational(1)) self = &t;
        if (!self) return eval_expr(e);
        Form base = std::move(env_[target]);
        base.c += e.constant_part();
        for (const auto& t : e.terms()) {
            if (&t == self) continue;
            const Form& f = env_[t.var];
            base.c += t.coef * f.c;
            if (!f.terms.empty() && !t.coef.is_zero())
                base.terms = merge_terms(std::move(base.terms), t.coef, f.terms);
        }
        set_level_from_terms(base);
        return base;
    }

    std::uint32_t expr_level(const AffineExpr& e) const {
        std::uint32_t lvl = 0;
        for (const auto& t : e.terms()) lvl = std::max(lvl, env_[t.var].level);
        return lvl;
    }

    // Rematerializes wide forms referenced by the given expressions through
    // identity ReLU pairs when the budget allows. reader_level is the minimal
    // layer of the neuron about to consume these expressions; pairs are only
    // placed strictly below it so no reader is ever delayed.
    void maybe_compress_operands(const std::vector<const AffineExpr*>& exprs,
                                 std::uint32_t reader_level) {
        for (const AffineExpr* e : exprs) {
            for (const auto& t : e->terms()) {
                Form& f = env_[t.var];
                if (f.terms.size() < kCompressThreshold) continue;
                if (f.level + 1 >= reader_level) continue;  // no room below the reader
                const std::uint32_t lo = f.level + 1;
                const std::uint32_t hi =
                    std::min(reader_level - 1, lo + kCompressProbes - 1);
                for (std::uint32_t p = lo; p <= hi; ++p) {
                    if (size_slack_ < 2) return;
                    if (layer_count_[p] + 2 > width_budget_) continue;
                    std::uint32_t plus = add_hidden(p, f.c, f);
                    Form negated = weighted_sum(Rational(0), {{Rational(-1), &f}});
                    std::uint32_t minus = add_hidden(p, -f.c, negated);
                    size_slack_ -= 2;
                    Form packed;
                    packed.terms = {{plus, Rational(1)}, {minus, Rational(-1)}};
                    packed.level = p;
                    f = std::move(packed);
                    break;
                }
            }
        }
    }

    // One pairwise gadget: result = pass + sign * relu(arg), one hidden unit.
    // When the rectified difference carries no signal terms, the comparison
    // is settled symbolically and no neuron is emitted.
    Form binary_gadget(GadgetMode mode, const Form& x, const Form& y) {
        // Pass through the smaller operand; the gadget is symmetric.
        const Form& small = x.terms.size() <= y.terms.size() ? x : y;
        const Form& large = x.terms.size() <= y.terms.size() ? y : x;
        const Form* pass = nullptr;
        Form arg;  // the rectified difference
        Rational sign;
        if (mode == GadgetMode::Max) {
            // max{a, b} = a + relu(b - a) with a = small
            pass = &small;
            arg = weighted_sum(Rational(0), {{Rational(1), &large}, {Rational(-1), &small}});
            sign = Rational(1);
        } else {
            // min{a, b} = b - relu(b - a) with b = small
            pass = &small;
            arg = weighted_sum(Rational(0), {{Rational(1), &small}, {Rational(-1), &large}});
            // relu argument must be b - a: b = small, a = large
            sign = Rational(-1);
        }
        if (arg.terms.empty()) {
            const Rational rectified = arg.c.sign() > 0 ? arg.c : Rational(0);
            Form constant;
            constant.c = rectified * sign;
            return weighted_sum(Rational(0), {{Rational(1), pass}, {Rational(1), &constant}});
        }
        std::uint32_t level = 1 + arg.level;
        std::uint32_t h = add_hidden(level, arg.c, arg);
        Form relu_term;
        relu_term.c = Rational(0);
        relu_term.terms = {{h, Rational(1)}};
        relu_term.level = level;
        // bias of the hidden neuron carries arg.c; the form keeps only terms
        Form out = weighted_sum(Rational(0), {{Rational(1), pass}, {sign, &relu_term}});
        return out;
    }

    Form gadget_tree(GadgetMode mode, std::vector<Form> items) {
        while (items.size() > 1) {
            std::vector<Form> next;
            for (std::size_t i = 0; i + 1 < items.size(); i += 2)
                next.push_back(binary_gadget(mode, items[i], items[i + 1]));
            if (items.size() % 2 == 1) next.push_back(std::move(items.back()));
            items = std::move(next);
        }
        return std::move(items.front());
    }

    void exec(const Instruction& ins) {
        switch (ins.kind) {
            case InstrKind::Affine:
                env_[ins.target] = eval_expr_into(ins.target, ins.exprs.front());
                break;
            case InstrKind::Max:
            case InstrKind::Min: {
                std::uint32_t raw_level = 0;
                std::vector<const AffineExpr*> refs;
                for (const auto& e : ins.exprs) {
                    raw_level = std::max(raw_level, expr_level(e));
                    refs.push_back(&e);
                }
                maybe_compress_operands(refs, raw_level + 1);
                std::vector<Form> items;
                items.reserve(ins.exprs.size());
                for (const auto& e : ins.exprs) items.push_back(eval_expr(e));
                env_[ins.target] = gadget_tree(
                    ins.kind == InstrKind::Max ? GadgetMode::Max : GadgetMode::Min,
                    std::move(items));
                break;
            }
            case InstrKind::Seq:
            case InstrKind::ForDo:
            case InstrKind::Par:
            case InstrKind::ForDoPar:
                // Parallel blocks are write-disjoint, so sequential symbolic
                // execution in block order is faithful. Block locals need no
                // save/restore: their final symbolic values are simply never
                // read outside the block of a valid program.
                for (const auto& c : ins.children) exec(c);
                break;
        }
    }

    void finish_outputs() {
        std::uint32_t max_hidden = 0;
        bool any_non_output = !net_.neurons.empty();
        for (const auto& v : net_.neurons) max_hidden = std::max(max_hidden, v.layer);
        const std::uint32_t k_out = any_non_output ? std::max<std::uint32_t>(1, max_hidden + 1) : 0;
        std::vector<std::uint32_t> out_pos;
        for (VarId v : prog_.outputs) {
            const Form& f = env_[v];
            std::uint32_t pos = add_neuron(k_out, f.c, Role::Output);
            for (const auto& [sig, coef] : f.terms) net_.arcs.push_back({sig, pos, coef});
            out_pos.push_back(pos);
        }
        // Inputs the program never reads, and gadget units whose value ends up
        // unused (dead table entries of the emitted algorithm), still need an
        // outgoing arc so that out-degree zero identifies exactly the outputs.
        // A zero-weight arc to the first output changes nothing numerically.
        std::vector<bool> has_out(net_.neurons.size(), false);
        for (const auto& a : net_.arcs) has_out[a.src] = true;
        for (const auto& v : net_.neurons) {
            if (v.role != Role::Output && !has_out[v.id])
                net_.arcs.push_back({v.id, out_pos.front(), Rational(0)});
        }
    }

    const MaapProgram& prog_;
    ReluNet net_;
    std::vector<Form> env_;
    std::map<std::uint32_t, std::uint64_t> layer_count_;
    std::uint64_t width_budget_ = 0;
    std::uint64_t size_slack_ = 0;
};

}  // namespace

ReluNet compile(const MaapProgram& p) { return Compiler(p).run(); }

ReluNet max_gadget(std::uint32_t k, GadgetMode mode) {
    if (k < 2) throw ArityError("max/min gadget needs k >= 2 inputs");
    VarPool pool;
    MaapProgram p;
    std::vector<AffineExpr> terms;
    for (std::uint32_t i = 0; i < k; ++i) {
        VarId v = pool.fresh();
        p.inputs.push_back(v);
        terms.push_back(AffineExpr::var(v));
    }
    VarId out = pool.fresh();
    p.body = mode == GadgetMode::Max ? assign_max(out, std::move(terms))
                                     : assign_min(out, std::move(terms));
    p.outputs.push_back(out);
    return compile(p);
}

MaapProgram decompile(const ReluNet& net) {
    if (auto report = validate_net(net); !report.ok())
        throw ValidationError("cannot decompile invalid net:\n" + report.summary());
    const std::uint32_t k = net.depth();
    VarPool pool;
    MaapProgram prog;
    // o-variable per input and hidden neuron, a-variable per non-input neuron.
    std::map<std::uint32_t, VarId> o_var, a_var;
    std::vector<std::vector<std::size_t>> by_layer(k + 1);
    for (std::size_t i = 0; i < net.neurons.size(); ++i) {
        const Neuron& v = net.neurons[i];
        by_layer[v.layer].push_back(i);
        if (v.role == Role::Input) {
            o_var[v.id] = pool.fresh();
            prog.inputs.push_back(o_var[v.id]);
        }
    }
    std::map<std::uint32_t, std::vector<const NetArc*>> in_arcs;
    for (const auto& a : net.arcs) in_arcs[a.dst].push_back(&a);
    auto preactivation = [&](const Neuron& v) {
        std::vector<AffineTerm> terms;
        if (auto it = in_arcs.find(v.id); it != in_arcs.end())
            for (const NetArc* a : it->second) terms.push_back({a->weight, o_var.at(a->src)});
        return AffineExpr(v.bias, std::move(terms));
    };
    std::vector<Instruction> body_items;
    std::vector<Instruction> layer_loop;
    for (std::uint32_t layer = 1; layer + 1 <= k; ++layer) {
        std::vector<Instruction> blocks;
        for (std::size_t i : by_layer[layer]) {
            const Neuron& v = net.neurons[i];
            if (v.role != Role::Hidden) continue;
            VarId av = pool.fresh();
            VarId ov = pool.fresh();
            a_var[v.id] = av;
            Instruction pre = assign(av, preactivation(v));
            Instruction rect = assign_max(
                ov, {AffineExpr::constant(Rational(0)), AffineExpr::var(av)});
            o_var[v.id] = ov;
            blocks.push_back(seq({std::move(pre), std::move(rect)}));
        }
        if (!blocks.empty()) layer_loop.push_back(for_do_par(std::move(blocks)));
    }
    if (!layer_loop.empty()) body_items.push_back(for_do(std::move(layer_loop)));
    std::vector<Instruction> out_blocks;
    for (std::size_t i = 0; i < net.neurons.size(); ++i) {
        const Neuron& v = net.neurons[i];
        if (v.role != Role::Output) continue;
        VarId av = pool.fresh();
        a_var[v.id] = av;
        out_blocks.push_back(assign(av, preactivation(v)));
        prog.outputs.push_back(av);
    }
    body_items.push_back(for_do_par(std::move(out_blocks)));
    prog.body = seq(std::move(body_items));
    return prog;
}

namespace {

// Replaces every occurrence of a variable in a subtree that contains no
// parallel constructs (the sequentializer rewrites bottom-up, so none remain).
void rename_var(Instruction& ins, VarId from, VarId to) {
    switch (ins.kind) {
        case InstrKind::Affine:
        case InstrKind::Max:
        case InstrKind::Min: {
            if (ins.target == from) ins.target = to;
            for (auto& e : ins.exprs) {
                std::vector<AffineTerm> terms;
                bool touched = false;
                for (const auto& t : e.terms()) {
                    terms.push_back({t.coef, t.var == from ? (touched = true, to) : t.var});
                }
                if (touched) e = AffineExpr(e.constant_part(), std::move(terms));
            }
            break;
        }
        default:
            for (auto& c : ins.children) rename_var(c, from, to);
            break;
    }
}

struct Sequentializer {
    VarPool pool;

    Instruction rewrite(const Instruction& ins) {
        switch (ins.kind) {
            case InstrKind::Affine:
                return ins;
            case InstrKind::Max:
            case InstrKind::Min: {
                if (ins.exprs.size() <= 2) return ins;
                std::vector<Instruction> chain;
                VarId acc = pool.fresh();
                auto mk = [&](VarId tgt, std::vector<AffineExpr> ts) {
                    return ins.kind == InstrKind::Max ? assign_max(tgt, std::move(ts))
                                                      : assign_min(tgt, std::move(ts));
                };
                chain.push_back(mk(acc, {ins.exprs[0], ins.exprs[1]}));
                for (std::size_t i = 2; i + 1 < ins.exprs.size(); ++i)
                    chain.push_back(mk(acc, {AffineExpr::var(acc), ins.exprs[i]}));
                chain.push_back(mk(ins.target, {AffineExpr::var(acc), ins.exprs.back()}));
                return seq(std::move(chain));
            }
            case InstrKind::Seq:
            case InstrKind::ForDo: {
                Instruction out;
                out.kind = ins.kind;
                for (const auto& c : ins.children) out.children.push_back(rewrite(c));
                return out;
            }
            case InstrKind::Par:
            case InstrKind::ForDoPar: {
                std::vector<Instruction> blocks;
                for (std::size_t i = 0; i < ins.children.size(); ++i) {
                    Instruction b = rewrite(ins.children[i]);
                    if (i < ins.block_locals.size()) {
                        for (VarId l : ins.block_locals[i]) rename_var(b, l, pool.fresh());
                    }
                    blocks.push_back(std::move(b));
                }
                return seq(std::move(blocks));
            }
        }
        throw Error("unreachable");
    }
};

}  // namespace

MaapProgram sequentialize(const MaapProgram& p) {
    Sequentializer sq;
    sq.pool = VarPool(count_vars(p));
    MaapProgram out;
    out.inputs = p.inputs;
    out.outputs = p.outputs;
    out.body = sq.rewrite(p.body);
    return out;
}

}  // namespace maap
