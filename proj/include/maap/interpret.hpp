#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "maap/ir.hpp"

namespace maap {

struct InterpretOptions {
    // Executes the blocks of Par/ForDoPar in reverse order. Write-disjoint
    // blocks make this observationally equivalent; tests rely on it.
    bool reverse_parallel_blocks = false;
};

// Address of an instruction in the body tree: child indices from the root.
using InstrPath = std::vector<int>;

namespace detail {

template <class T>
class Interpreter {
public:
    Interpreter(const MaapProgram& p, const InterpretOptions& opt,
                std::span<const InstrPath> snapshot_paths)
        : prog_(p), opt_(opt) {
        env_.resize(count_vars(p));
        for (std::size_t i = 0; i < snapshot_paths.size(); ++i)
            requests_.push_back({&snapshot_paths[i], i});
        snapshots_.resize(snapshot_paths.size());
    }

    std::vector<T> run(std::span<const T> inputs) {
        if (inputs.size() != prog_.inputs.size())
            throw ArityError("expected " + std::to_string(prog_.inputs.size()) +
                             " inputs, got " + std::to_string(inputs.size()));
        for (std::size_t i = 0; i < inputs.size(); ++i) env_[prog_.inputs[i]] = inputs[i];
        exec(prog_.body, requests_, 0);
        std::vector<T> out;
        out.reserve(prog_.outputs.size());
        for (VarId v : prog_.outputs) out.push_back(env_[v]);
        return out;
    }

    std::vector<std::vector<T>> take_snapshots() { return std::move(snapshots_); }

private:
    struct Request {
        const InstrPath* path;
        std::size_t index;
    };

    T eval(const AffineExpr& e) const {
        T acc = to_num<T>(e.constant_part());
        for (const auto& t : e.terms()) acc += to_num<T>(t.coef) * env_[t.var];
        return acc;
    }

    void exec(const Instruction& ins, const std::vector<Request>& reqs, std::size_t depth) {
        switch (ins.kind) {
            case InstrKind::Affine:
                env_[ins.target] = eval(ins.exprs.front());
                break;
            case InstrKind::Max:
            case InstrKind::Min: {
                if (ins.exprs.empty()) throw Error("max/min with no terms");
                T best = eval(ins.exprs.front());
                for (std::size_t i = 1; i < ins.exprs.size(); ++i) {
                    T v = eval(ins.exprs[i]);
                    if (ins.kind == InstrKind::Max ? (v > best) : (v < best)) best = std::move(v);
                }
                env_[ins.target] = std::move(best);
                break;
            }
            case InstrKind::Seq:
            case InstrKind::ForDo:
                exec_children(ins, reqs, depth, /*parallel=*/false);
                break;
            case InstrKind::Par:
            case InstrKind::ForDoPar:
                exec_children(ins, reqs, depth, /*parallel=*/true);
                break;
        }
        for (const auto& r : reqs)
            if (r.path->size() == depth) snapshots_[r.index] = env_;
    }

    void exec_children(const Instruction& ins, const std::vector<Request>& reqs,
                       std::size_t depth, bool parallel) {
        const std::size_t nb = ins.children.size();
        std::vector<std::size_t> order(nb);
        for (std::size_t i = 0; i < nb; ++i) order[i] = i;
        if (parallel && opt_.reverse_parallel_blocks) std::reverse(order.begin(), order.end());
        for (std::size_t idx : order) {
            std::vector<Request> sub;
            for (const auto& r : reqs)
                if (r.path->size() > depth && (*r.path)[depth] == static_cast<int>(idx))
                    sub.push_back(r);
            const std::vector<VarId>* locals = nullptr;
            if (parallel && idx < ins.block_locals.size() && !ins.block_locals[idx].empty())
                locals = &ins.block_locals[idx];
            std::vector<T> saved;
            if (locals) {
                saved.reserve(locals->size());
                for (VarId v : *locals) saved.push_back(env_[v]);
            }
            exec(ins.children[idx], sub, depth + 1);
            if (locals)
                for (std::size_t i = 0; i < locals->size(); ++i)
                    env_[(*locals)[i]] = std::move(saved[i]);
        }
    }

    const MaapProgram& prog_;
    const InterpretOptions& opt_;
    std::vector<T> env_;
    std::vector<Request> requests_;
    std::vector<std::vector<T>> snapshots_;
};

}  // namespace detail

template <class T>
std::vector<T> interpret(const MaapProgram& p, std::span<const T> inputs,
                         const InterpretOptions& opt = {}) {
    detail::Interpreter<T> in(p, opt, {});
    return in.run(inputs);
}

template <class T>
std::vector<T> interpret(const MaapProgram& p, const std::vector<T>& inputs,
                         const InterpretOptions& opt = {}) {
    return interpret<T>(p, std::span<const T>(inputs), opt);
}

// Debug mode of interpret: additionally captures a copy of the full variable
// environment right after the instruction at each requested path executes.
// Snapshot i corresponds to paths[i] and is indexed by VarId.
template <class T>
std::pair<std::vector<T>, std::vector<std::vector<T>>> interpret_with_snapshots(
    const MaapProgram& p, std::span<const T> inputs, std::span<const InstrPath> paths,
    const InterpretOptions& opt = {}) {
    detail::Interpreter<T> in(p, opt, paths);
    std::vector<T> out = in.run(inputs);
    return {std::move(out), in.take_snapshots()};
}

}  // namespace maap
