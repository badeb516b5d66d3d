#include "maap/maxflow.hpp"

#include <algorithm>

namespace maap::flow {

namespace {

struct FafEmission {
    std::vector<Instruction> instrs;
    FafLayout vars;
    std::size_t init_end = 0, fattest_end = 0, push_end = 0, cleanup_end = 0;
};

// Emits the subroutine body against the given residual-capacity variables.
// All working variables are drawn fresh from the pool, so the emission can be
// inlined repeatedly into one program.
FafEmission emit_faf(const FlowNetwork& net, std::uint32_t k,
                     const std::vector<VarId>& c_vars, VarPool& pool) {
    const std::uint32_t t = net.sink();
    const std::uint32_t s = net.source();
    const auto succ = net.successors();
    const auto pred = net.predecessors();
    const auto fw = net.forward_arcs();

    FafEmission em;
    em.vars.z.resize(net.arc_count());
    for (auto& v : em.vars.z) v = pool.fresh();
    em.vars.excess.assign(net.n, {});
    em.vars.fattest.assign(net.n, {});
    for (std::uint32_t v = 0; v < net.n; ++v) {
        if (v == t) continue;
        em.vars.excess[v].resize(k + 1);
        em.vars.fattest[v].resize(k + 1);
        for (std::uint32_t i = 1; i <= k; ++i) {
            em.vars.excess[v][i] = pool.fresh();
            em.vars.fattest[v][i] = pool.fresh();
        }
    }

    auto c_of = [&](std::uint32_t u, std::uint32_t v) {
        return AffineExpr::var(c_vars[net.arc_index(u, v)]);
    };
    auto zero = [] { return AffineExpr::constant(Rational(0)); };

    std::vector<Instruction>& out = em.instrs;

    // Initialization: all push flows and tables start at zero.
    {
        std::vector<Instruction> blocks;
        for (std::size_t fi : fw) {
            auto [v, w] = net.arcs[fi];
            blocks.push_back(seq({assign(em.vars.z[fi], zero()),
                                  assign(em.vars.z[net.arc_index(w, v)], zero())}));
        }
        out.push_back(for_do_par(std::move(blocks)));
    }
    {
        std::vector<Instruction> blocks;
        for (std::uint32_t i = 1; i <= k; ++i)
            for (std::uint32_t v = 0; v < net.n; ++v) {
                if (v == t) continue;
                blocks.push_back(seq({assign(em.vars.excess[v][i], zero()),
                                      assign(em.vars.fattest[v][i], zero())}));
            }
        out.push_back(for_do_par(std::move(blocks)));
    }
    em.init_end = out.size() - 1;

    // Fattest-path values. Base: one step to the sink is bounded by the arc
    // capacity. Then a[i][v] = max over successors w (excluding the sink) of
    // min{a[i-1][w], c_vw}; nodes with no such successor keep the initial 0.
    {
        std::vector<Instruction> blocks;
        for (std::uint32_t v : pred[t])
            blocks.push_back(assign(em.vars.fattest[v][1], c_of(v, t)));
        if (!blocks.empty()) out.push_back(for_do_par(std::move(blocks)));
    }
    if (k >= 2) {
        std::vector<Instruction> i_blocks;
        for (std::uint32_t i = 2; i <= k; ++i) {
            std::vector<Instruction> v_blocks;
            for (std::uint32_t v = 0; v < net.n; ++v) {
                if (v == t) continue;
                std::vector<Instruction> taps;
                std::vector<AffineExpr> tap_vars;
                for (std::uint32_t w : succ[v]) {
                    if (w == t) continue;
                    VarId m = pool.fresh();
                    taps.push_back(assign_min(
                        m, {AffineExpr::var(em.vars.fattest[w][i - 1]), c_of(v, w)}));
                    tap_vars.push_back(AffineExpr::var(m));
                }
                if (taps.empty()) continue;  // a[i][v] keeps its initial 0
                std::vector<Instruction> body;
                body.push_back(for_do_par(std::move(taps)));
                body.push_back(assign_max(em.vars.fattest[v][i], std::move(tap_vars)));
                v_blocks.push_back(seq(std::move(body)));
            }
            i_blocks.push_back(for_do_par(std::move(v_blocks)));
        }
        out.push_back(for_do(std::move(i_blocks)));
    }
    em.fattest_end = out.size() - 1;

    // Push phase: load the source with the fattest length-k value, then push
    // it towards the sink, nodes and successors in ascending index order.
    out.push_back(assign(em.vars.excess[s][k], AffineExpr::var(em.vars.fattest[s][k])));
    if (k >= 2) {
        std::vector<Instruction> i_blocks;
        for (std::uint32_t i = k; i >= 2; --i) {
            std::vector<Instruction> v_blocks;
            for (std::uint32_t v = 0; v < net.n; ++v) {
                if (v == t) continue;
                std::vector<Instruction> w_blocks;
                for (std::uint32_t w : succ[v]) {
                    if (w == t) continue;
                    VarId f = pool.fresh();
                    const std::size_t zi = net.arc_index(v, w);
                    // amount pushable over vw that can still reach the sink
                    AffineExpr headroom = AffineExpr::var(em.vars.fattest[w][i - 1])
                                              .minus(AffineExpr::var(em.vars.excess[w][i - 1]));
                    w_blocks.push_back(seq({
                        assign_min(f, {AffineExpr::var(em.vars.excess[v][i]), c_of(v, w),
                                       std::move(headroom)}),
                        assign(em.vars.z[zi],
                               AffineExpr::var(em.vars.z[zi]).plus(AffineExpr::var(f))),
                        assign(em.vars.excess[v][i],
                               AffineExpr::var(em.vars.excess[v][i]).minus(AffineExpr::var(f))),
                        assign(em.vars.excess[w][i - 1],
                               AffineExpr::var(em.vars.excess[w][i - 1]).plus(AffineExpr::var(f))),
                    }));
                }
                if (!w_blocks.empty()) v_blocks.push_back(for_do(std::move(w_blocks)));
            }
            i_blocks.push_back(for_do(std::move(v_blocks)));
        }
        out.push_back(for_do(std::move(i_blocks)));
    }
    {
        std::vector<Instruction> blocks;
        for (std::uint32_t v : pred[t]) {
            const std::size_t zi = net.arc_index(v, t);
            blocks.push_back(seq({assign(em.vars.z[zi], AffineExpr::var(em.vars.excess[v][1])),
                                  assign(em.vars.excess[v][1], zero())}));
        }
        if (!blocks.empty()) out.push_back(for_do_par(std::move(blocks)));
    }
    em.push_end = out.size() - 1;

    // Clean-up: return stranded excess backwards, nodes and predecessors in
    // reverse index order.
    if (k >= 3) {
        std::vector<Instruction> i_blocks;
        for (std::uint32_t i = 2; i + 1 <= k; ++i) {
            std::vector<Instruction> w_blocks;
            for (std::uint32_t wi = net.n; wi-- > 0;) {
                const std::uint32_t w = wi;
                if (w == t) continue;
                std::vector<Instruction> v_blocks;
                for (std::size_t pi = pred[w].size(); pi-- > 0;) {
                    const std::uint32_t v = pred[w][pi];
                    if (v == t) continue;
                    VarId b = pool.fresh();
                    const std::size_t zi = net.arc_index(v, w);
                    v_blocks.push_back(seq({
                        assign_min(b, {AffineExpr::var(em.vars.excess[w][i]),
                                       AffineExpr::var(em.vars.z[zi])}),
                        assign(em.vars.z[zi],
                               AffineExpr::var(em.vars.z[zi]).minus(AffineExpr::var(b))),
                        assign(em.vars.excess[w][i],
                               AffineExpr::var(em.vars.excess[w][i]).minus(AffineExpr::var(b))),
                        assign(em.vars.excess[v][i + 1],
                               AffineExpr::var(em.vars.excess[v][i + 1]).plus(AffineExpr::var(b))),
                    }));
                }
                if (!v_blocks.empty()) w_blocks.push_back(for_do(std::move(v_blocks)));
            }
            i_blocks.push_back(for_do(std::move(w_blocks)));
        }
        out.push_back(for_do(std::move(i_blocks)));
    }
    em.cleanup_end = out.size() - 1;

    // Net result per forward arc.
    {
        std::vector<Instruction> blocks;
        em.vars.y.resize(fw.size());
        for (std::size_t p = 0; p < fw.size(); ++p) {
            auto [v, w] = net.arcs[fw[p]];
            em.vars.y[p] = pool.fresh();
            blocks.push_back(assign(em.vars.y[p],
                                    AffineExpr::var(em.vars.z[fw[p]])
                                        .minus(AffineExpr::var(em.vars.z[net.arc_index(w, v)]))));
        }
        out.push_back(for_do_par(std::move(blocks)));
    }
    return em;
}

}  // namespace

FafBuild build_find_augmenting_flow(const FlowNetwork& net, std::uint32_t k) {
    if (k < 1 || k > net.n - 1)
        throw ArityError("path length k must lie in [1, n-1]");
    VarPool pool;
    FafBuild fb;
    fb.c_in.resize(net.arc_count());
    for (auto& v : fb.c_in) v = pool.fresh();
    FafEmission em = emit_faf(net, k, fb.c_in, pool);
    fb.prog.inputs = fb.c_in;
    fb.prog.outputs = em.vars.y;
    fb.prog.body = seq(std::move(em.instrs));
    fb.vars = std::move(em.vars);
    fb.after_init = {static_cast<int>(em.init_end)};
    fb.after_fattest = {static_cast<int>(em.fattest_end)};
    fb.after_push = {static_cast<int>(em.push_end)};
    fb.after_cleanup = {static_cast<int>(em.cleanup_end)};
    return fb;
}

MaxflowBuild build_maxflow_program(const FlowNetwork& net) {
    VarPool pool;
    MaxflowBuild mb;
    mb.n = net.n;
    mb.m = net.arc_count();
    mb.nu_in.resize(net.arc_count());
    for (auto& v : mb.nu_in) v = pool.fresh();
    mb.c_vars.resize(net.arc_count());
    for (auto& v : mb.c_vars) v = pool.fresh();
    const auto fw = net.forward_arcs();
    mb.x_vars.resize(fw.size());
    for (auto& v : mb.x_vars) v = pool.fresh();

    // x = 0 and c = capacities, per forward arc and its reverse.
    std::vector<Instruction> init_blocks;
    for (std::size_t p = 0; p < fw.size(); ++p) {
        auto [u, v] = net.arcs[fw[p]];
        const std::size_t rev = net.arc_index(v, u);
        init_blocks.push_back(seq({
            assign(mb.x_vars[p], AffineExpr::constant(Rational(0))),
            assign(mb.c_vars[fw[p]], AffineExpr::var(mb.nu_in[fw[p]])),
            assign(mb.c_vars[rev], AffineExpr::var(mb.nu_in[rev])),
        }));
    }

    std::vector<Instruction> k_blocks;
    for (std::uint32_t k = 1; k + 1 <= net.n; ++k) {
        std::vector<Instruction> i_blocks;
        for (std::size_t i = 0; i < net.arc_count(); ++i) {
            FafEmission em = emit_faf(net, k, mb.c_vars, pool);
            std::vector<Instruction> aug_blocks;
            for (std::size_t p = 0; p < fw.size(); ++p) {
                auto [u, v] = net.arcs[fw[p]];
                const std::size_t fwd = fw[p];
                const std::size_t rev = net.arc_index(v, u);
                aug_blocks.push_back(seq({
                    assign(mb.x_vars[p],
                           AffineExpr::var(mb.x_vars[p]).plus(AffineExpr::var(em.vars.y[p]))),
                    assign(mb.c_vars[fwd],
                           AffineExpr::var(mb.c_vars[fwd]).minus(AffineExpr::var(em.vars.y[p]))),
                    assign(mb.c_vars[rev],
                           AffineExpr::var(mb.c_vars[rev]).plus(AffineExpr::var(em.vars.y[p]))),
                }));
            }
            std::vector<Instruction> iteration = std::move(em.instrs);
            iteration.push_back(for_do_par(std::move(aug_blocks)));
            i_blocks.push_back(seq(std::move(iteration)));
        }
        k_blocks.push_back(for_do(std::move(i_blocks)));
    }

    mb.prog.inputs = mb.nu_in;
    mb.prog.outputs = mb.x_vars;
    mb.prog.body = seq({for_do_par(std::move(init_blocks)), for_do(std::move(k_blocks))});
    return mb;
}

InstrPath MaxflowBuild::inner_iteration_path(std::uint32_t k, std::size_t i) const {
    return {1, static_cast<int>(k - 1), static_cast<int>(i - 1)};
}

InstrPath MaxflowBuild::outer_iteration_path(std::uint32_t k) const {
    return {1, static_cast<int>(k - 1)};
}

Rational flow_value(const FlowNetwork& net, const FlowVector& x) {
    const auto fw = net.forward_arcs();
    if (x.y.size() != fw.size()) throw ArityError("flow vector size mismatch");
    Rational total;
    for (std::size_t i = 0; i < fw.size(); ++i) {
        auto [u, v] = net.arcs[fw[i]];
        if (u == net.source()) total += x.y[i];
        if (v == net.source()) total -= x.y[i];
    }
    return total;
}

}  // namespace maap::flow
