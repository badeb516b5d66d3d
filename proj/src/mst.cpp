#include "maap/mst.hpp"

#include <numeric>

namespace maap::mst {

MaapProgram build_mst_program(std::uint32_t n) {
    if (n < 2) throw ArityError("MST program needs n >= 2 vertices");
    VarPool pool;
    MaapProgram prog;
    // cur[pair_index(g, i, j)] holds the working weight of pair {i, j} at the
    // current graph size g; each elimination round rebuilds it one size down.
    std::vector<VarId> cur(EdgeWeightVector::pair_count(n));
    for (auto& v : cur) v = pool.fresh();
    prog.inputs = cur;

    std::vector<Instruction> items;
    std::vector<VarId> eliminated;  // the y variable of each round
    for (std::uint32_t g = n; g >= 3; --g) {
        const std::uint32_t last = g - 1;
        VarId y = pool.fresh();
        std::vector<AffineExpr> into_last;
        for (std::uint32_t i = 0; i < last; ++i)
            into_last.push_back(AffineExpr::var(cur[EdgeWeightVector::pair_index(g, i, last)]));
        items.push_back(assign_min(y, std::move(into_last)));

        std::vector<VarId> next(EdgeWeightVector::pair_count(g - 1));
        std::vector<Instruction> blocks;
        for (std::uint32_t i = 0; i + 1 < last; ++i) {
            for (std::uint32_t j = i + 1; j < last; ++j) {
                VarId xp = pool.fresh();
                next[EdgeWeightVector::pair_index(g - 1, i, j)] = xp;
                AffineExpr keep = AffineExpr::var(cur[EdgeWeightVector::pair_index(g, i, j)]);
                AffineExpr reroute =
                    AffineExpr::var(cur[EdgeWeightVector::pair_index(g, i, last)])
                        .plus(AffineExpr::var(cur[EdgeWeightVector::pair_index(g, j, last)]))
                        .minus(AffineExpr::var(y));
                blocks.push_back(assign_min(xp, {std::move(keep), std::move(reroute)}));
            }
        }
        items.push_back(for_do_par(std::move(blocks)));
        eliminated.push_back(y);
        cur = std::move(next);
    }

    // total = sum of eliminated-vertex minima plus the last remaining weight
    AffineExpr total;
    for (VarId y : eliminated) total = total.plus(AffineExpr::var(y));
    total = total.plus(AffineExpr::var(cur[0]));
    VarId out = pool.fresh();
    items.push_back(assign(out, std::move(total)));
    prog.body = seq(std::move(items));
    prog.outputs = {out};
    return prog;
}

EdgeWeightVector mst_input_vector(const WeightedGraph& g, std::optional<Rational> big_M) {
    if (g.n < 2) throw ArityError("graph needs n >= 2");
    // Connectivity via union-find reachability.
    std::vector<std::uint32_t> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::uint32_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (const auto& e : g.edges) parent[root(e.u)] = root(e.v);
    for (std::uint32_t v = 1; v < g.n; ++v)
        if (root(v) != root(0)) throw Error("graph is disconnected; it has no spanning tree");

    Rational max_w, max_abs;
    for (const auto& e : g.edges) {
        if (e.w > max_w) max_w = e.w;
        if (e.w.abs() > max_abs) max_abs = e.w.abs();
    }
    Rational m = big_M.value_or(Rational(1) + Rational(static_cast<long>(g.n)) * max_abs);
    Rational bound = Rational(static_cast<long>(g.n - 1)) * max_w;
    if (m <= bound || m <= max_w)
        throw Error("big_M " + m.str() + " is too small; it must exceed (n-1) * max weight = " +
                    bound.str());

    std::vector<Rational> w(EdgeWeightVector::pair_count(g.n), m);
    for (const auto& e : g.edges) {
        std::uint32_t a = std::min(e.u, e.v), b = std::max(e.u, e.v);
        std::size_t idx = EdgeWeightVector::pair_index(g.n, a, b);
        if (e.w < w[idx]) w[idx] = e.w;  // parallel edges keep the cheapest
    }
    return EdgeWeightVector(g.n, std::move(w));
}

}  // namespace maap::mst
