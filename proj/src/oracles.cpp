#include "maap/oracles.hpp"

#include "maap/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace maap::oracle {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::uint32_t root(std::uint32_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = root(a);
        b = root(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

Rational kruskal(const EdgeWeightVector& x) {
    struct E {
        std::uint32_t u, v;
        std::size_t idx;
    };
    std::vector<E> edges;
    edges.reserve(x.w.size());
    for (std::uint32_t i = 0; i < x.n; ++i)
        for (std::uint32_t j = i + 1; j < x.n; ++j)
            edges.push_back({i, j, EdgeWeightVector::pair_index(x.n, i, j)});
    std::stable_sort(edges.begin(), edges.end(),
                     [&](const E& a, const E& b) { return x.w[a.idx] < x.w[b.idx]; });
    UnionFind uf(x.n);
    Rational total;
    std::uint32_t used = 0;
    for (const E& e : edges) {
        if (uf.unite(e.u, e.v)) {
            total += x.w[e.idx];
            if (++used == x.n - 1) break;
        }
    }
    return total;
}

Rational brute_force_mst(const EdgeWeightVector& x) {
    const std::uint32_t n = x.n;
    if (n > 7) throw Error("brute-force MST is limited to n <= 7");
    if (n == 2) return x.w[0];
    // Decode every Pruefer sequence of length n-2 into its tree.
    std::vector<std::uint32_t> code(n - 2, 0);
    std::optional<Rational> best;
    while (true) {
        std::vector<std::uint32_t> degree(n, 1);
        for (std::uint32_t c : code) ++degree[c];
        Rational total;
        std::vector<std::uint32_t> deg = degree;
        std::vector<bool> used(n, false);
        for (std::uint32_t c : code) {
            std::uint32_t leaf = 0;
            while (leaf < n && (deg[leaf] != 1 || used[leaf])) ++leaf;
            used[leaf] = true;
            --deg[c];
            total += x.at(std::min(leaf, c), std::max(leaf, c));
            // leaf is consumed; c may become a leaf later
        }
        std::uint32_t a = n, b = n;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!used[v] && deg[v] == 1) {
                if (a == n) a = v;
                else b = v;
            }
        }
        total += x.at(std::min(a, b), std::max(a, b));
        if (!best || total < *best) best = total;
        // next code
        int pos = static_cast<int>(code.size()) - 1;
        while (pos >= 0 && code[pos] == n - 1) {
            code[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++code[pos];
    }
    return *best;
}

MaxflowResult edmonds_karp(const FlowNetwork& net, const CapacityVector& nu) {
    if (nu.c.size() != net.arc_count()) throw ArityError("capacity vector size mismatch");
    std::vector<Rational> c = nu.c;  // residual capacities per arc
    const auto succ = net.successors();
    const std::uint32_t s = net.source(), t = net.sink();
    while (true) {
        // BFS for a shortest augmenting path.
        std::vector<std::optional<std::size_t>> parent_arc(net.n);
        std::vector<bool> seen(net.n, false);
        seen[s] = true;
        std::deque<std::uint32_t> q{s};
        while (!q.empty() && !seen[t]) {
            std::uint32_t u = q.front();
            q.pop_front();
            for (std::uint32_t v : succ[u]) {
                std::size_t ai = net.arc_index(u, v);
                if (!seen[v] && c[ai].sign() > 0) {
                    seen[v] = true;
                    parent_arc[v] = ai;
                    q.push_back(v);
                }
            }
        }
        if (!seen[t]) break;
        // Bottleneck along the path.
        std::optional<Rational> delta;
        for (std::uint32_t v = t; v != s;) {
            std::size_t ai = *parent_arc[v];
            if (!delta || c[ai] < *delta) delta = c[ai];
            v = net.arcs[ai].first;
        }
        for (std::uint32_t v = t; v != s;) {
            std::size_t ai = *parent_arc[v];
            c[ai] -= *delta;
            c[net.arc_index(net.arcs[ai].second, net.arcs[ai].first)] += *delta;
            v = net.arcs[ai].first;
        }
    }
    MaxflowResult res;
    for (std::size_t fi : net.forward_arcs())
        res.flow.y.push_back(nu.c[fi] - c[fi]);  // y_uv = nu_uv - c_uv
    res.value = flow::flow_value(net, res.flow);
    return res;
}

static std::vector<std::optional<std::uint32_t>> bfs_distances(
    const FlowNetwork& net, const CapacityVector& c, std::uint32_t start, bool follow_reverse) {
    std::vector<std::optional<std::uint32_t>> dist(net.n);
    dist[start] = 0;
    std::deque<std::uint32_t> q{start};
    while (!q.empty()) {
        std::uint32_t u = q.front();
        q.pop_front();
        for (std::size_t ai = 0; ai < net.arc_count(); ++ai) {
            auto [a, b] = net.arcs[ai];
            if (follow_reverse) std::swap(a, b);
            if (a != u || c.c[ai].sign() <= 0) continue;
            if (!dist[b]) {
                dist[b] = *dist[u] + 1;
                q.push_back(b);
            }
        }
    }
    return dist;
}

std::vector<std::optional<std::uint32_t>> residual_distances(const FlowNetwork& net,
                                                             const CapacityVector& c) {
    return bfs_distances(net, c, net.source(), false);
}

std::vector<std::optional<std::uint32_t>> residual_distances_to_sink(const FlowNetwork& net,
                                                                     const CapacityVector& c) {
    return bfs_distances(net, c, net.sink(), true);
}

FlowCheck check_flow(const FlowNetwork& net, const CapacityVector& nu, const FlowVector& x) {
    FlowCheck fc;
    const auto fw = net.forward_arcs();
    if (x.y.size() != fw.size()) throw ArityError("flow vector size mismatch");
    std::vector<Rational> net_in(net.n);  // inflow - outflow per node
    for (std::size_t i = 0; i < fw.size(); ++i) {
        auto [u, v] = net.arcs[fw[i]];
        const Rational& y = x.y[i];
        const Rational& cap_fwd = nu.c[fw[i]];
        const Rational cap_bwd = nu.c[net.arc_index(v, u)];
        if (y > cap_fwd)
            fc.violations.push_back("arc (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                                    "): flow " + y.str() + " exceeds capacity " + cap_fwd.str());
        if (y < -cap_bwd)
            fc.violations.push_back("arc (" + std::to_string(v + 1) + "," + std::to_string(u + 1) +
                                    "): reverse flow " + (-y).str() + " exceeds capacity " +
                                    cap_bwd.str());
        net_in[v] += y;
        net_in[u] -= y;
    }
    for (std::uint32_t v = 0; v < net.n; ++v) {
        if (v == net.source() || v == net.sink()) continue;
        if (!net_in[v].is_zero())
            fc.violations.push_back("node " + std::to_string(v + 1) +
                                    ": conservation violated by " + net_in[v].str());
    }
    fc.feasible = fc.violations.empty();
    return fc;
}

Rational min_cut_brute_force(const FlowNetwork& net, const CapacityVector& nu) {
    if (net.n > 20) throw Error("cut enumeration limited to n <= 20");
    const std::uint32_t inner = net.n - 2;  // nodes 1..n-2 choose sides
    std::optional<Rational> best;
    for (std::uint64_t mask = 0; mask < (1ULL << inner); ++mask) {
        std::vector<bool> in_s(net.n, false);
        in_s[net.source()] = true;
        for (std::uint32_t i = 0; i < inner; ++i)
            if (mask & (1ULL << i)) in_s[i + 1] = true;
        Rational cut;
        for (std::size_t ai = 0; ai < net.arc_count(); ++ai) {
            auto [u, v] = net.arcs[ai];
            if (in_s[u] && !in_s[v]) cut += nu.c[ai];
        }
        if (!best || cut < *best) best = cut;
    }
    return *best;
}

std::vector<std::size_t> arcs_on_exact_length_paths(const FlowNetwork& net,
                                                    const CapacityVector& c, std::uint32_t k) {
    const auto ds = residual_distances(net, c);
    const auto dt = residual_distances_to_sink(net, c);
    std::vector<std::size_t> out;
    for (std::size_t ai = 0; ai < net.arc_count(); ++ai) {
        auto [u, v] = net.arcs[ai];
        if (c.c[ai].sign() <= 0) continue;
        if (ds[u] && dt[v] && *ds[u] + 1 + *dt[v] == k) out.push_back(ai);
    }
    return out;
}

}  // namespace maap::oracle
