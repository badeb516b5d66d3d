#include "maap/graphs.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace maap {

EdgeWeightVector::EdgeWeightVector(std::uint32_t n_, std::vector<Rational> w_)
    : n(n_), w(std::move(w_)) {
    if (n < 2) throw ArityError("edge weight vector needs n >= 2");
    if (w.size() != pair_count(n))
        throw ArityError("edge weight vector for n=" + std::to_string(n) + " needs " +
                         std::to_string(pair_count(n)) + " entries, got " +
                         std::to_string(w.size()));
}

std::size_t EdgeWeightVector::pair_index(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
    if (i >= j || j >= n) throw Error("bad vertex pair");
    // Pairs (0,1)..(0,n-1) first, then (1,2).. etc.
    std::size_t before = static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2;
    return before + (j - i - 1);
}

FlowNetwork FlowNetwork::make(std::uint32_t n,
                              std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs) {
    if (n < 2) throw ArityError("flow network needs n >= 2");
    std::set<std::pair<std::uint32_t, std::uint32_t>> closed;
    for (auto [u, v] : arcs) {
        if (u == v) throw Error("self-loop in flow network");
        if (u >= n || v >= n) throw Error("arc endpoint out of range");
        closed.insert({u, v});
        closed.insert({v, u});
    }
    FlowNetwork net;
    net.n = n;
    net.arcs.assign(closed.begin(), closed.end());
    return net;
}

std::optional<std::size_t> FlowNetwork::try_arc_index(std::uint32_t u, std::uint32_t v) const {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(u, v));
    if (it == arcs.end() || *it != std::make_pair(u, v)) return std::nullopt;
    return static_cast<std::size_t>(it - arcs.begin());
}

std::size_t FlowNetwork::arc_index(std::uint32_t u, std::uint32_t v) const {
    auto idx = try_arc_index(u, v);
    if (!idx) throw Error("arc not in network");
    return *idx;
}

std::vector<std::size_t> FlowNetwork::forward_arcs() const {
    std::vector<std::size_t> fw;
    for (std::size_t i = 0; i < arcs.size(); ++i)
        if (arcs[i].first < arcs[i].second) fw.push_back(i);
    return fw;
}

std::vector<std::vector<std::uint32_t>> FlowNetwork::successors() const {
    std::vector<std::vector<std::uint32_t>> succ(n);
    for (auto [u, v] : arcs) succ[u].push_back(v);  // arcs sorted => ascending
    return succ;
}

std::vector<std::vector<std::uint32_t>> FlowNetwork::predecessors() const {
    std::vector<std::vector<std::uint32_t>> pred(n);
    for (auto [u, v] : arcs) pred[v].push_back(u);
    for (auto& p : pred) std::sort(p.begin(), p.end());
    return pred;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

std::string next_content_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        auto toks = tokens_of(line);
        if (!toks.empty() && toks[0][0] != '#') return line;
    }
    return {};
}

std::uint32_t parse_u32(const std::string& s, const char* what) {
    try {
        unsigned long v = std::stoul(s);
        return static_cast<std::uint32_t>(v);
    } catch (...) {
        throw ParseError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
}

}  // namespace

WeightedGraph parse_undirected_graph(std::istream& in) {
    auto header = tokens_of(next_content_line(in));
    if (header.size() != 3 || header[2] != "undirected")
        throw ParseError("expected header 'n m undirected'");
    WeightedGraph g;
    g.n = parse_u32(header[0], "node count");
    std::uint32_t m = parse_u32(header[1], "edge count");
    if (g.n < 2) throw ParseError("graph needs at least 2 vertices");
    for (std::uint32_t i = 0; i < m; ++i) {
        auto toks = tokens_of(next_content_line(in));
        if (toks.size() != 3) throw ParseError("expected edge line 'u v weight'");
        std::uint32_t u = parse_u32(toks[0], "vertex");
        std::uint32_t v = parse_u32(toks[1], "vertex");
        if (u < 1 || v < 1 || u > g.n || v > g.n || u == v)
            throw ParseError("edge endpoints must be distinct and in 1..n");
        g.edges.push_back({u - 1, v - 1, Rational::from_string(toks[2])});
    }
    return g;
}

std::pair<FlowNetwork, CapacityVector> parse_directed_graph(std::istream& in) {
    auto header = tokens_of(next_content_line(in));
    if (header.size() != 5 || header[2] != "directed" ||
        header[3].rfind("source=", 0) != 0 || header[4].rfind("sink=", 0) != 0)
        throw ParseError("expected header 'n m directed source=<s> sink=<t>'");
    std::uint32_t n = parse_u32(header[0], "node count");
    std::uint32_t m = parse_u32(header[1], "arc count");
    std::uint32_t s = parse_u32(header[3].substr(7), "source");
    std::uint32_t t = parse_u32(header[4].substr(5), "sink");
    if (s != 1 || t != n)
        throw ParseError("source must be node 1 and sink node n");
    std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> caps;
    for (std::uint32_t i = 0; i < m; ++i) {
        auto toks = tokens_of(next_content_line(in));
        if (toks.size() != 3) throw ParseError("expected arc line 'u v capacity'");
        std::uint32_t u = parse_u32(toks[0], "vertex");
        std::uint32_t v = parse_u32(toks[1], "vertex");
        if (u < 1 || v < 1 || u > n || v > n || u == v)
            throw ParseError("arc endpoints must be distinct and in 1..n");
        Rational c = Rational::from_string(toks[2]);
        if (c.sign() < 0) throw ParseError("capacities must be non-negative");
        caps[{u - 1, v - 1}] += c;  // repeated arcs accumulate
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
    for (const auto& [a, _] : caps) arcs.push_back(a);
    FlowNetwork net = FlowNetwork::make(n, std::move(arcs));
    CapacityVector cv;
    cv.c.assign(net.arc_count(), Rational(0));
    for (const auto& [a, c] : caps) cv.c[net.arc_index(a.first, a.second)] = c;
    return {std::move(net), std::move(cv)};
}

}  // namespace maap
