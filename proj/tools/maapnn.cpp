// maapnn: build, evaluate, verify, and inspect max-affine programs and their
// exact ReLU-network compilations for the MST-value and max-flow problems.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input errors.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "maap/compile.hpp"
#include "maap/complexity.hpp"
#include "maap/interpret.hpp"
#include "maap/maap_json.hpp"
#include "maap/maxflow.hpp"
#include "maap/mst.hpp"
#include "maap/oracles.hpp"
#include "maap/relu_json.hpp"
#include "maap/rng.hpp"

using namespace maap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::string shortest_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

struct SizeRange {
    std::uint32_t lo = 0, hi = 0;
};

SizeRange parse_range(const std::string& s) {
    SizeRange r;
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = static_cast<std::uint32_t>(std::stoul(s));
        } else {
            r.lo = static_cast<std::uint32_t>(std::stoul(s.substr(0, dots)));
            r.hi = static_cast<std::uint32_t>(std::stoul(s.substr(dots + 2)));
        }
    } catch (...) {
        throw Error("cannot parse size range '" + s + "' (expected N or LO..HI)");
    }
    if (r.lo > r.hi) throw Error("empty size range '" + s + "'");
    return r;
}

// One reproducible stream per (seed, size, trial).
SplitMix64 instance_rng(std::uint64_t seed, std::uint32_t n, std::uint64_t trial) {
    return SplitMix64(seed ^ (static_cast<std::uint64_t>(n) << 32) ^ trial);
}

void print_ledger(const MaapProgram& p) {
    Complexity led = complexity(p);
    std::cout << "ledger: d=" << led.d << " w=" << led.w << " s=" << led.s << "\n";
}

void print_stats_line(const ReluNet& net, const MaapProgram* p) {
    NetStats st = stats(net);
    std::cout << "net: depth=" << st.depth << " width=" << st.width << " size=" << st.size;
    if (p) {
        Complexity led = complexity(*p);
        const bool within =
            st.depth <= led.d + 1 && st.width <= led.w && st.size <= led.s;
        std::cout << " within-ledger=" << (within ? "yes" : "NO");
    }
    std::cout << "\n";
}

// ---------------------------------------------------------------- build ----

int cmd_build(const std::string& problem, std::uint32_t n, const std::string& graph_file,
              bool sequential, std::string out_prefix, bool maap_only, bool net_only) {
    MaapProgram prog;
    NetMeta meta;
    if (problem == "mst") {
        if (!graph_file.empty()) {
            std::ifstream in(graph_file);
            if (!in) throw Error("cannot open '" + graph_file + "'");
            WeightedGraph g = parse_undirected_graph(in);
            n = g.n;
        }
        if (n == 0) throw Error("build mst needs --n or --graph");
        prog = mst::build_mst_program(n);
        meta.problem = "mst";
        meta.n = n;
        if (out_prefix.empty()) out_prefix = "mst_" + std::to_string(n);
    } else if (problem == "maxflow") {
        if (graph_file.empty()) throw Error("build maxflow needs --graph");
        std::ifstream in(graph_file);
        if (!in) throw Error("cannot open '" + graph_file + "'");
        auto [net, caps] = parse_directed_graph(in);
        flow::MaxflowBuild mb = flow::build_maxflow_program(net);
        prog = std::move(mb.prog);
        meta.problem = "maxflow";
        meta.n = net.n;
        meta.source = net.source() + 1;
        meta.sink = net.sink() + 1;
        for (auto [u, v] : net.arcs) meta.arcs.push_back({u + 1, v + 1});
        if (out_prefix.empty()) out_prefix = "maxflow_" + std::to_string(net.n);
    } else {
        throw Error("unknown problem '" + problem + "' (expected mst or maxflow)");
    }
    if (sequential) prog = sequentialize(prog);
    print_ledger(prog);
    if (!net_only) {
        write_file(out_prefix + ".maap.json", maap_to_json(prog));
        std::cout << "wrote " << out_prefix << ".maap.json\n";
    }
    if (!maap_only) {
        ReluNet net = compile(prog);
        print_stats_line(net, &prog);
        write_file(out_prefix + ".relu.json", net_to_json(net, meta));
        std::cout << "wrote " << out_prefix << ".relu.json\n";
    }
    return kExitOk;
}

// ----------------------------------------------------------------- eval ----

std::vector<Rational> parse_instance(const std::string& path, const ReluNet& net,
                                     const std::optional<NetMeta>& meta) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string first_tok;
    {
        std::ifstream probe(path);
        probe >> first_tok;
    }
    std::string line;
    // A raw vector file starts with "vector L"; a graph file with "n m kind".
    std::istringstream header_probe;
    if (first_tok == "vector") {
        std::string kw;
        std::size_t len = 0;
        in >> kw >> len;
        std::vector<Rational> xs;
        std::string tok;
        while (in >> tok) xs.push_back(Rational::from_string(tok));
        if (xs.size() != len)
            throw Error("instance declares " + std::to_string(len) + " values, has " +
                        std::to_string(xs.size()));
        return xs;
    }
    if (meta && meta->problem == "mst") {
        WeightedGraph g = parse_undirected_graph(in);
        if (g.n != meta->n)
            throw Error("instance graph has n=" + std::to_string(g.n) +
                        ", network expects n=" + std::to_string(meta->n));
        return mst::mst_input_vector(g).w;
    }
    if (meta && meta->problem == "maxflow") {
        auto [inst_net, caps] = parse_directed_graph(in);
        if (inst_net.n != meta->n) throw Error("instance node count mismatch");
        // capacities must line up with the network's capacity order
        std::vector<Rational> xs;
        for (auto [u, v] : meta->arcs) {
            auto idx = inst_net.try_arc_index(u - 1, v - 1);
            xs.push_back(idx ? caps.c[*idx] : Rational(0));
        }
        return xs;
    }
    (void)net;
    throw Error("raw instances must start with 'vector <len>'");
}

int cmd_eval(const std::string& net_file, const std::string& instance_file,
             const std::string& mode) {
    auto [net, meta] = net_from_json(read_file(net_file));
    std::vector<Rational> x = parse_instance(instance_file, net, meta);
    std::vector<Rational> exact;
    std::vector<double> approx;
    if (mode == "rational") {
        exact = NetEvaluator<Rational>(net)(x);
        for (const auto& v : exact) std::cout << v.str() << "\n";
    } else if (mode == "float") {
        std::vector<double> xs;
        for (const auto& v : x) xs.push_back(v.to_double());
        approx = NetEvaluator<double>(net)(xs);
        for (double v : approx) std::cout << shortest_double(v) << "\n";
    } else {
        throw Error("unknown mode '" + mode + "'");
    }
    if (meta && meta->problem == "maxflow") {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs0;
        for (auto [u, v] : meta->arcs) arcs0.push_back({u - 1, v - 1});
        FlowNetwork fnet = FlowNetwork::make(meta->n, arcs0);
        FlowVector fv;
        if (mode == "rational") {
            fv.y = exact;
            std::cout << "flow_value " << flow::flow_value(fnet, fv).str() << "\n";
        } else {
            double total = 0;
            const auto fw = fnet.forward_arcs();
            for (std::size_t i = 0; i < fw.size(); ++i) {
                auto [u, v] = fnet.arcs[fw[i]];
                if (u == fnet.source()) total += approx[i];
                if (v == fnet.source()) total -= approx[i];
            }
            std::cout << "flow_value " << shortest_double(total) << "\n";
        }
    }
    return kExitOk;
}

// --------------------------------------------------------------- verify ----

struct VerifyStats {
    std::uint64_t pass = 0, fail = 0;
    bool printed_counterexample = false;
};

void report_failure(VerifyStats& vs, std::uint32_t n, std::uint64_t trial,
                    std::uint64_t seed, const std::vector<Rational>& instance,
                    const std::string& what) {
    ++vs.fail;
    if (!vs.printed_counterexample) {
        vs.printed_counterexample = true;
        std::cout << "counterexample: size=" << n << " trial=" << trial << " seed=" << seed
                  << " reason=" << what << "\n  instance:";
        for (const auto& v : instance) std::cout << " " << v.str();
        std::cout << "\n";
    }
}

int cmd_verify(const std::string& problem, const std::string& range_str,
               std::uint64_t trials, std::uint64_t seed) {
    SizeRange range = parse_range(range_str);
    bool any_fail = false;
    for (std::uint32_t n = range.lo; n <= range.hi; ++n) {
        VerifyStats vs;
        if (problem == "mst") {
            MaapProgram prog = mst::build_mst_program(n);
            ReluNet net = compile(prog);
            NetEvaluator<double> eval(net);
            for (std::uint64_t t = 0; t < trials; ++t) {
                SplitMix64 rng = instance_rng(seed, n, t);
                std::vector<Rational> w;
                for (std::size_t i = 0; i < EdgeWeightVector::pair_count(n); ++i)
                    w.push_back(random_weight_milli(rng));
                EdgeWeightVector x(n, w);
                Rational want = oracle::kruskal(x);
                auto got = interpret<Rational>(prog, w);
                if (got.size() != 1 || got[0] != want) {
                    report_failure(vs, n, t, seed, w, "interpret != kruskal");
                    continue;
                }
                std::vector<double> wf;
                for (const auto& v : w) wf.push_back(v.to_double());
                double f = eval(wf)[0];
                double ref = want.to_double();
                if (std::abs(f - ref) > 1e-6 * std::max(1.0, std::abs(ref))) {
                    report_failure(vs, n, t, seed, w, "compiled net off tolerance");
                    continue;
                }
                ++vs.pass;
            }
        } else if (problem == "maxflow") {
            for (std::uint64_t t = 0; t < trials; ++t) {
                SplitMix64 rng = instance_rng(seed, n, t);
                // random digraph with a guaranteed arc chain, capacities 0..10
                std::vector<std::pair<std::uint32_t, std::uint32_t>> picked;
                std::uint32_t prev = 0;
                for (std::uint32_t v = 1; v + 1 < n; ++v)
                    if (rng.below(2)) {
                        picked.push_back({prev, v});
                        prev = v;
                    }
                picked.push_back({prev, n - 1});
                for (std::uint32_t u = 0; u < n; ++u)
                    for (std::uint32_t v = 0; v < n; ++v)
                        if (u != v && rng.below(10) < 4) picked.push_back({u, v});
                FlowNetwork net = FlowNetwork::make(n, picked);
                CapacityVector caps;
                caps.c.assign(net.arc_count(), Rational(0));
                for (auto [u, v] : picked)
                    caps.c[net.arc_index(u, v)] = Rational(static_cast<long>(rng.below(11)));
                flow::MaxflowBuild mb = flow::build_maxflow_program(net);
                auto x = interpret<Rational>(mb.prog, caps.c);
                FlowVector fv;
                fv.y = x;
                auto fc = oracle::check_flow(net, caps, fv);
                Rational want = oracle::edmonds_karp(net, caps).value;
                if (!fc.feasible || flow::flow_value(net, fv) != want) {
                    report_failure(vs, n, t, seed, caps.c, "interpret != max-flow oracle");
                    continue;
                }
                ReluNet rn = compile(mb.prog);
                NetEvaluator<double> eval(rn);
                std::vector<double> cf;
                for (const auto& v : caps.c) cf.push_back(v.to_double());
                auto xf = eval(cf);
                double vf = 0;
                const auto fwd = net.forward_arcs();
                for (std::size_t i = 0; i < fwd.size(); ++i) {
                    auto [u, v] = net.arcs[fwd[i]];
                    if (u == net.source()) vf += xf[i];
                    if (v == net.source()) vf -= xf[i];
                }
                if (std::abs(vf - want.to_double()) >
                    1e-6 * std::max(1.0, std::abs(want.to_double()))) {
                    report_failure(vs, n, t, seed, caps.c, "compiled net off tolerance");
                    continue;
                }
                ++vs.pass;
            }
        } else {
            throw Error("unknown problem '" + problem + "'");
        }
        std::cout << "size=" << n << " trials=" << trials << " pass=" << vs.pass
                  << " fail=" << vs.fail << "\n";
        if (vs.fail > 0) any_fail = true;
    }
    return any_fail ? kExitMismatch : kExitOk;
}

// ---------------------------------------------------------------- stats ----

int cmd_stats(const std::string& file) {
    std::string doc = read_file(file);
    // Distinguish the two schemas by their top-level keys.
    bool is_net = doc.find("\"neurons\"") != std::string::npos;
    if (is_net) {
        auto [net, meta] = net_from_json(doc);
        print_stats_line(net, nullptr);
        return kExitOk;
    }
    MaapProgram prog = maap_from_json(doc);
    if (auto report = validate_program(prog); !report.ok())
        throw ValidationError("program is invalid:\n" + report.summary());
    print_ledger(prog);
    ReluNet net = compile(prog);
    print_stats_line(net, &prog);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"max-affine arithmetic programs and exact ReLU networks"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build a program and its network");
    std::string build_problem, build_graph, build_out;
    std::uint32_t build_n = 0;
    bool build_sequential = false, build_maap_only = false, build_net_only = false;
    build->add_option("problem", build_problem, "mst or maxflow")->required();
    build->add_option("--n", build_n, "vertex count (mst)");
    build->add_option("--graph", build_graph, "graph file");
    build->add_option("--out", build_out, "output file prefix");
    build->add_flag("--sequential", build_sequential, "width-O(1) sequential variant");
    build->add_flag("--maap-only", build_maap_only, "skip the .relu.json output");
    build->add_flag("--net-only", build_net_only, "skip the .maap.json output");

    // eval
    auto* eval = app.add_subcommand("eval", "run a network on an instance");
    std::string eval_net, eval_instance, eval_mode = "rational";
    eval->add_option("net", eval_net, "*.relu.json file")->required();
    eval->add_option("instance", eval_instance, "instance file")->required();
    eval->add_option("--mode", eval_mode, "rational or float");

    // verify
    auto* verify = app.add_subcommand("verify", "randomized oracle equivalence");
    std::string verify_problem, verify_range;
    std::uint64_t verify_trials = 100, verify_seed = 1;
    verify->add_option("problem", verify_problem, "mst or maxflow")->required();
    verify->add_option("--n", verify_range, "size or range LO..HI")->required();
    verify->add_option("--trials", verify_trials, "instances per size");
    verify->add_option("--seed", verify_seed, "base seed");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "ledger / statistics of a file");
    std::string stats_file;
    stats_cmd->add_option("file", stats_file, "*.maap.json or *.relu.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (build->parsed())
            return cmd_build(build_problem, build_n, build_graph, build_sequential,
                             build_out, build_maap_only, build_net_only);
        if (eval->parsed()) return cmd_eval(eval_net, eval_instance, eval_mode);
        if (verify->parsed())
            return cmd_verify(verify_problem, verify_range, verify_trials, verify_seed);
        if (stats_cmd->parsed()) return cmd_stats(stats_file);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
