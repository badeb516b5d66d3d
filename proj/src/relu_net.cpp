#include "maap/relu_net.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace maap {

std::uint32_t ReluNet::depth() const {
    std::uint32_t k = 0;
    for (const auto& v : neurons) k = std::max(k, v.layer);
    return k;
}

std::vector<std::uint32_t> ReluNet::input_ids() const {
    std::vector<std::uint32_t> ids;
    for (const auto& v : neurons)
        if (v.role == Role::Input) ids.push_back(v.id);
    return ids;
}

std::vector<std::uint32_t> ReluNet::output_ids() const {
    std::vector<std::uint32_t> ids;
    for (const auto& v : neurons)
        if (v.role == Role::Output) ids.push_back(v.id);
    return ids;
}

NetStats stats(const ReluNet& net) {
    NetStats st;
    st.depth = net.depth();
    std::map<std::uint32_t, std::uint64_t> layer_count;
    for (const auto& v : net.neurons) {
        if (v.role != Role::Hidden) continue;
        ++layer_count[v.layer];
        ++st.size;
    }
    for (const auto& [layer, count] : layer_count) st.width = std::max(st.width, count);
    return st;
}

namespace detail {

ForwardPlan make_forward_plan(const ReluNet& net) {
    std::uint32_t max_id = 0;
    for (const auto& v : net.neurons) max_id = std::max(max_id, v.id);
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pos_of(static_cast<std::size_t>(max_id) + 1, kUnset);
    for (std::size_t i = 0; i < net.neurons.size(); ++i) pos_of[net.neurons[i].id] = i;
    ForwardPlan plan;
    plan.in.resize(net.neurons.size());
    for (std::size_t ai = 0; ai < net.arcs.size(); ++ai) {
        const NetArc& a = net.arcs[ai];
        if (a.src > max_id || a.dst > max_id || pos_of[a.src] == kUnset ||
            pos_of[a.dst] == kUnset)
            throw ValidationError("arc references unknown neuron id");
        plan.in[pos_of[a.dst]].push_back({pos_of[a.src], ai});
    }
    for (std::size_t i = 0; i < net.neurons.size(); ++i) {
        if (net.neurons[i].role == Role::Input)
            plan.inputs.push_back(i);
        else
            plan.order.push_back(i);
        if (net.neurons[i].role == Role::Output) plan.outputs.push_back(i);
    }
    std::stable_sort(plan.order.begin(), plan.order.end(), [&](std::size_t a, std::size_t b) {
        return net.neurons[a].layer < net.neurons[b].layer;
    });
    return plan;
}

}  // namespace detail

ValidationReport validate_net(const ReluNet& net) {
    ValidationReport report;
    std::map<std::uint32_t, std::size_t> pos_of;
    for (std::size_t i = 0; i < net.neurons.size(); ++i) {
        if (!pos_of.emplace(net.neurons[i].id, i).second)
            report.add("dup-neuron", "neuron id " + std::to_string(net.neurons[i].id) +
                                         " occurs twice");
    }
    const std::uint32_t k = net.depth();
    std::vector<std::size_t> in_deg(net.neurons.size(), 0), out_deg(net.neurons.size(), 0);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen_arcs;
    for (const auto& a : net.arcs) {
        auto s = pos_of.find(a.src);
        auto d = pos_of.find(a.dst);
        if (s == pos_of.end() || d == pos_of.end()) {
            report.add("dangling-arc", "arc " + std::to_string(a.src) + "->" +
                                           std::to_string(a.dst) + " references unknown neuron");
            continue;
        }
        if (!seen_arcs.insert({a.src, a.dst}).second)
            report.add("dup-arc",
                       "arc " + std::to_string(a.src) + "->" + std::to_string(a.dst) + " repeated");
        if (net.neurons[s->second].layer >= net.neurons[d->second].layer)
            report.add("layer-monotonicity",
                       "arc " + std::to_string(a.src) + "->" + std::to_string(a.dst) +
                           " does not strictly increase the layer index");
        ++out_deg[s->second];
        ++in_deg[d->second];
    }
    for (std::size_t i = 0; i < net.neurons.size(); ++i) {
        const Neuron& v = net.neurons[i];
        const std::string tag = "neuron " + std::to_string(v.id);
        switch (v.role) {
            case Role::Input:
                if (v.layer != 0) report.add("input-layer", tag + " is an input off layer 0");
                if (in_deg[i] != 0) report.add("input-in-arc", tag + " is an input with incoming arcs");
                if (!v.bias.is_zero()) report.add("input-bias", tag + " is an input with a bias");
                if (out_deg[i] == 0)
                    report.add("output-set", tag + " has out-degree zero but is not an output");
                break;
            case Role::Hidden:
                if (v.layer == 0 || v.layer >= std::max<std::uint32_t>(k, 1))
                    report.add("hidden-layer", tag + " is a hidden neuron outside layers 1..k-1");
                if (out_deg[i] == 0)
                    report.add("output-set", tag + " has out-degree zero but is not an output");
                if (in_deg[i] == 0) report.add("no-incoming", tag + " is a hidden neuron with no inputs");
                break;
            case Role::Output:
                if (out_deg[i] != 0)
                    report.add("output-set", tag + " is an output with outgoing arcs");
                if (v.layer != k)
                    report.add("output-layer", tag + " is an output off the top layer");
                break;
        }
    }
    // Longest path must equal the maximum layer index; otherwise the stored
    // labeling uses more layers than the depth definition permits.
    if (report.ok() && !net.neurons.empty()) {
        std::vector<std::vector<std::size_t>> in(net.neurons.size());
        for (const auto& a : net.arcs) in[pos_of[a.dst]].push_back(pos_of[a.src]);
        std::vector<std::size_t> order(net.neurons.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return net.neurons[a].layer < net.neurons[b].layer;
        });
        std::vector<std::uint32_t> lp(net.neurons.size(), 0);
        std::uint32_t longest = 0;
        for (std::size_t p : order) {
            for (std::size_t src : in[p]) lp[p] = std::max(lp[p], lp[src] + 1);
            longest = std::max(longest, lp[p]);
        }
        if (longest != k)
            report.add("depth-mismatch", "longest path " + std::to_string(longest) +
                                             " != max layer " + std::to_string(k));
    }
    return report;
}

}  // namespace maap
