#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maap/rational.hpp"
#include "maap/validation.hpp"

namespace maap {

enum class Role { Input, Hidden, Output };

struct Neuron {
    std::uint32_t id;
    std::uint32_t layer;
    Rational bias;
    Role role;

    friend bool operator==(const Neuron& a, const Neuron& b) {
        return a.id == b.id && a.layer == b.layer && a.bias == b.bias && a.role == b.role;
    }
};

struct NetArc {
    std::uint32_t src;
    std::uint32_t dst;
    Rational weight;

    friend bool operator==(const NetArc& a, const NetArc& b) {
        return a.src == b.src && a.dst == b.dst && a.weight == b.weight;
    }
};

// A layered weighted DAG with ReLU hidden units. Layer indices strictly
// increase along every arc; arcs may skip layers. Inputs sit in layer 0 with
// no incoming arcs and zero bias; the neurons of out-degree zero are exactly
// the outputs and share the top layer. Input and output vector order is the
// order of appearance in `neurons`.
struct ReluNet {
    std::vector<Neuron> neurons;
    std::vector<NetArc> arcs;

    std::uint32_t depth() const;  // max layer index == longest path for valid nets
    std::vector<std::uint32_t> input_ids() const;
    std::vector<std::uint32_t> output_ids() const;

    friend bool operator==(const ReluNet& a, const ReluNet& b) {
        return a.neurons == b.neurons && a.arcs == b.arcs;
    }
};

struct NetStats {
    std::uint32_t depth = 0;  // longest path length
    std::uint64_t width = 0;  // max hidden-layer cardinality
    std::uint64_t size = 0;   // total hidden neurons

    friend bool operator==(const NetStats&, const NetStats&) = default;
};

NetStats stats(const ReluNet& net);

// Structural checks: arc endpoints and duplicates, strict layer monotonicity
// (which implies acyclicity), role/layer/degree consistency, and that the
// stored layering realizes the longest path.
ValidationReport validate_net(const ReluNet& net);

template <class T>
struct ForwardTrace {
    // Indexed by position in net.neurons. For inputs, activation == output ==
    // the supplied value; for outputs, output mirrors the raw activation
    // (ReLU is applied to hidden neurons only).
    std::vector<T> activation;
    std::vector<T> output;
};

namespace detail {
struct ForwardPlan {
    std::vector<std::size_t> order;  // non-input neuron positions in layer order
    // Per neuron position: (source position, arc index) of incoming arcs.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> in;
    std::vector<std::size_t> inputs, outputs;  // neuron positions
};
ForwardPlan make_forward_plan(const ReluNet& net);
}  // namespace detail

template <class T>
std::pair<std::vector<T>, ForwardTrace<T>> forward(const ReluNet& net, std::span<const T> x) {
    const detail::ForwardPlan plan = detail::make_forward_plan(net);
    if (x.size() != plan.inputs.size())
        throw ArityError("expected " + std::to_string(plan.inputs.size()) + " inputs, got " +
                         std::to_string(x.size()));
    ForwardTrace<T> trace;
    trace.activation.assign(net.neurons.size(), T{});
    trace.output.assign(net.neurons.size(), T{});
    for (std::size_t i = 0; i < plan.inputs.size(); ++i) {
        trace.activation[plan.inputs[i]] = x[i];
        trace.output[plan.inputs[i]] = x[i];
    }
    const T zero{};
    for (std::size_t pos : plan.order) {
        const Neuron& v = net.neurons[pos];
        T a = to_num<T>(v.bias);
        for (const auto& [src_pos, arc_idx] : plan.in[pos])
            a += to_num<T>(net.arcs[arc_idx].weight) * trace.output[src_pos];
        if (v.role == Role::Hidden) {
            trace.output[pos] = a < zero ? zero : a;
        } else {
            trace.output[pos] = a;  // no activation on the output layer
        }
        trace.activation[pos] = std::move(a);
    }
    std::vector<T> y;
    y.reserve(plan.outputs.size());
    for (std::size_t pos : plan.outputs) y.push_back(trace.activation[pos]);
    return {std::move(y), std::move(trace)};
}

template <class T>
std::pair<std::vector<T>, ForwardTrace<T>> forward(const ReluNet& net,
                                                   const std::vector<T>& x) {
    return forward<T>(net, std::span<const T>(x));
}

// Caches the evaluation plan for repeated forward passes over one net.
template <class T>
class NetEvaluator {
public:
    explicit NetEvaluator(const ReluNet& net)
        : net_(net), plan_(detail::make_forward_plan(net)) {}

    std::size_t input_count() const { return plan_.inputs.size(); }

    std::vector<T> operator()(std::span<const T> x) const {
        if (x.size() != plan_.inputs.size()) throw ArityError("input size mismatch");
        std::vector<T> out(net_.neurons.size(), T{});
        for (std::size_t i = 0; i < plan_.inputs.size(); ++i) out[plan_.inputs[i]] = x[i];
        const T zero{};
        std::vector<T> y;
        y.reserve(plan_.outputs.size());
        for (std::size_t pos : plan_.order) {
            const Neuron& v = net_.neurons[pos];
            T a = to_num<T>(v.bias);
            for (const auto& [src_pos, arc_idx] : plan_.in[pos])
                a += to_num<T>(net_.arcs[arc_idx].weight) * out[src_pos];
            out[pos] = (v.role == Role::Hidden && a < zero) ? zero : std::move(a);
        }
        for (std::size_t pos : plan_.outputs) y.push_back(out[pos]);
        return y;
    }

    std::vector<T> operator()(const std::vector<T>& x) const {
        return (*this)(std::span<const T>(x));
    }

private:
    const ReluNet& net_;
    detail::ForwardPlan plan_;
};

}  // namespace maap
