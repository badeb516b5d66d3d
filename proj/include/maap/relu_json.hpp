#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maap/relu_net.hpp"

namespace maap {

// Optional problem annotation stored alongside a network (file extension
// .relu.json). eval uses it to print the flow value of max-flow networks.
struct NetMeta {
    std::string problem;  // "mst" | "maxflow"
    std::uint32_t n = 0;  // graph node count
    std::uint32_t source = 0, sink = 0;                    // maxflow only
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;  // maxflow: capacity order

    friend bool operator==(const NetMeta&, const NetMeta&) = default;
};

// Schema: {"neurons":[{id,layer,bias,bias_f,role}],
//          "arcs":[{src,dst,weight,weight_f}], "meta": {...}?}
// bias/weight are exact "p/q" decimal strings; the *_f fields are
// shortest-round-trip doubles for interop and are ignored on load.
std::string net_to_json(const ReluNet& net, const std::optional<NetMeta>& meta = std::nullopt);

// Throws ParseError (with position) on malformed documents and
// ValidationError when the decoded net violates the structural invariants.
std::pair<ReluNet, std::optional<NetMeta>> net_from_json(const std::string& doc);

}  // namespace maap
