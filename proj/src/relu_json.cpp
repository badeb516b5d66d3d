#include "maap/relu_json.hpp"

#include <json.hpp>

namespace maap {

using Json = nlohmann::ordered_json;

static std::string role_name(Role r) {
    switch (r) {
        case Role::Input: return "input";
        case Role::Hidden: return "hidden";
        case Role::Output: return "output";
    }
    return "?";
}

static Role role_from(const std::string& s) {
    if (s == "input") return Role::Input;
    if (s == "hidden") return Role::Hidden;
    if (s == "output") return Role::Output;
    throw ParseError("unknown neuron role '" + s + "'");
}

std::string net_to_json(const ReluNet& net, const std::optional<NetMeta>& meta) {
    Json neurons = Json::array();
    for (const auto& v : net.neurons) {
        neurons.push_back(Json{{"id", v.id},
                               {"layer", v.layer},
                               {"bias", v.bias.str()},
                               {"bias_f", v.bias.to_double()},
                               {"role", role_name(v.role)}});
    }
    Json arcs = Json::array();
    for (const auto& a : net.arcs) {
        arcs.push_back(Json{{"src", a.src},
                            {"dst", a.dst},
                            {"weight", a.weight.str()},
                            {"weight_f", a.weight.to_double()}});
    }
    Json j{{"neurons", std::move(neurons)}, {"arcs", std::move(arcs)}};
    if (meta) {
        Json m{{"problem", meta->problem}, {"n", meta->n}};
        if (meta->problem == "maxflow") {
            m["source"] = meta->source;
            m["sink"] = meta->sink;
            Json as = Json::array();
            for (auto [u, v] : meta->arcs) as.push_back(Json::array({u, v}));
            m["arcs"] = std::move(as);
        }
        j["meta"] = std::move(m);
    }
    return j.dump(2) + "\n";
}

std::pair<ReluNet, std::optional<NetMeta>> net_from_json(const std::string& doc) {
    Json j;
    try {
        j = Json::parse(doc);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("relu json: ") + e.what());
    }
    ReluNet net;
    std::optional<NetMeta> meta;
    try {
        for (const auto& v : j.at("neurons")) {
            net.neurons.push_back({v.at("id").get<std::uint32_t>(),
                                   v.at("layer").get<std::uint32_t>(),
                                   Rational::from_string(v.at("bias").get<std::string>()),
                                   role_from(v.at("role").get<std::string>())});
        }
        for (const auto& a : j.at("arcs")) {
            net.arcs.push_back({a.at("src").get<std::uint32_t>(),
                                a.at("dst").get<std::uint32_t>(),
                                Rational::from_string(a.at("weight").get<std::string>())});
        }
        if (j.contains("meta")) {
            NetMeta m;
            const auto& jm = j.at("meta");
            m.problem = jm.at("problem").get<std::string>();
            m.n = jm.at("n").get<std::uint32_t>();
            if (m.problem == "maxflow") {
                m.source = jm.at("source").get<std::uint32_t>();
                m.sink = jm.at("sink").get<std::uint32_t>();
                for (const auto& a : jm.at("arcs"))
                    m.arcs.push_back({a.at(0).get<std::uint32_t>(), a.at(1).get<std::uint32_t>()});
            }
            meta = std::move(m);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("relu json: ") + e.what());
    }
    if (auto report = validate_net(net); !report.ok())
        throw ValidationError("loaded net is invalid:\n" + report.summary());
    return {std::move(net), std::move(meta)};
}

}  // namespace maap
