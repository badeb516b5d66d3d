#include <doctest.h>

#include <map>

#include "maap/compile.hpp"
#include "maap/mst.hpp"
#include "maap/relu_json.hpp"
#include "maap/relu_net.hpp"
#include "testutil.hpp"

using namespace maap;

namespace {

// The classic two-input min net: one hidden unit computing relu(x2 - x1),
// output x2 - relu(x2 - x1) = min{x1, x2}. All biases zero.
ReluNet min2_net() {
    ReluNet net;
    net.neurons = {{0, 0, Rational(0), Role::Input},
                   {1, 0, Rational(0), Role::Input},
                   {2, 1, Rational(0), Role::Hidden},
                   {3, 2, Rational(0), Role::Output}};
    net.arcs = {{0, 2, Rational(-1)},
                {1, 2, Rational(1)},
                {1, 3, Rational(1)},
                {2, 3, Rational(-1)}};
    return net;
}

// min(min(x1,x2), x3) as two chained min nets; second stage consumes the
// first stage's value through skip connections.
ReluNet chained_min3_net() {
    ReluNet net;
    net.neurons = {{0, 0, Rational(0), Role::Input},  {1, 0, Rational(0), Role::Input},
                   {2, 0, Rational(0), Role::Input},  {3, 1, Rational(0), Role::Hidden},
                   {4, 2, Rational(0), Role::Hidden}, {5, 3, Rational(0), Role::Output}};
    // h3 = relu(x2 - x1); m = x2 - h3
    net.arcs = {{0, 3, Rational(-1)}, {1, 3, Rational(1)},
                // h4 = relu(m - x3) = relu(x2 - h3 - x3)
                {1, 4, Rational(1)},  {3, 4, Rational(-1)}, {2, 4, Rational(-1)},
                // y = x3 ... min(m, x3) = m - relu(m - x3)? or x3 - relu(x3 - m)
                // use y = m - h4 = x2 - h3 - h4
                {1, 5, Rational(1)},  {3, 5, Rational(-1)}, {4, 5, Rational(-1)}};
    return net;
}

}  // namespace

TEST_CASE("forward: two-input min net") {
    ReluNet net = min2_net();
    auto [y1, tr1] = forward<Rational>(net, testutil::to_rationals({3, 5}));
    CHECK(y1 == testutil::to_rationals({3}));
    CHECK(tr1.activation[2] == Rational(2));  // hidden pre-activation
    CHECK(tr1.output[2] == Rational(2));
    auto [y2, tr2] = forward<Rational>(net, testutil::to_rationals({5, 3}));
    CHECK(y2 == testutil::to_rationals({3}));
    CHECK(tr2.activation[2] == Rational(-2));
    CHECK(tr2.output[2] == Rational(0));  // rectified
    CHECK_THROWS_AS((forward<Rational>(net, testutil::to_rationals({1}))), ArityError);
}

TEST_CASE("forward: bias-only constant net") {
    ReluNet net;
    net.neurons = {{0, 0, Rational(7), Role::Output}};
    auto [y, tr] = forward<Rational>(net, std::vector<Rational>{});
    CHECK(y == testutil::to_rationals({7}));
    CHECK(validate_net(net).ok());
    CHECK(stats(net) == NetStats{0, 0, 0});
}

TEST_CASE("stats: pinned examples") {
    CHECK(stats(min2_net()) == NetStats{2, 1, 1});

    ReluNet affine_net;  // no hidden units
    affine_net.neurons = {{0, 0, Rational(0), Role::Input}, {1, 1, Rational(0), Role::Output}};
    affine_net.arcs = {{0, 1, Rational(1)}};
    CHECK(validate_net(affine_net).ok());
    CHECK(stats(affine_net) == NetStats{1, 0, 0});

    ReluNet chained = chained_min3_net();
    REQUIRE(validate_net(chained).ok());
    CHECK(stats(chained) == NetStats{3, 1, 2});
    // and it computes the 3-way min
    auto [y, _] = forward<Rational>(chained, testutil::to_rationals({4, 2, 3}));
    CHECK(y == testutil::to_rationals({2}));
    auto [y2, _2] = forward<Rational>(chained, testutil::to_rationals({1, 5, 3}));
    CHECK(y2 == testutil::to_rationals({1}));
}

TEST_CASE("validate: clean net and violations") {
    CHECK(validate_net(min2_net()).ok());

    SUBCASE("arc against the layer order") {
        ReluNet net = min2_net();
        net.arcs.push_back({3, 2, Rational(1)});  // layer 2 -> layer 1
        bool found = false;
        for (const auto& v : validate_net(net).violations)
            if (v.code == "layer-monotonicity") found = true;
        CHECK(found);
    }
    SUBCASE("hidden neuron with out-degree zero") {
        ReluNet net = min2_net();
        net.neurons.push_back({4, 1, Rational(0), Role::Hidden});
        net.arcs.push_back({0, 4, Rational(1)});
        bool found = false;
        for (const auto& v : validate_net(net).violations)
            if (v.code == "output-set") found = true;
        CHECK(found);
    }
    SUBCASE("input with a bias") {
        ReluNet net = min2_net();
        net.neurons[0].bias = Rational(1);
        CHECK(!validate_net(net).ok());
    }
    SUBCASE("layering that overstates the longest path") {
        ReluNet net = min2_net();
        net.neurons[3].layer = 5;  // output pushed past any real path
        bool found = false;
        for (const auto& v : validate_net(net).violations)
            if (v.code == "depth-mismatch") found = true;
        CHECK(found);
    }
}

TEST_CASE("serialize: roundtrip is structural identity") {
    ReluNet net = min2_net();
    auto [back, meta] = net_from_json(net_to_json(net));
    CHECK(back == net);
    CHECK(!meta.has_value());

    // deterministic bytes
    CHECK(net_to_json(net) == net_to_json(net));

    NetMeta m;
    m.problem = "mst";
    m.n = 5;
    auto [back2, meta2] = net_from_json(net_to_json(net, m));
    CHECK(back2 == net);
    REQUIRE(meta2.has_value());
    CHECK(*meta2 == m);
}

TEST_CASE("serialize: compiled MST net roundtrips") {
    ReluNet net = compile(mst::build_mst_program(5));
    auto [back, _] = net_from_json(net_to_json(net));
    CHECK(back == net);
}

TEST_CASE("serialize: truncated and invalid documents") {
    ReluNet net = min2_net();
    std::string doc = net_to_json(net);
    CHECK_THROWS_AS(net_from_json(doc.substr(0, doc.size() / 2)), ParseError);
    // structurally broken: output below the top layer
    ReluNet bad = net;
    bad.neurons[3].layer = 1;
    CHECK_THROWS_AS(net_from_json(net_to_json(bad)), ValidationError);
}

TEST_CASE("property: positive homogeneity for zero-bias nets") {
    ReluNet net = chained_min3_net();
    SplitMix64 rng(0x5eed0003);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Rational> x;
        for (int i = 0; i < 3; ++i) x.push_back(testutil::random_signed_weight(rng));
        auto [y, _] = forward<Rational>(net, x);
        for (Rational lambda : {Rational(1, 2), Rational(2), Rational(3)}) {
            std::vector<Rational> xs;
            for (const auto& v : x) xs.push_back(v * lambda);
            auto [ys, _2] = forward<Rational>(net, xs);
            REQUIRE(ys.size() == y.size());
            for (std::size_t i = 0; i < y.size(); ++i) CHECK(ys[i] == y[i] * lambda);
        }
    }
}

TEST_CASE("property: depth bounds arc sources") {
    SplitMix64 rng(0x5eed0004);
    for (int trial = 0; trial < 20; ++trial) {
        ReluNet net = testutil::random_net(rng);
        REQUIRE_MESSAGE(validate_net(net).ok(), validate_net(net).summary());
        std::map<std::uint32_t, std::uint32_t> layer_of;
        for (const auto& v : net.neurons) layer_of[v.id] = v.layer;
        std::uint32_t max_src_layer = 0;
        for (const auto& a : net.arcs) max_src_layer = std::max(max_src_layer, layer_of[a.src]);
        CHECK(stats(net).depth >= 1 + max_src_layer);
    }
}

TEST_CASE("property: forward output is continuous piecewise linear") {
    SplitMix64 rng(0x5eed0005);
    ReluNet net = compile(mst::build_mst_program(4));
    std::string why;
    CHECK_MESSAGE(testutil::continuity_probe(net, rng, 5, &why), why);
}
