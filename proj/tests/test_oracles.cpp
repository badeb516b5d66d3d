#include <doctest.h>

#include <map>

#include "maap/maxflow.hpp"
#include "maap/oracles.hpp"
#include "testutil.hpp"

using namespace maap;
namespace orc = maap::oracle;

namespace {

// s=0, a=1, b=2, t=3 with caps (sa, sb, at, bt) = (3, 2, 2, 3); value 4.
testutil::FlowInstance diamond() {
    FlowNetwork net = FlowNetwork::make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CapacityVector caps;
    caps.c.assign(net.arc_count(), Rational(0));
    caps.c[net.arc_index(0, 1)] = Rational(3);
    caps.c[net.arc_index(0, 2)] = Rational(2);
    caps.c[net.arc_index(1, 3)] = Rational(2);
    caps.c[net.arc_index(2, 3)] = Rational(3);
    return {std::move(net), std::move(caps)};
}

}  // namespace

TEST_CASE("kruskal: pinned examples") {
    CHECK(orc::kruskal(EdgeWeightVector(2, testutil::to_rationals({7}))) == Rational(7));
    // K3 weights (x12, x13, x23) = (1, 2, 3): tree {12, 13}
    CHECK(orc::kruskal(EdgeWeightVector(3, testutil::to_rationals({1, 2, 3}))) == Rational(3));
}

TEST_CASE("brute force MST: pinned examples and size limit") {
    CHECK(orc::brute_force_mst(EdgeWeightVector(3, testutil::to_rationals({1, 2, 3}))) ==
          Rational(3));
    CHECK(orc::brute_force_mst(
              EdgeWeightVector(4, testutil::to_rationals({1, 1, 1, 1, 1, 1}))) == Rational(3));
    SplitMix64 rng(0x5eed0101);
    testutil::FlowInstance unused;  // keep rng usage explicit
    (void)unused;
    EdgeWeightVector big(8, std::vector<Rational>(EdgeWeightVector::pair_count(8), Rational(1)));
    CHECK_THROWS_AS(orc::brute_force_mst(big), Error);
}

TEST_CASE("kruskal equals exhaustive enumeration up to n = 7") {
    SplitMix64 rng(0x5eed0102);
    for (std::uint32_t n = 3; n <= 7; ++n) {
        for (int trial = 0; trial < (n <= 5 ? 40 : 10); ++trial) {
            EdgeWeightVector x = testutil::random_weights(rng, n);
            CHECK(orc::kruskal(x) == orc::brute_force_mst(x));
        }
    }
}

TEST_CASE("edmonds-karp: pinned examples") {
    {
        FlowNetwork net = FlowNetwork::make(2, {{0, 1}});
        CapacityVector caps;
        caps.c.assign(net.arc_count(), Rational(0));
        caps.c[net.arc_index(0, 1)] = Rational(7);
        auto res = orc::edmonds_karp(net, caps);
        CHECK(res.value == Rational(7));
        CHECK(flow::flow_value(net, res.flow) == Rational(7));
    }
    {
        auto [net, caps] = diamond();
        auto res = orc::edmonds_karp(net, caps);
        CHECK(res.value == Rational(4));
        CHECK(orc::check_flow(net, caps, res.flow).feasible);
        CHECK(orc::min_cut_brute_force(net, caps) == Rational(4));
    }
    {
        auto [net, caps] = diamond();
        for (auto& c : caps.c) c = Rational(0);
        CHECK(orc::edmonds_karp(net, caps).value == Rational(0));
    }
}

TEST_CASE("edmonds-karp: feasibility, cut duality, arc-order invariance") {
    SplitMix64 rng(0x5eed0103);
    for (std::uint32_t n = 3; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            auto [net, caps] = testutil::random_flow_instance(rng, n);
            auto res = orc::edmonds_karp(net, caps);
            auto fc = orc::check_flow(net, caps, res.flow);
            CHECK_MESSAGE(fc.feasible, (fc.violations.empty() ? std::string() : fc.violations[0]));
            CHECK(res.value == orc::min_cut_brute_force(net, caps));

            // shuffling the arc list on input leaves the canonical network,
            // and therefore the value, unchanged
            auto arcs = net.arcs;
            for (std::size_t i = arcs.size(); i > 1; --i)
                std::swap(arcs[i - 1], arcs[rng.below(i)]);
            FlowNetwork net2 = FlowNetwork::make(net.n, arcs);
            CapacityVector caps2;
            caps2.c.assign(net2.arc_count(), Rational(0));
            for (std::size_t ai = 0; ai < net.arc_count(); ++ai)
                caps2.c[net2.arc_index(net.arcs[ai].first, net.arcs[ai].second)] = caps.c[ai];
            CHECK(orc::edmonds_karp(net2, caps2).value == res.value);
        }
    }
}

TEST_CASE("check_flow: violations are reported per arc and node") {
    auto [net, caps] = diamond();
    FlowVector zero;
    zero.y.assign(net.forward_arcs().size(), Rational(0));
    CHECK(orc::check_flow(net, caps, zero).feasible);

    FlowVector bad = zero;
    bad.y[0] = Rational(100);  // exceeds capacity on the first forward arc
    auto fc = orc::check_flow(net, caps, bad);
    CHECK(!fc.feasible);
    CHECK(fc.violations.size() >= 1);
}

TEST_CASE("residual distances: pinned examples") {
    FlowNetwork net = FlowNetwork::make(3, {{0, 1}, {1, 2}});
    CapacityVector caps;
    caps.c.assign(net.arc_count(), Rational(0));
    caps.c[net.arc_index(0, 1)] = Rational(1);
    caps.c[net.arc_index(1, 2)] = Rational(1);
    auto d = orc::residual_distances(net, caps);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 0);
    CHECK(d[1] == 1);
    CHECK(d[2] == 2);

    for (auto& c : caps.c) c = Rational(0);
    auto d0 = orc::residual_distances(net, caps);
    CHECK(d0[0] == 0);
    CHECK(!d0[1].has_value());
    CHECK(!d0[2].has_value());
}

TEST_CASE("residual distances match an all-pairs recomputation") {
    SplitMix64 rng(0x5eed0104);
    for (int trial = 0; trial < 25; ++trial) {
        auto [net, caps] = testutil::random_flow_instance(rng, 3 + rng.below(4));
        auto d = orc::residual_distances(net, caps);
        // Floyd-Warshall over unit arc lengths on the positive-capacity arcs
        constexpr std::uint32_t INF = 1u << 30;
        std::vector<std::vector<std::uint32_t>> fw(net.n, std::vector<std::uint32_t>(net.n, INF));
        for (std::uint32_t v = 0; v < net.n; ++v) fw[v][v] = 0;
        for (std::size_t ai = 0; ai < net.arc_count(); ++ai)
            if (caps.c[ai].sign() > 0)
                fw[net.arcs[ai].first][net.arcs[ai].second] = 1;
        for (std::uint32_t k = 0; k < net.n; ++k)
            for (std::uint32_t i = 0; i < net.n; ++i)
                for (std::uint32_t j = 0; j < net.n; ++j)
                    fw[i][j] = std::min(fw[i][j], fw[i][k] == INF || fw[k][j] == INF
                                                      ? INF
                                                      : fw[i][k] + fw[k][j]);
        for (std::uint32_t v = 0; v < net.n; ++v) {
            if (fw[0][v] == INF)
                CHECK(!d[v].has_value());
            else
                CHECK(d[v] == fw[0][v]);
        }
    }
}
