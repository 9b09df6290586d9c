#include <gtest/gtest.h>

#include "support.hpp"

using namespace mlnds;
using namespace testing_support;

TEST(Network, DegreeCountsDistinctNeighbours) {
    auto net = net_from("edge l1 a b\nedge l1 a c\nnode l2 b\n");
    EXPECT_EQ(net.degree(net.layer("l1"), net.actor("a")), 2u);
    EXPECT_EQ(net.degree(net.layer("l1"), net.actor("b")), 1u);
    EXPECT_EQ(net.degree(net.layer("l2"), net.actor("b")), 0u);
}

TEST(Network, DegreeOfAbsentNodeThrows) {
    auto net = net_from("edge l1 a b\nnode l2 b\n");
    EXPECT_THROW(net.degree(net.layer("l2"), net.actor("a")), ActorNotPresent);
    EXPECT_THROW(net.neighbours(net.layer("l2"), net.actor("a")), ActorNotPresent);
}

TEST(Network, Neighbours) {
    auto net = net_from("edge l1 a b\nedge l1 b c\nnode l2 b\n");
    auto l1 = net.layer("l1");
    auto nb = net.neighbours(l1, net.actor("b"));
    EXPECT_EQ(names(net, ActorSet(std::vector<ActorId>(nb.begin(), nb.end()))), (std::set<std::string>{"a", "c"}));
    auto na = net.neighbours(l1, net.actor("a"));
    ASSERT_EQ(na.size(), 1u);
    EXPECT_EQ(net.actor_name(na[0]), "b");
    EXPECT_TRUE(net.neighbours(net.layer("l2"), net.actor("b")).empty());
}

TEST(Network, OneHopUnion) {
    auto net = net_from("edge l1 a b\nedge l2 a c\n");
    EXPECT_EQ(names(net, net.one_hop_union(net.actor("a"))), (std::set<std::string>{"b", "c"}));
    auto dup = net_from("edge l1 a b\nedge l2 a b\n");
    EXPECT_EQ(names(dup, dup.one_hop_union(dup.actor("a"))), (std::set<std::string>{"b"}));
    auto iso = net_from("edge l1 a b\nnode l1 z\nnode l2 z\n");
    EXPECT_TRUE(iso.one_hop_union(iso.actor("z")).empty());
}

TEST(Network, LayersOf) {
    auto net = net_from("edge l1 a b\nedge l2 a c\nedge l3 b c\nnode l3 z\n");
    auto a = net.layers_of(net.actor("a"));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(net.layer_name(a[0]), "l1");
    EXPECT_EQ(net.layer_name(a[1]), "l2");
    auto z = net.layers_of(net.actor("z"));
    ASSERT_EQ(z.size(), 1u);
    EXPECT_EQ(net.layer_name(z[0]), "l3");
    auto full = net_from("edge l1 a b\nedge l2 a b\n");
    EXPECT_EQ(full.layers_of(full.actor("a")).size(), 2u);
}

TEST(Network, UnknownActor) {
    auto net = net_from("edge l1 a b\n");
    EXPECT_THROW(net.actor("nobody"), UnknownActor);
    EXPECT_THROW(net.layers_of(ActorId{7}), UnknownActor);
    EXPECT_THROW(net.one_hop_union(ActorId{7}), UnknownActor);
}

TEST(Network, SelfLoopRejected) {
    NetworkBuilder b;
    EXPECT_THROW(b.add_edge("l1", "a", "a"), InvalidNetwork);
}

TEST(Network, DuplicateEdgesCollapse) {
    auto net = net_from("edge l1 a b\nedge l1 b a\nedge l1 a b\n");
    EXPECT_EQ(net.edge_count(), 1u);
}

TEST(Network, IdsFollowNameOrderRegardlessOfInsertion) {
    auto x = net_from("edge l2 c a\nedge l1 b a\n");
    auto y = net_from("edge l1 a b\nedge l2 a c\n");
    EXPECT_EQ(x.actor_names().size(), 3u);
    for (std::uint32_t i = 0; i < 3; ++i)
        EXPECT_EQ(x.actor_name(ActorId{i}), y.actor_name(ActorId{i}));
    EXPECT_EQ(x.layer_name(LayerId{0}), "l1");
    EXPECT_EQ(x.actor_name(ActorId{0}), "a");
}

TEST(NetworkProperty, EdgeSymmetryAndPresenceClosure) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        auto net = random_network(rng, 5 + rng.index(30), 1 + rng.index(3), 0.05 + 0.4 * rng.uniform());
        std::size_t arcs = 0;
        for (LayerId l : net.layers())
            for (ActorId a : net.layer_actors(l))
                for (ActorId b : net.neighbours(l, a)) {
                    ++arcs;
                    EXPECT_NE(a, b);
                    ASSERT_TRUE(net.is_present(l, b));
                    auto back = net.neighbours(l, b);
                    EXPECT_TRUE(std::ranges::binary_search(back, a));
                }
        EXPECT_EQ(arcs, 2 * net.edge_count());
        for (ActorId a : net.actors())
            EXPECT_FALSE(net.layers_of(a).empty());
        for (ActorId a : net.actors())
            EXPECT_FALSE(net.one_hop_union(a).contains(a));
    }
}
