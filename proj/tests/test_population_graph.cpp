#include <gtest/gtest.h>

#include "sotea/population_graph.hpp"
#include "sotea/rng.hpp"

using namespace sotea;

namespace {
NodeId n(int i) { return NodeId(static_cast<std::uint64_t>(i)); }
}

TEST(PopulationGraph, RingIsACycle) {
    const auto g = PopulationGraph::new_ring(5);
    EXPECT_EQ(g.node_count(), 5U);
    EXPECT_EQ(g.edge_count(), 5U);
    for (NodeId id : g.nodes()) {
        EXPECT_EQ(g.degree(id), 2U);
    }
    EXPECT_FALSE(g.audit());
    EXPECT_THROW(PopulationGraph::new_ring(2), std::invalid_argument);
}

TEST(PopulationGraph, EdgeEditsKeepTheGraphSimple) {
    auto g = PopulationGraph::new_ring(4);
    EXPECT_FALSE(g.add_edge(n(0), n(0)));
    EXPECT_TRUE(g.add_edge(n(0), n(2)));
    EXPECT_FALSE(g.add_edge(n(2), n(0)));
    EXPECT_EQ(g.edge_count(), 5U);
    EXPECT_TRUE(g.remove_edge(n(2), n(0)));
    EXPECT_FALSE(g.remove_edge(n(0), n(2)));
    EXPECT_THROW(g.add_edge(n(0), n(9)), std::out_of_range);
    EXPECT_THROW(g.remove_node(n(9)), std::out_of_range);
    EXPECT_THROW(g.add_node(n(1)), std::invalid_argument);
    EXPECT_FALSE(g.audit());
}

TEST(PopulationGraph, RemoveNodeDropsIncidentEdges) {
    auto g = PopulationGraph::new_ring(5);
    g.add_edge(n(0), n(2));
    ASSERT_EQ(g.degree(n(0)), 3U);
    g.remove_node(n(0));
    EXPECT_EQ(g.edge_count(), 3U);
    EXPECT_FALSE(g.contains(n(0)));
    EXPECT_FALSE(g.audit());
}

TEST(PopulationGraph, TransferLinksSkipsExistingNeighbors) {
    // loser 0: {winner 1, p 2, q 3}; winner 1: {0, 2}
    PopulationGraph g;
    for (int i = 0; i < 4; ++i) g.add_node(n(i));
    g.add_edge(n(0), n(1));
    g.add_edge(n(0), n(2));
    g.add_edge(n(0), n(3));
    g.add_edge(n(1), n(2));
    g.transfer_links(n(1), n(0));
    const auto nb = g.neighbors(n(1));
    EXPECT_EQ(std::vector<NodeId>(nb.begin(), nb.end()), (std::vector{n(2), n(3)}));
    EXPECT_EQ(g.node_count(), 3U);
    EXPECT_FALSE(g.audit());
}

TEST(PopulationGraph, TransferFromLeafCanIsolateWinner) {
    PopulationGraph g;
    g.add_node(n(0));
    g.add_node(n(1));
    g.add_edge(n(0), n(1));
    g.transfer_links(n(0), n(1));
    EXPECT_EQ(g.degree(n(0)), 0U);
    EXPECT_EQ(g.edge_count(), 0U);
}

TEST(PopulationGraph, TransferOnCycleShrinksCycle) {
    for (int loser = 0; loser < 5; ++loser) {
        auto g = PopulationGraph::new_ring(5);
        const int winner = (loser + 1) % 5;
        g.transfer_links(n(winner), n(loser));
        EXPECT_EQ(g.node_count(), 4U);
        EXPECT_EQ(g.edge_count(), 4U);
        for (NodeId id : g.nodes()) {
            EXPECT_EQ(g.degree(id), 2U);
        }
    }
    auto g = PopulationGraph::new_ring(5);
    EXPECT_THROW(g.transfer_links(n(1), n(1)), std::invalid_argument);
}

TEST(PopulationGraph, RandomEditSequencesPreserveInvariants) {
    Rng rng{31};
    for (int trial = 0; trial < 50; ++trial) {
        auto g = PopulationGraph::new_ring(6);
        std::uint64_t next = 6;
        for (int step = 0; step < 300; ++step) {
            const auto ids = g.nodes();
            const NodeId a = ids[uniform_index(rng, ids.size())];
            const NodeId b = ids[uniform_index(rng, ids.size())];
            switch (uniform_index(rng, 4)) {
            case 0: g.add_edge(a, b); break;
            case 1: g.remove_edge(a, b); break;
            case 2:
                g.add_node(NodeId{next});
                g.add_edge(NodeId{next}, a);
                ++next;
                break;
            case 3:
                if (a != b && ids.size() > 3) {
                    const auto before = g.node_count();
                    g.transfer_links(a, b);
                    ASSERT_EQ(g.node_count(), before - 1);
                }
                break;
            }
            ASSERT_FALSE(g.audit()) << *g.audit();
        }
    }
}
