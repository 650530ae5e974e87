#include <doctest.h>

#include <set>

#include "socialucb/graph.hpp"
#include "support.hpp"

using namespace socialucb;

TEST_CASE("graph needs at least two nodes") {
    CHECK_THROWS_AS(SocialGraph(1), std::invalid_argument);
    CHECK_THROWS_AS(SocialGraph(0), std::invalid_argument);
    CHECK_NOTHROW(SocialGraph(2));
}

TEST_CASE("random_sparse extremes and determinism") {
    Rng rng(1);
    CHECK(SocialGraph::random_sparse(5, 0.0, rng).edge_count() == 0);

    auto pair = SocialGraph::random_sparse(2, 1.0, rng);
    REQUIRE(pair.edge_count() == 1);
    const double w = pair.weight(0, 1);
    CHECK(w > 0.0);
    CHECK(w <= 1.0);

    Rng a(42), b(42);
    auto g1 = SocialGraph::random_sparse(50, 0.1, a);
    auto g2 = SocialGraph::random_sparse(50, 0.1, b);
    CHECK(g1.edges() == g2.edges());

    Rng c(42);
    CHECK_THROWS_AS(SocialGraph::random_sparse(5, 1.5, c), std::invalid_argument);
}

TEST_CASE("random_sparse edge frequency tracks density") {
    Rng rng(9);
    auto g = SocialGraph::random_sparse(200, 0.1, rng);
    const double pairs = 200.0 * 199.0 / 2.0;
    CHECK(static_cast<double>(g.edge_count()) / pairs == doctest::Approx(0.1).epsilon(0.1));
}

TEST_CASE("reinforcement strengthens an existing tie") {
    SocialGraph g(3);
    g.set_edge(0, 1, 0.5);
    auto e = g.reinforce_or_create(0, 1, 0.9, 7);
    REQUIRE(e);
    CHECK(e->weight == doctest::Approx(0.5 + 0.2 * (0.9 - 0.5)).epsilon(1e-12));
    CHECK(e->weight == doctest::Approx(0.58).epsilon(1e-9));
    CHECK(e->last_interaction_step == 7);
    CHECK(g.weight(1, 0) == e->weight);
}

TEST_CASE("reinforcement clips at 1") {
    SocialGraph g(2);
    g.set_edge(0, 1, 0.95);
    CHECK(g.reinforce_or_create(1, 0, 1.0, 1)->weight == 1.0);
}

TEST_CASE("failed interaction that drives the weight below w_min removes the tie") {
    SocialGraph g(3);
    g.set_edge(0, 1, 0.05);
    CHECK_FALSE(g.reinforce_or_create(0, 1, 0.0, 1));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.edge_count() == 0);
}

TEST_CASE("failed interaction weakens a tie that survives") {
    SocialGraph g(3);
    g.set_edge(0, 2, 0.8);
    auto e = g.reinforce_or_create(2, 0, 0.3, 4);
    REQUIRE(e);
    CHECK(e->weight == doctest::Approx(0.8 - 0.2 * (0.5 - 0.3)).epsilon(1e-12));
}

TEST_CASE("successful interaction with a stranger creates a tie") {
    SocialGraph g(3);
    auto e = g.reinforce_or_create(0, 2, 0.9, 3);
    REQUIRE(e);
    CHECK(e->weight == doctest::Approx(0.1 + 0.2 * 0.4).epsilon(1e-12));
    CHECK(g.has_edge(2, 0));
    CHECK(g.edge(0, 2)->last_interaction_step == 3);
}

TEST_CASE("failed interaction with a stranger leaves no tie") {
    SocialGraph g(3);
    CHECK_FALSE(g.reinforce_or_create(0, 2, 0.1, 1));
    CHECK(g.edge_count() == 0);
}

TEST_CASE("reward exactly at the threshold counts as success") {
    SocialGraph g(2);
    auto e = g.reinforce_or_create(0, 1, 0.5, 1);
    REQUIRE(e);
    CHECK(e->weight == doctest::Approx(0.1));
}

TEST_CASE("decay_step") {
    Rng rng(3);
    SUBCASE("stale tie decays by lambda") {
        SocialGraph g(2);
        g.set_edge(0, 1, 0.5, 0);
        CHECK(g.decay_step(1.0, 0.9, 1, rng) == 0);
        CHECK(g.weight(0, 1) == doctest::Approx(0.45).epsilon(1e-12));
    }
    SUBCASE("decay below w_min prunes") {
        SocialGraph g(2);
        g.set_edge(0, 1, 0.011, 0);
        CHECK(g.decay_step(1.0, 0.9, 1, rng) == 1);
        CHECK_FALSE(g.has_edge(0, 1));
    }
    SUBCASE("p_frag = 0 leaves weights unchanged") {
        Rng init(5);
        auto g = SocialGraph::random_sparse(30, 0.3, init);
        const auto before = g.edges();
        for (Step t = 1; t <= 20; ++t) g.decay_step(0.0, 0.5, t, rng);
        CHECK(g.edges() == before);
    }
    SUBCASE("ties touched this step are exempt") {
        SocialGraph g(3);
        g.set_edge(0, 1, 0.5, 0);
        g.set_edge(1, 2, 0.5, 0);
        g.reinforce_or_create(0, 1, 0.5, 6);
        g.decay_step(1.0, 0.5, 6, rng);
        CHECK(g.weight(0, 1) == doctest::Approx(0.5));
        CHECK(g.weight(1, 2) == doctest::Approx(0.25));
    }
    SUBCASE("parameter validation") {
        SocialGraph g(2);
        CHECK_THROWS_AS(g.decay_step(1.5, 0.5, 1, rng), std::invalid_argument);
        CHECK_THROWS_AS(g.decay_step(0.5, 1.0, 1, rng), std::invalid_argument);
        CHECK_THROWS_AS(g.decay_step(0.5, 0.0, 1, rng), std::invalid_argument);
    }
}

TEST_CASE("invalid node ids and self-loops are rejected") {
    SocialGraph g(4);
    CHECK_THROWS_AS(g.has_edge(0, 4), std::out_of_range);
    CHECK_THROWS_AS(g.degree(-1), std::out_of_range);
    CHECK_THROWS_AS(g.reinforce_or_create(2, 2, 0.9, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.set_edge(1, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(g.reinforce_or_create(0, 1, 1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.set_edge(0, 1, 0.0), std::invalid_argument);
    CHECK_FALSE(g.has_edge(2, 2));
}

TEST_CASE("edges are canonical and sorted") {
    SocialGraph g(5);
    g.set_edge(4, 1, 0.3);
    g.set_edge(0, 3, 0.4);
    g.set_edge(2, 0, 0.5);
    const auto e = g.edges();
    REQUIRE(e.size() == 3);
    CHECK(e[0] == WeightedEdge{0, 2, 0.5});
    CHECK(e[1] == WeightedEdge{0, 3, 0.4});
    CHECK(e[2] == WeightedEdge{1, 4, 0.3});
    CHECK(g.mean_tie_strength(0) == doctest::Approx(0.45));
    CHECK(g.mean_tie_strength(1) == doctest::Approx(0.3));
    CHECK(g.neighbors(0) == std::vector<Neighbor>{{2, 0.5}, {3, 0.4}});
    CHECK(g.remove_edge(3, 0));
    CHECK_FALSE(g.remove_edge(3, 0));
    CHECK(g.edge_count() == 2);
}

TEST_CASE("random update sequences keep the graph consistent") {
    Rng rng(11);
    auto g = SocialGraph::random_sparse(20, 0.2, rng);
    std::uniform_int_distribution<NodeId> node(0, 19);
    for (Step t = 1; t <= 2000; ++t) {
        NodeId i = node(rng), j = node(rng);
        if (i == j) continue;
        g.reinforce_or_create(i, j, uniform01(rng), t);
        if (t % 10 == 0) g.decay_step(0.3, 0.7, t, rng);
    }
    std::size_t degree_sum = 0;
    for (NodeId i = 0; i < 20; ++i) {
        degree_sum += g.degree(i);
        auto adj = g.adjacent(i);
        CHECK(std::is_sorted(adj.begin(), adj.end()));
        for (NodeId j : adj) CHECK(g.has_edge(j, i));
    }
    CHECK(degree_sum == 2 * g.edge_count());
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& e : g.edges()) {
        CHECK(e.i < e.j);
        CHECK(seen.insert({e.i, e.j}).second);
        if (g.edge(e.i, e.j)->last_interaction_step > 0) {
            CHECK(e.weight >= g.params().w_min);
        }
        CHECK(e.weight <= 1.0);
    }
}
