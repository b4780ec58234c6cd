#include <abl/graph.hpp>
#include <abl/generators.hpp>
#include <abl/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace abl;

TEST_CASE("edge list parsing")
{
    SECTION("path on 3 vertices")
    {
        Graph g = load_edge_list("3 2\n0 1\n1 2\n");
        REQUIRE(g.n() == 3);
        REQUIRE(g.edge_count() == 2);
        REQUIRE(g.has_edge(0, 1));
        REQUIRE(g.has_edge(1, 2));
        REQUIRE_FALSE(g.has_edge(0, 2));
    }
    SECTION("isolated vertices")
    {
        Graph g = load_edge_list("2 0\n");
        REQUIRE(g.n() == 2);
        REQUIRE(g.edge_count() == 0);
    }
    SECTION("duplicate lines collapse")
    {
        Graph g = load_edge_list("2 2\n0 1\n0 1\n");
        REQUIRE(g.edge_count() == 1);
    }
    SECTION("comments and blank lines")
    {
        Graph g = load_edge_list("# header comment\n3 1\n\n0 2 # trailing\n");
        REQUIRE(g.edge_count() == 1);
        REQUIRE(g.has_edge(0, 2));
    }
    SECTION("errors")
    {
        REQUIRE_THROWS_AS(load_edge_list("2 1\n1 1\n"), LoopError);
        REQUIRE_THROWS_AS(load_edge_list("2 1\n0 5\n"), ParseError);
        REQUIRE_THROWS_AS(load_edge_list("2 1\n0 x\n"), ParseError);
        REQUIRE_THROWS_AS(load_edge_list(""), ParseError);
    }
}

TEST_CASE("degree sum equals twice the edge count")
{
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = gnp(40, 0.2, rng.next());
        long long sum = 0;
        for (int v = 0; v < g.n(); ++v) sum += g.degree(v);
        REQUIRE(sum == 2 * static_cast<long long>(g.edge_count()));
    }
}

TEST_CASE("edge list round trip")
{
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = gnp(30, 0.3, rng.next());
        Graph back = load_edge_list(to_edge_list(g));
        REQUIRE(back.n() == g.n());
        REQUIRE(back.edge_count() == g.edge_count());
        for (int v = 0; v < g.n(); ++v) REQUIRE(back.neighbors(v) == g.neighbors(v));
    }
}

TEST_CASE("co-degree")
{
    Graph k4 = complete_graph(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) REQUIRE(co_degree(k4, u, v) == 2);

    Graph star = star_graph(5);
    REQUIRE(co_degree(star, 0, 1) == 0);

    Graph c5 = cycle_graph(5);
    REQUIRE(co_degree(c5, 0, 1) == 0); // adjacent
    REQUIRE(co_degree(c5, 0, 2) == 1); // non-adjacent
}

TEST_CASE("r-partition check")
{
    SECTION("bipartite four-cycle against a single reduced edge")
    {
        Graph c4 = cycle_graph(4);
        Partition p({{0, 2}, {1, 3}});
        Graph reduced(2, {{0, 1}});
        REQUIRE(check_r_partition(c4, reduced, p));
    }
    SECTION("triangle cannot be 2-partitioned")
    {
        Graph k3 = complete_graph(3);
        Graph reduced(2, {{0, 1}});
        bool any = false;
        // every split of three vertices into two classes fails
        const int splits[][3] = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
        for (auto& s : splits) {
            Partition p = Partition::from_class_of({s[0], s[1], s[2]}, 2);
            any = any || check_r_partition(k3, reduced, p);
        }
        REQUIRE_FALSE(any);
    }
    SECTION("random 3-partite graph built on crossing edges only")
    {
        Rng rng(3);
        std::vector<int> cls(30);
        for (auto& c : cls) c = rng.index(3);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < 30; ++u)
            for (int v = u + 1; v < 30; ++v)
                if (cls[u] != cls[v] && rng.bernoulli(0.3)) edges.emplace_back(u, v);
        Graph g(30, edges);
        Partition p = Partition::from_class_of(cls, 3);
        REQUIRE(check_r_partition(g, complete_graph(3), p));

        // removing edges never flips the check to false
        std::vector<std::pair<int, int>> fewer(edges.begin(), edges.begin() + edges.size() / 2);
        REQUIRE(check_r_partition(Graph(30, fewer), complete_graph(3), p));
    }
    SECTION("coverage is enforced")
    {
        Graph g(4, {{0, 1}});
        Partition p({{0, 1}, {2}}); // vertex 3 missing
        REQUIRE_THROWS_AS(check_r_partition(g, Graph(2, {{0, 1}}), p), DimensionError);
    }
}

TEST_CASE("partition utilities")
{
    Partition p({{0, 1, 2}, {3, 4}, {5}});
    REQUIRE(p.covers(6));
    REQUIRE(p.kappa_balanced(3.0));
    REQUIRE_FALSE(p.kappa_balanced(2.0));
    auto cls = p.class_of(6);
    REQUIRE(cls[4] == 1);
    REQUIRE(cls[5] == 2);
}
