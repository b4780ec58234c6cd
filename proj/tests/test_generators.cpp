#include <abl/arrangeability.hpp>
#include <abl/embed_search.hpp>
#include <abl/generators.hpp>
#include <abl/regularity.hpp>
#include <abl/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <queue>

using namespace abl;

TEST_CASE("gnp")
{
    REQUIRE(gnp(20, 0.0, 1).edge_count() == 0);
    REQUIRE(gnp(20, 1.0, 1).edge_count() == 190);

    // binomial moments at n = 1000, p = 0.5
    Graph g = gnp(1000, 0.5, 42);
    const double mean = 0.5 * (1000.0 * 999.0 / 2.0);
    const double sigma = std::sqrt(0.25 * (1000.0 * 999.0 / 2.0));
    REQUIRE(std::fabs(static_cast<double>(g.edge_count()) - mean) < 3.0 * sigma);

    // deterministic per seed, different across seeds
    REQUIRE(gnp(50, 0.5, 9).edges() == gnp(50, 0.5, 9).edges());
    REQUIRE(gnp(50, 0.5, 9).edges() != gnp(50, 0.5, 10).edges());
}

TEST_CASE("blow-up host")
{
    SECTION("single reduced edge at density one is complete bipartite")
    {
        BlowupHostSpec spec;
        spec.reduced = Graph(2, {{0, 1}});
        spec.cluster_sizes = {5, 7};
        spec.pair_density = 1.0;
        auto host = blowup_host(spec);
        REQUIRE(host.rpg.graph.edge_count() == 35);
        REQUIRE(check_r_partition(host.rpg.graph, host.rpg.reduced, host.rpg.partition));
    }
    SECTION("edgeless reduced graph yields an edgeless host")
    {
        BlowupHostSpec spec;
        spec.reduced = Graph(3, {});
        spec.cluster_sizes = {4, 4, 4};
        spec.pair_density = 0.9;
        REQUIRE(blowup_host(spec).rpg.graph.edge_count() == 0);
    }
    SECTION("no edges off the reduced edges, and pairs check out")
    {
        BlowupHostSpec spec;
        spec.reduced = complete_graph(3);
        spec.cluster_sizes = {300, 300, 300};
        spec.pair_density = 0.5;
        spec.rng_seed = 11;
        spec.check_eps = 0.1;
        spec.check_delta = 0.25;
        auto host = blowup_host(spec);
        REQUIRE(check_r_partition(host.rpg.graph, host.rpg.reduced, host.rpg.partition));
        REQUIRE(host.checks.size() == 3);
        for (const auto& c : host.checks) REQUIRE(c.report.ok());
    }
}

TEST_CASE("density normalization")
{
    BlowupHostSpec spec;
    spec.reduced = Graph(2, {{0, 1}});
    spec.cluster_sizes = {60, 60};
    spec.pair_density = 1.0;
    auto host = blowup_host(spec);
    BipartitePairView pair{&host.rpg.graph, host.rpg.partition.cls(0), host.rpg.partition.cls(1)};

    SECTION("already at the target leaves the pair unchanged")
    {
        auto res = normalize_density(pair, 1.0, 5);
        REQUIRE(res.graph.edge_count() == host.rpg.graph.edge_count());
    }
    SECTION("halving a complete pair")
    {
        auto res = normalize_density(pair, 0.5, 5);
        REQUIRE(res.kept_edges == 1800);
        BipartitePairView after{&res.graph, pair.a_side, pair.b_side};
        REQUIRE(density(after) == Catch::Approx(0.5));
        REQUIRE(res.half_floor_ok); // hypergeometric tails keep degrees above delta/2
    }
    SECTION("too sparse throws")
    {
        auto res = normalize_density(pair, 0.5, 5);
        BipartitePairView after{&res.graph, pair.a_side, pair.b_side};
        REQUIRE_THROWS_AS(normalize_density(after, 0.9, 6), TooSparseError);
    }
}

namespace {

int bfs_distance(const Graph& g, const std::vector<int>& from, const std::vector<int>& to, int cap)
{
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::queue<int> q;
    for (int v : from) {
        dist[static_cast<std::size_t>(v)] = 0;
        q.push(v);
    }
    std::vector<char> target(static_cast<std::size_t>(g.n()), 0);
    for (int v : to) target[static_cast<std::size_t>(v)] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (target[static_cast<std::size_t>(v)]) return dist[static_cast<std::size_t>(v)];
        if (dist[static_cast<std::size_t>(v)] >= cap) continue;
        for (int u : g.neighbors(v))
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push(u);
            }
    }
    return cap + 1;
}

} // namespace

TEST_CASE("block-structured host")
{
    SECTION("bad dimensions throw")
    {
        REQUIRE_THROWS_AS(optimality_gk(15, 4, 1), DimensionError); // k does not divide n
        REQUIRE_THROWS_AS(optimality_gk(16, 3, 1), DimensionError); // odd k
    }
    SECTION("degrees, distance, and tree shape at a perfect square")
    {
        auto inst = optimality_gk(16, 4, 7);
        for (int v = 0; v < inst.host.n(); ++v) REQUIRE(inst.host.degree(v) == 8);
        REQUIRE(bfs_distance(inst.host, inst.w_blocks[0], inst.w_blocks[1], 4) > 2);

        // double tree: color classes of size n, max degree sqrt(n)+1
        REQUIRE(inst.tree.n() == 32);
        REQUIRE(inst.tree.max_degree() == 5);
        std::vector<int> color(32, -1);
        std::queue<int> q;
        color[0] = 0;
        q.push(0);
        int cnt[2] = {1, 0};
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : inst.tree.neighbors(v))
                if (color[static_cast<std::size_t>(u)] < 0) {
                    color[static_cast<std::size_t>(u)] = 1 - color[static_cast<std::size_t>(v)];
                    ++cnt[color[static_cast<std::size_t>(u)]];
                    q.push(u);
                }
        }
        REQUIRE(cnt[0] == 16);
        REQUIRE(cnt[1] == 16);
    }
    SECTION("the hard tree does not embed at desk scale")
    {
        auto inst = optimality_gk(16, 4, 3);
        REQUIRE_FALSE(tree_embedding_exists(inst.tree, inst.host));
    }
    SECTION("the restricted star does not embed, but relaxing restrictions does")
    {
        auto inst = optimality_gk(16, 4, 5);
        std::vector<std::vector<int>> allowed(static_cast<std::size_t>(inst.star.n()));
        for (int i = 0; i < inst.k; ++i)
            allowed[static_cast<std::size_t>(i + 1)] = inst.star_leaf_allowed[static_cast<std::size_t>(i)];
        REQUIRE_FALSE(tree_embedding_exists(inst.star, inst.host, &allowed));
        REQUIRE(tree_embedding_exists(inst.star, inst.host));
    }
}

TEST_CASE("factor targets")
{
    Graph k3 = complete_graph(3);
    Graph h = f_factor_target(k3, 2);
    REQUIRE(h.n() == 6);
    REQUIRE(h.edge_count() == 6);
    auto ord = heuristic_ordering(h);
    REQUIRE(ord.a == heuristic_ordering(k3).a);
}

TEST_CASE("domination bounds")
{
    SECTION("complete graph")
    {
        auto b = domination_number(complete_graph(12), 20);
        REQUIRE(b.exact);
        REQUIRE(b.lower == 1);
        REQUIRE(b.upper == 1);
    }
    SECTION("edgeless graph needs everything")
    {
        auto b = domination_number(Graph(7, {}), 20);
        REQUIRE(b.exact);
        REQUIRE(b.lower == 7);
    }
    SECTION("dense random graph, exact against greedy")
    {
        Rng rng(77);
        for (int t = 0; t < 5; ++t) {
            Graph g = gnp(20, 0.9, rng.next());
            auto b = domination_number(g, 25);
            REQUIRE(b.exact);
            REQUIRE(b.lower >= 1);
            REQUIRE(b.lower <= b.upper);
        }
    }
    SECTION("large graph returns a certified window")
    {
        Graph g = gnp(120, 0.1, 5);
        auto b = domination_number(g, 25, 3);
        REQUIRE(b.lower <= b.upper);
        REQUIRE(b.lower >= 1);
    }
}

TEST_CASE("tree search oracle sanity")
{
    SECTION("path into cycle")
    {
        REQUIRE(tree_embedding_exists(path_graph(5), cycle_graph(8)));
        REQUIRE_FALSE(tree_embedding_exists(star_graph(4), cycle_graph(8)));
    }
    SECTION("spanning star needs a universal vertex")
    {
        REQUIRE(tree_embedding_exists(star_graph(5), complete_graph(6)));
        REQUIRE_FALSE(tree_embedding_exists(star_graph(5), cycle_graph(6)));
    }
}

TEST_CASE("bounded-degree generators respect their caps")
{
    Rng rng(81);
    for (int t = 0; t < 10; ++t) {
        Graph f = random_forest(60, 4, rng.next());
        REQUIRE(f.max_degree() <= 4);
        REQUIRE(f.edge_count() < 60); // forests are acyclic
        Graph g = random_bounded_degree_graph(60, 5, 80, rng.next());
        REQUIRE(g.max_degree() <= 5);
    }
}
