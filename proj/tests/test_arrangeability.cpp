#include <abl/arrangeability.hpp>
#include <abl/generators.hpp>
#include <abl/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>

using namespace abl;

namespace {

// Independent oracle: evaluate the defining quantity at one position with
// plain set operations.
int oracle_position_value(const Graph& h, const std::vector<int>& order, int i)
{
    std::set<int> left(order.begin(), order.begin() + i + 1);
    std::set<int> right(order.begin() + i + 1, order.end());
    std::set<int> reach;
    for (int y : h.neighbors(order[static_cast<std::size_t>(i)]))
        if (right.count(y))
            for (int z : h.neighbors(y))
                if (left.count(z)) reach.insert(z);
    return static_cast<int>(reach.size());
}

int oracle_arrangeability(const Graph& h, const std::vector<int>& order)
{
    int worst = 0;
    for (int i = 0; i < h.n(); ++i) worst = std::max(worst, oracle_position_value(h, order, i));
    return worst;
}

} // namespace

TEST_CASE("named orderings")
{
    SECTION("star with center first is 1-arrangeable")
    {
        Graph star = star_graph(5);
        std::vector<int> order{0, 1, 2, 3, 4, 5};
        REQUIRE(arrangeability_of_ordering(star, order) == 1);
    }
    SECTION("complete graph on four vertices gives 3 for every order")
    {
        Graph k4 = complete_graph(4);
        std::vector<int> order{0, 1, 2, 3};
        do {
            REQUIRE(arrangeability_of_ordering(k4, order) == 3);
        } while (std::next_permutation(order.begin(), order.end()));
    }
    SECTION("edgeless graph gives 0")
    {
        Graph g(5, {});
        std::vector<int> order{0, 1, 2, 3, 4};
        REQUIRE(arrangeability_of_ordering(g, order) == 0);
    }
    SECTION("path in natural order is 1-arrangeable")
    {
        Graph p4 = path_graph(4);
        REQUIRE(verify_arrangeable(p4, {0, 1, 2, 3}, 1));
    }
    SECTION("complete graph fails at 2")
    {
        Graph k4 = complete_graph(4);
        REQUIRE_FALSE(verify_arrangeable(k4, {0, 1, 2, 3}, 2));
    }
}

TEST_CASE("oracle equivalence on random small graphs")
{
    Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + rng.index(6);
        Graph g = gnp(n, 0.4, rng.next());
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        REQUIRE(arrangeability_of_ordering(g, order) == oracle_arrangeability(g, order));
    }
}

TEST_CASE("bounded-degree graphs are (a^2-a+1)-arrangeable for any order")
{
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = 2 + rng.index(3);
        Graph g = random_bounded_degree_graph(24, a, 24, rng.next());
        std::vector<int> order(24);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        REQUIRE(verify_arrangeable(g, order, a * a - a + 1));
    }
}

TEST_CASE("degeneracy ordering heuristics")
{
    SECTION("star emits the center first")
    {
        auto ord = heuristic_ordering(star_graph(6));
        REQUIRE(ord.order.front() == 0);
        REQUIRE(ord.a == 1);
    }
    SECTION("trees have left-degree at most one")
    {
        Rng rng(45);
        for (int trial = 0; trial < 10; ++trial) {
            Graph t = random_forest(30, 5, rng.next());
            auto ord = heuristic_ordering(t);
            for (int x = 0; x < t.n(); ++x)
                REQUIRE(ord.left_neighbors[static_cast<std::size_t>(x)].size() <= 1);
        }
    }
    SECTION("complete graph measures 3")
    {
        REQUIRE(heuristic_ordering(complete_graph(4)).a == 3);
    }
}

TEST_CASE("verified orderings bound the edge count and left degrees")
{
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 10 + rng.index(30);
        Graph g = gnp(n, 0.25, rng.next());
        auto ord = heuristic_ordering(g);
        REQUIRE(g.edge_count() <= static_cast<std::size_t>(ord.a) * static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            REQUIRE(static_cast<int>(ord.left_neighbors[static_cast<std::size_t>(x)].size()) <= ord.a);
    }
}

namespace {

RPartitionedGraph random_r_partitioned(int r, int per_class, double p, Rng& rng)
{
    Graph reduced = complete_graph(r);
    const int n = r * per_class;
    std::vector<int> cls(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) cls[static_cast<std::size_t>(v)] = v % r;
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (cls[static_cast<std::size_t>(u)] != cls[static_cast<std::size_t>(v)] && rng.bernoulli(p))
                edges.emplace_back(u, v);
    RPartitionedGraph out;
    out.graph = Graph(n, std::move(edges));
    out.reduced = reduced;
    out.partition = Partition::from_class_of(cls, r);
    return out;
}

} // namespace

TEST_CASE("stable ending reorder")
{
    SECTION("edgeless graph takes the last vertices of every class")
    {
        RPartitionedGraph h;
        h.graph = Graph(12, {});
        h.reduced = complete_graph(2);
        h.partition = Partition({{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}});
        auto base = heuristic_ordering(h.graph);
        auto se = stable_ending_reorder(h, base, 1, 2);
        REQUIRE(se.ordering.a == 0);
        REQUIRE(is_stable_set(h.graph, se.w));
        REQUIRE_FALSE(se.w.empty());
    }
    SECTION("random instances meet the lemma guarantees")
    {
        Rng rng(53);
        for (int trial = 0; trial < 15; ++trial) {
            auto h = random_r_partitioned(2 + rng.index(2), 20 + rng.index(20), 0.08, rng);
            auto base = heuristic_ordering(h.graph);
            const int kappa = 1;
            const int delta_r = h.reduced.max_degree() + 1;
            auto se = stable_ending_reorder(h, base, kappa, delta_r);
            const int a = std::max(base.a, 1);
            REQUIRE(verify_arrangeable(h.graph, se.ordering.order,
                                       5 * a * a * kappa * delta_r));
            REQUIRE(is_stable_set(h.graph, se.w));
            // per-class counts hit the ceiling targets
            auto cls = h.partition.class_of(h.graph.n());
            std::vector<int> got(static_cast<std::size_t>(h.partition.r()), 0);
            for (int v : se.w) ++got[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])];
            for (int i = 0; i < h.partition.r(); ++i) {
                const int want = static_cast<int>(std::ceil(se.mu * h.partition.size_of(i) - 1e-12));
                REQUIRE(got[static_cast<std::size_t>(i)] == want);
            }
            // W forms the suffix of the new ordering
            const auto& ord = se.ordering.order;
            std::set<int> suffix(ord.end() - static_cast<long>(se.w.size()), ord.end());
            for (int v : se.w) REQUIRE(suffix.count(v) == 1);
        }
    }
    SECTION("requested mu beyond feasibility reports a construction failure")
    {
        RPartitionedGraph h;
        // one triangle per class triple; a stable set cannot exceed a third
        Graph f = complete_graph(3);
        h.graph = f_factor_target(f, 4);
        h.reduced = complete_graph(3);
        std::vector<int> cls(12);
        for (int v = 0; v < 12; ++v) cls[static_cast<std::size_t>(v)] = v % 3;
        h.partition = Partition::from_class_of(cls, 3);
        auto base = heuristic_ordering(h.graph);
        REQUIRE_THROWS_AS(stable_ending_reorder(h, base, 1, 3, 0.9), ConstructionFailed);
    }
}
