#include <abl/generators.hpp>
#include <abl/regularity.hpp>
#include <abl/rng.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace abl;

namespace {

// bipartite host on [0,na) x [na, na+nb) with the given crossing edges
Graph bipartite_host(int na, int nb, const std::vector<std::pair<int, int>>& cross)
{
    std::vector<std::pair<int, int>> e;
    for (auto [i, j] : cross) e.emplace_back(i, na + j);
    return Graph(na + nb, std::move(e));
}

BipartitePairView full_view(const Graph& g, int na)
{
    BipartitePairView v;
    v.host = &g;
    for (int i = 0; i < na; ++i) v.a_side.push_back(i);
    for (int j = na; j < g.n(); ++j) v.b_side.push_back(j);
    return v;
}

Graph random_bipartite(int na, int nb, double p, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::pair<int, int>> cross;
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            if (rng.bernoulli(p)) cross.emplace_back(i, j);
    return bipartite_host(na, nb, cross);
}

// two complete blocks, no crossing edges between them
Graph planted_blocks(int half)
{
    std::vector<std::pair<int, int>> cross;
    for (int i = 0; i < half; ++i)
        for (int j = 0; j < half; ++j) {
            cross.emplace_back(i, j);
            cross.emplace_back(half + i, half + j);
        }
    return bipartite_host(2 * half, 2 * half, cross);
}

} // namespace

TEST_CASE("density basics")
{
    SECTION("complete and empty")
    {
        Graph g = bipartite_host(3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
        REQUIRE(density(full_view(g, 3)) == 1.0);
        Graph none = bipartite_host(3, 3, {});
        REQUIRE(density(full_view(none, 3)) == 0.0);
    }
    SECTION("hand count")
    {
        Graph g = bipartite_host(2, 2, {{0, 0}, {0, 1}, {1, 0}});
        REQUIRE(density(full_view(g, 2)) == Catch::Approx(0.75));
    }
    SECTION("empty side throws")
    {
        Graph g = bipartite_host(2, 2, {});
        BipartitePairView v = full_view(g, 2);
        v.a_side.clear();
        REQUIRE_THROWS_AS(density(v), EmptySideError);
    }
    SECTION("invariant under relabeling")
    {
        Rng rng(5);
        Graph g = random_bipartite(20, 20, 0.4, 99);
        BipartitePairView v = full_view(g, 20);
        const double d = density(v);
        rng.shuffle(v.a_side);
        rng.shuffle(v.b_side);
        REQUIRE(density(v) == Catch::Approx(d));
    }
}

TEST_CASE("weighted density")
{
    Graph g = random_bipartite(30, 30, 0.5, 7);
    BipartitePairView v = full_view(g, 30);
    SECTION("unit weights reduce to plain density on subset pairs")
    {
        WeightedPair p = unit_weighted(v);
        Rng rng(8);
        for (int t = 0; t < 10; ++t) {
            std::vector<int> sa, sb;
            for (int x : v.a_side)
                if (rng.bernoulli(0.6)) sa.push_back(x);
            for (int y : v.b_side)
                if (rng.bernoulli(0.6)) sb.push_back(y);
            if (sa.empty() || sb.empty()) continue;
            REQUIRE(weighted_density(p, sa, sb) == Catch::Approx(density(g, sa, sb)));
        }
    }
    SECTION("zero weights vanish")
    {
        WeightedPair p{v, std::vector<double>(30, 0.0)};
        REQUIRE(weighted_density(p, v.a_side, v.b_side) == 0.0);
    }
    SECTION("half weights on half of a complete pair")
    {
        Graph full = planted_blocks(2); // not complete; build a real complete pair
        std::vector<std::pair<int, int>> cross;
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) cross.emplace_back(i, j);
        Graph cg = bipartite_host(10, 10, cross);
        BipartitePairView cv = full_view(cg, 10);
        std::vector<double> w(10, 1.0);
        for (int i = 0; i < 5; ++i) w[static_cast<std::size_t>(i)] = 0.5;
        WeightedPair p{cv, w};
        REQUIRE(weighted_density(p, cv.a_side, cv.b_side) == Catch::Approx(0.75));
    }
}

TEST_CASE("regularity probe")
{
    SECTION("complete pair never deviates")
    {
        std::vector<std::pair<int, int>> cross;
        for (int i = 0; i < 40; ++i)
            for (int j = 0; j < 40; ++j) cross.emplace_back(i, j);
        Graph g = bipartite_host(40, 40, cross);
        auto rep = sample_regularity_probe(full_view(g, 40), 0.05, 100, 1);
        REQUIRE(rep.pass);
        REQUIRE(rep.max_deviation == 0.0);
    }
    SECTION("planted block structure is caught")
    {
        Graph g = planted_blocks(40);
        auto rep = sample_regularity_probe(full_view(g, 80), 0.1, 50, 2);
        REQUIRE_FALSE(rep.pass);
        REQUIRE(rep.max_deviation > 0.4);
        REQUIRE_FALSE(rep.witness_a.empty());
        // the witness is genuine: recomputing its density reproduces the gap
        const double d = density(g, rep.witness_a, rep.witness_b);
        REQUIRE(std::fabs(d - rep.base_density) == Catch::Approx(rep.max_deviation));
    }
    SECTION("random pair passes a generous tolerance")
    {
        Graph g = random_bipartite(200, 200, 0.5, 3);
        auto rep = sample_regularity_probe(full_view(g, 200), 0.1, 400, 4);
        REQUIRE(rep.pass);
    }
    SECTION("uniform strategy stays blind to blocks, as configured")
    {
        Graph g = planted_blocks(40);
        auto rep = sample_regularity_probe(full_view(g, 80), 0.1, 200, 5, ProbeStrategy::Uniform);
        REQUIRE(rep.strategy == "uniform");
        REQUIRE(rep.pass);
    }
}

TEST_CASE("degree/co-degree test")
{
    SECTION("complete pair with unit weights passes verbatim thresholds")
    {
        std::vector<std::pair<int, int>> cross;
        const int n = 16; // eps^-6 = 15.6 at eps = 0.633
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cross.emplace_back(i, j);
        Graph g = bipartite_host(n, n, cross);
        WeightedPair p = unit_weighted(full_view(g, n));
        auto rep = weighted_degcodeg_test(p, 0.65);
        REQUIRE(rep.pass);
        REQUIRE(rep.verdict_eps == Catch::Approx(1.95));
    }
    SECTION("size precondition")
    {
        Graph g = random_bipartite(10, 10, 0.5, 1);
        WeightedPair p = unit_weighted(full_view(g, 10));
        REQUIRE_THROWS_AS(weighted_degcodeg_test(p, 0.2), SizeError);
    }
    SECTION("half-isolated side fails the degree condition at practical thresholds")
    {
        const int n = 100;
        std::vector<std::pair<int, int>> cross;
        for (int i = 0; i < n / 2; ++i)
            for (int j = 0; j < n; ++j) cross.emplace_back(i, j);
        Graph g = bipartite_host(n, n, cross);
        WeightedPair p = unit_weighted(full_view(g, n));
        auto rep = weighted_degcodeg_test(p, 0.2, DegCodegThresholds{0.1, 0.1, 0.1, 0.2});
        REQUIRE_FALSE(rep.pass_degree);
    }
    SECTION("random pair passes practical thresholds")
    {
        const int n = 300;
        Graph g = random_bipartite(n, n, 0.5, 17);
        WeightedPair p = unit_weighted(full_view(g, n));
        auto rep = weighted_degcodeg_test(p, 0.1, DegCodegThresholds{0.12, 0.05, 0.12, 0.05});
        REQUIRE(rep.pass);
        REQUIRE_FALSE(rep.verbatim_thresholds);
    }
    SECTION("weights below eps are clamped and the verdict doubles")
    {
        const int n = 50;
        Graph g = random_bipartite(n, n, 0.5, 19);
        WeightedPair p = unit_weighted(full_view(g, n));
        p.omega[0] = 0.01;
        auto rep = weighted_degcodeg_test(p, 0.2, DegCodegThresholds{0.5, 0.5, 0.5, 0.5});
        REQUIRE(rep.clamped_weights == 1);
        REQUIRE(rep.original_verdict_eps == Catch::Approx(2.0 * rep.verdict_eps));
    }
}

TEST_CASE("subpair bounds")
{
    Graph g = random_bipartite(40, 40, 0.5, 23);
    WeightedPair p = unit_weighted(full_view(g, 40));
    SECTION("full pair doubles eps")
    {
        auto sub = subpair(p, p.view.a_side, p.view.b_side, 0.01, 1.0);
        REQUIRE(sub.eps_prime == Catch::Approx(0.02));
    }
    SECTION("gamma = 1/2")
    {
        std::vector<int> half_a(p.view.a_side.begin(), p.view.a_side.begin() + 20);
        std::vector<int> half_b(p.view.b_side.begin(), p.view.b_side.begin() + 20);
        auto sub = subpair(p, half_a, half_b, 0.01, 0.5);
        REQUIRE(sub.eps_prime == Catch::Approx(0.02));
        auto sub2 = subpair(p, half_a, half_b, 0.015, 0.5);
        REQUIRE(sub2.eps_prime == Catch::Approx(0.03));
    }
    SECTION("gamma below eps throws")
    {
        REQUIRE_THROWS_AS(subpair(p, p.view.a_side, p.view.b_side, 0.01, 0.002), TooSmallError);
    }
    SECTION("undersized subset throws")
    {
        std::vector<int> tiny{0};
        REQUIRE_THROWS_AS(subpair(p, tiny, p.view.b_side, 0.01, 0.5), TooSmallError);
    }
}

TEST_CASE("super-regularity check")
{
    SECTION("complete pair")
    {
        std::vector<std::pair<int, int>> cross;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) cross.emplace_back(i, j);
        Graph g = bipartite_host(20, 20, cross);
        auto rep = super_regular_check(full_view(g, 20), 0.1, 1.0);
        REQUIRE(rep.ok());
        REQUIRE(rep.half_floor_ok);
    }
    SECTION("one isolated vertex breaks the minimum degree")
    {
        std::vector<std::pair<int, int>> cross;
        for (int i = 1; i < 20; ++i)
            for (int j = 0; j < 20; ++j) cross.emplace_back(i, j);
        Graph g = bipartite_host(20, 20, cross);
        auto rep = super_regular_check(full_view(g, 20), 0.1, 0.5);
        REQUIRE_FALSE(rep.min_degree_ok);
        REQUIRE_FALSE(rep.ok());
    }
    SECTION("random pair at moderate delta")
    {
        Graph g = random_bipartite(300, 300, 0.5, 31);
        auto rep = super_regular_check(full_view(g, 300), 0.1, 0.3, 200, 7);
        REQUIRE(rep.ok());
        REQUIRE(rep.half_floor_ok);
    }
}

TEST_CASE("tuple condition")
{
    SECTION("complete multipartite host has full intersections")
    {
        BlowupHostSpec spec;
        spec.reduced = complete_graph(3);
        spec.cluster_sizes = {12, 12, 12};
        spec.pair_density = 1.0;
        spec.rng_seed = 1;
        auto host = blowup_host(spec);
        auto rep = tuple_condition_check(host.rpg, 1, 0.99, 50, 3);
        REQUIRE(rep.pass);
        REQUIRE(rep.min_fraction == Catch::Approx(1.0));
    }
    SECTION("dense random blow-up passes a mild iota")
    {
        BlowupHostSpec spec;
        spec.reduced = complete_graph(3);
        spec.cluster_sizes = {60, 60, 60};
        spec.pair_density = 0.9;
        spec.rng_seed = 2;
        auto host = blowup_host(spec);
        auto rep = tuple_condition_check(host.rpg, 1, 0.5, 300, 5);
        REQUIRE(rep.pass);
        REQUIRE(rep.min_fraction > 0.55); // p^2 concentration less sampling dips
    }
    SECTION("disjoint neighborhoods produce witnesses")
    {
        // two-class host where two outside vertices miss the first class
        Graph g = bipartite_host(4, 4, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
        RPartitionedGraph rpg;
        rpg.graph = g;
        rpg.reduced = Graph(2, {{0, 1}});
        rpg.partition = Partition({{0, 1, 2, 3}, {4, 5, 6, 7}});
        auto rep = tuple_condition_check(rpg, 1, 0.4, 50, 7);
        REQUIRE_FALSE(rep.pass);
        REQUIRE_FALSE(rep.witnesses.empty());
        REQUIRE(rep.exhaustive);
    }
}
