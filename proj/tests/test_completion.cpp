#include <abl/completion.hpp>
#include <abl/generators.hpp>
#include <abl/pipeline.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace abl;

namespace {

AuxiliaryGraph manual_aux(int nl, int nr, const std::vector<std::vector<int>>& adj,
                          std::vector<double> w = {})
{
    AuxiliaryGraph aux;
    for (int i = 0; i < nl; ++i) aux.left.push_back(i);
    for (int j = 0; j < nr; ++j) aux.right.push_back(100 + j);
    aux.adj = adj;
    aux.weight = w.empty() ? std::vector<double>(static_cast<std::size_t>(nl), 1.0) : std::move(w);
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < nl; ++i)
        for (int j : adj[static_cast<std::size_t>(i)]) e.emplace_back(i, nl + j);
    aux.bipartite = Graph(nl + nr, std::move(e));
    return aux;
}

BlowupInstance matching_instance(int m, double p, std::uint64_t seed)
{
    BlowupInstance inst;
    inst.target.graph = f_factor_target(path_graph(2), m);
    inst.target.reduced = Graph(2, {{0, 1}});
    std::vector<int> cls(static_cast<std::size_t>(2 * m));
    for (int v = 0; v < 2 * m; ++v) cls[static_cast<std::size_t>(v)] = v % 2;
    inst.target.partition = Partition::from_class_of(cls, 2);
    BlowupHostSpec spec;
    spec.reduced = Graph(2, {{0, 1}});
    spec.cluster_sizes = {m, m};
    spec.pair_density = p;
    spec.rng_seed = seed;
    inst.host = blowup_host(spec).rpg;
    return inst;
}

} // namespace

TEST_CASE("perfect matching and Hall violators")
{
    SECTION("complete bipartite")
    {
        std::vector<std::vector<int>> adj(6);
        for (auto& row : adj)
            for (int j = 0; j < 6; ++j) row.push_back(j);
        auto res = perfect_matching(manual_aux(6, 6, adj));
        REQUIRE(res.perfect);
        REQUIRE(res.pairs.size() == 6);
    }
    SECTION("isolated left vertex certifies non-matching")
    {
        std::vector<std::vector<int>> adj(3);
        adj[0] = {0, 1, 2};
        adj[1] = {};
        adj[2] = {0, 1, 2};
        auto res = perfect_matching(manual_aux(3, 3, adj));
        REQUIRE_FALSE(res.perfect);
        REQUIRE(res.hall_violator == std::vector<int>{1});
        REQUIRE(res.violator_neighborhood.empty());
    }
    SECTION("crowded trio certifies a genuine violator")
    {
        std::vector<std::vector<int>> adj(3);
        adj[0] = {0};
        adj[1] = {0, 1};
        adj[2] = {0, 1};
        auto res = perfect_matching(manual_aux(3, 3, adj));
        REQUIRE_FALSE(res.perfect);
        REQUIRE(res.hall_violator.size() > res.violator_neighborhood.size());
    }
    SECTION("dense weighted regular pairs with good minimum degree always match")
    {
        Rng rng(19);
        for (int t = 0; t < 20; ++t) {
            const int n = 60;
            const double eps = 0.04; // min degree must clear 2 sqrt(eps) n = 24
            std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
            bool ok_min_deg = true;
            std::vector<int> rdeg(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j)
                    if (rng.bernoulli(0.6)) {
                        adj[static_cast<std::size_t>(i)].push_back(j);
                        ++rdeg[static_cast<std::size_t>(j)];
                    }
                if (adj[static_cast<std::size_t>(i)].size() <= 2 * std::sqrt(eps) * n) ok_min_deg = false;
            }
            for (int j = 0; j < n; ++j)
                if (rdeg[static_cast<std::size_t>(j)] <= 2 * std::sqrt(eps) * n) ok_min_deg = false;
            if (!ok_min_deg) continue;
            auto res = perfect_matching(manual_aux(n, n, adj));
            REQUIRE(res.perfect);
        }
    }
}

TEST_CASE("auxiliary graph construction")
{
    BlowupInstance inst = matching_instance(20, 1.0, 5);
    PracticalLedgerInputs in;
    in.cap_c = 1;
    in.a = 1;
    in.delta_r = 2;
    in.kappa = 1;
    in.r = 2;
    in.delta = 0.5L;
    in.c = 0.4L;
    in.mu = 1.0L;
    in.xi = 0.001L;
    in.eps = 0.002L;
    in.alpha = 0.05L;
    in.eps_prime = 0.06L;
    in.lambda = 0.07L;
    in.gamma = 0.08L;
    in.filter_eps = 0.55;
    in.init_eps = 0.9;
    auto ledger = make_practical_ledger(in);

    ImageRestrictions ir = ImageRestrictions::none(40, 2);
    ir.families[0].push_back({0, 1, 2, 3, 4, 5, 6, 7});
    ir.assignment[0] = 0; // vertex 0 lives in class 0
    auto ord = heuristic_ordering(inst.target.graph);
    // the tiny special pool may miss I(x); take the first seed that passes
    EmbeddingState st;
    bool init_ok = false;
    for (std::uint64_t s = 1; s <= 16 && !init_ok; ++s) {
        try {
            st = initialise(inst, ledger, ir, ord, s);
            init_ok = true;
        } catch (const InitFailure&) {
        }
    }
    REQUIRE(init_ok);
    attach_important(st, important_sets(inst, ledger, ir, ord));

    SECTION("at time 1 the graph is complete except for restrictions")
    {
        auto aux = build_auxiliary(st, inst, ledger, ir, ord, 0, 1);
        REQUIRE(aux.left.size() == 20);
        REQUIRE(aux.right.size() == 20);
        for (std::size_t i = 0; i < aux.left.size(); ++i) {
            if (aux.left[i] == 0)
                REQUIRE(aux.adj[i].size() == 8); // the restricted vertex keeps I(x)
            else
                REQUIRE(aux.adj[i].size() == 20);
            REQUIRE(aux.weight[i] == Catch::Approx(0.5)); // delta^a with no predecessors
        }
    }
    SECTION("after the run, degrees track the candidate sets and pi")
    {
        auto rep = run_almost_spanning(st, inst, ledger, ir, ord, 30);
        REQUIRE(rep.success);
        auto aux = build_auxiliary(st, inst, ledger, ir, ord, 0, st.t);
        for (std::size_t i = 0; i < aux.left.size(); ++i) {
            const int x = aux.left[i];
            REQUIRE(aux.adj[i].size() == st.cand[static_cast<std::size_t>(x)].size());
        }
    }
}

TEST_CASE("monitor flags planted irregularity")
{
    SECTION("uniform complete auxiliary passes")
    {
        std::vector<std::vector<int>> adj(40);
        for (auto& row : adj)
            for (int j = 0; j < 40; ++j) row.push_back(j);
        auto aux = manual_aux(40, 40, adj, std::vector<double>(40, 0.5));
        auto rep = monitor_ri(aux, 0.3, DegCodegThresholds{0.1, 0.1, 0.1, 0.1}, 100, 3);
        REQUIRE(rep.pass);
        REQUIRE(rep.probe.max_deviation == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("zeroed candidate half is caught")
    {
        std::vector<std::vector<int>> adj(40);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 40; ++j) adj[static_cast<std::size_t>(i)].push_back(j);
        auto aux = manual_aux(40, 40, adj);
        auto rep = monitor_ri(aux, 0.2, DegCodegThresholds{0.1, 0.1, 0.1, 0.1}, 200, 4);
        REQUIRE_FALSE(rep.pass);
    }
}

TEST_CASE("restriction to the free sides and assembly")
{
    BlowupInstance inst = matching_instance(30, 0.6, 11);
    PracticalLedgerInputs in;
    in.cap_c = 0;
    in.a = 1;
    in.delta_r = 2;
    in.kappa = 1;
    in.r = 2;
    in.delta = 0.6L;
    in.c = 1.0L;
    in.mu = 0.9L;
    in.xi = 0.001L;
    in.eps = 0.002L;
    in.alpha = 0.01L;
    in.eps_prime = 0.04L;
    in.lambda = 0.05L;
    in.gamma = 0.05L;
    in.filter_eps = 0.7;
    in.init_eps = 0.9;
    auto ledger = make_practical_ledger(in);
    auto ir = ImageRestrictions::none(60, 2);
    auto base = heuristic_ordering(inst.target.graph);
    auto se = stable_ending_reorder(inst.target, base, 1, 2, 0.4);
    const auto& ord = se.ordering;

    auto st = initialise(inst, ledger, ir, ord, 23);
    attach_important(st, important_sets(inst, ledger, ir, ord));
    auto rep = run_almost_spanning(st, inst, ledger, ir, ord,
                                   static_cast<long>(60 - se.w.size()));
    REQUIRE(rep.success);

    SECTION("free restriction is balanced and matchable")
    {
        std::vector<MatchingResult> ms;
        for (int i = 0; i < 2; ++i) {
            auto full = build_auxiliary(st, inst, ledger, ir, ord, i, st.t);
            auto fstar = restrict_to_free(full, st);
            REQUIRE(fstar.left.size() == fstar.right.size());
            auto m = perfect_matching(fstar);
            if (!m.perfect) return; // probabilistic miss; assembly tested in rga suite
            ms.push_back(std::move(m));
        }
        auto phi = complete_embedding(st, inst, ms);
        auto ver = verify_embedding(inst.target.graph, inst.host.graph, phi,
                                    &inst.target.partition, &inst.host.partition, &ir);
        REQUIRE(ver.pass);
    }
    SECTION("tampered matchings are rejected")
    {
        std::vector<MatchingResult> ms;
        for (int i = 0; i < 2; ++i) {
            auto full = build_auxiliary(st, inst, ledger, ir, ord, i, st.t);
            auto m = perfect_matching(restrict_to_free(full, st));
            if (!m.perfect) return;
            ms.push_back(std::move(m));
        }
        // swap two images inside one class: candidate membership breaks
        auto bad = ms;
        if (bad[0].pairs.size() >= 2) {
            std::swap(bad[0].pairs[0].second, bad[0].pairs[1].second);
            bool rejected = false;
            auto st_copy = st;
            try {
                complete_embedding(st_copy, inst, bad);
                // a lucky swap can stay inside both candidate sets; verify instead
                auto ver = verify_embedding(inst.target.graph, inst.host.graph, st_copy.phi,
                                            &inst.target.partition, &inst.host.partition, &ir);
                rejected = ver.pass; // both orders valid: accept either way
            } catch (const MatchEdgeInvalid&) {
                rejected = true;
            }
            REQUIRE(rejected);
        }
    }
}

TEST_CASE("stability precondition")
{
    // target with an edge between two unembedded vertices
    BlowupInstance inst = matching_instance(10, 1.0, 2);
    PracticalLedgerInputs in;
    in.cap_c = 0;
    in.a = 1;
    in.delta_r = 2;
    in.kappa = 1;
    in.r = 2;
    in.delta = 1.0L;
    in.c = 1.0L;
    in.mu = 1.0L;
    in.xi = 0.01L;
    in.eps = 0.02L;
    in.alpha = 0.03L;
    in.eps_prime = 0.2L;
    in.lambda = 0.25L;
    in.gamma = 0.25L;
    auto ledger = make_practical_ledger(in);
    auto ir = ImageRestrictions::none(20, 2);
    auto ord = heuristic_ordering(inst.target.graph);
    auto st = initialise(inst, ledger, ir, ord, 5);
    attach_important(st, important_sets(inst, ledger, ir, ord));
    // stop while a matched target edge is still fully unembedded
    run_almost_spanning(st, inst, ledger, ir, ord, 10);
    std::vector<int> leftover;
    for (int x = 0; x < 20; ++x)
        if (st.phi[static_cast<std::size_t>(x)] < 0) leftover.push_back(x);
    if (!is_stable_set(inst.target.graph, leftover))
        REQUIRE_THROWS_AS(complete_embedding(st, inst, {}), StabilityViolation);
}

TEST_CASE("verifier catches broken embeddings")
{
    Graph g = gnp(30, 0.4, 9);
    std::vector<int> identity(30);
    std::iota(identity.begin(), identity.end(), 0);
    SECTION("identity embedding of a graph into itself passes")
    {
        auto rep = verify_embedding(g, g, identity);
        REQUIRE(rep.pass);
    }
    SECTION("swapping two images breaks exactly the incident edges")
    {
        // find an edge whose swap breaks adjacency
        auto phi = identity;
        std::swap(phi[0], phi[1]);
        auto rep = verify_embedding(g, g, phi);
        // count mismatches independently
        long long expect = 0;
        for (int x = 0; x < 30; ++x)
            for (int y : g.neighbors(x)) {
                if (x > y) continue;
                if (!g.has_edge(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)])) ++expect;
            }
        REQUIRE(rep.edge_violations == expect);
        REQUIRE(rep.pass == (expect == 0));
    }
    SECTION("duplicate images are injectivity violations")
    {
        auto phi = identity;
        phi[3] = phi[4];
        auto rep = verify_embedding(g, g, phi);
        REQUIRE(rep.injectivity_violations > 0);
        REQUIRE_FALSE(rep.pass);
    }
}
