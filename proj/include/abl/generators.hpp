#pragma once

#include <abl/errors.hpp>
#include <abl/graph.hpp>
#include <abl/regularity.hpp>
#include <abl/rng.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace abl {

inline Graph complete_graph(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph(n, std::move(e));
}

inline Graph path_graph(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph(n, std::move(e));
}

inline Graph cycle_graph(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    if (n > 2) e.emplace_back(n - 1, 0);
    return Graph(n, std::move(e));
}

inline Graph star_graph(int leaves)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v <= leaves; ++v) e.emplace_back(0, v);
    return Graph(leaves + 1, std::move(e));
}

inline Graph gnp(int n, double p, std::uint64_t seed)
{
    if (p < 0.0 || p > 1.0) throw DimensionError("p outside [0,1]");
    Rng rng(seed);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) e.emplace_back(u, v);
    return Graph(n, std::move(e));
}

struct BlowupHostSpec {
    Graph reduced;
    std::vector<int> cluster_sizes;
    double pair_density = 0.5;
    std::uint64_t rng_seed = 1;
    // when check_eps > 0, every reduced-edge pair gets a super-regularity report
    double check_eps = 0.0;
    double check_delta = 0.0;
    int check_trials = 200;
};

struct PairCheck {
    int i = 0;
    int j = 0;
    SuperRegularReport report;
};

struct BlowupHost {
    RPartitionedGraph rpg;
    std::vector<PairCheck> checks;
};

// Random blow-up of the reduced graph: an independent p-random bipartite
// graph on every reduced edge, no edges elsewhere.
inline BlowupHost blowup_host(const BlowupHostSpec& spec)
{
    const int r = spec.reduced.n();
    if (static_cast<int>(spec.cluster_sizes.size()) != r)
        throw DimensionError("cluster size list does not match the reduced graph order");
    std::vector<int> offset(static_cast<std::size_t>(r) + 1, 0);
    for (int i = 0; i < r; ++i)
        offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] + spec.cluster_sizes[static_cast<std::size_t>(i)];
    const int n = offset[static_cast<std::size_t>(r)];

    Rng rng(spec.rng_seed);
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < r; ++i)
        for (int j : spec.reduced.neighbors(i)) {
            if (j <= i) continue;
            for (int u = offset[static_cast<std::size_t>(i)]; u < offset[static_cast<std::size_t>(i) + 1]; ++u)
                for (int v = offset[static_cast<std::size_t>(j)]; v < offset[static_cast<std::size_t>(j) + 1]; ++v)
                    if (rng.bernoulli(spec.pair_density)) e.emplace_back(u, v);
        }

    BlowupHost out;
    out.rpg.graph = Graph(n, std::move(e));
    out.rpg.reduced = spec.reduced;
    std::vector<std::vector<int>> classes(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        for (int v = offset[static_cast<std::size_t>(i)]; v < offset[static_cast<std::size_t>(i) + 1]; ++v)
            classes[static_cast<std::size_t>(i)].push_back(v);
    out.rpg.partition = Partition(std::move(classes));

    if (spec.check_eps > 0.0) {
        for (int i = 0; i < r; ++i)
            for (int j : spec.reduced.neighbors(i)) {
                if (j <= i) continue;
                BipartitePairView view{&out.rpg.graph, out.rpg.partition.cls(i), out.rpg.partition.cls(j)};
                out.checks.push_back({i, j,
                                      super_regular_check(view, spec.check_eps, spec.check_delta,
                                                          spec.check_trials, spec.rng_seed ^ 0x5eedULL)});
            }
    }
    return out;
}

struct NormalizeResult {
    Graph graph;
    long long kept_edges = 0;
    bool half_floor_ok = false; // min cross-degree >= delta/2 * |other side| after deletion
};

// Deletes a uniform random subset of crossing edges so the pair density
// becomes floor(delta |A||B|) / (|A||B|). Edges outside the pair are kept.
inline NormalizeResult normalize_density(const BipartitePairView& pair, double delta, std::uint64_t seed)
{
    const Graph& g = *pair.host;
    const double d = density(pair);
    if (d < delta) throw TooSparseError("pair density below the target");
    const long long target = static_cast<long long>(std::floor(
        delta * static_cast<double>(pair.a_side.size()) * static_cast<double>(pair.b_side.size())));

    const auto af = detail::side_flags(g.n(), pair.a_side);
    const auto bf = detail::side_flags(g.n(), pair.b_side);
    std::vector<std::pair<int, int>> crossing, rest;
    for (auto [u, v] : g.edges()) {
        const bool cross = (af[static_cast<std::size_t>(u)] && bf[static_cast<std::size_t>(v)]) ||
                           (af[static_cast<std::size_t>(v)] && bf[static_cast<std::size_t>(u)]);
        (cross ? crossing : rest).emplace_back(u, v);
    }
    Rng rng(seed);
    rng.shuffle(crossing);
    if (static_cast<long long>(crossing.size()) > target) crossing.resize(static_cast<std::size_t>(target));

    NormalizeResult out;
    out.kept_edges = static_cast<long long>(crossing.size());
    for (auto& e : crossing) rest.push_back(e);
    out.graph = Graph(g.n(), std::move(rest));

    out.half_floor_ok = true;
    const auto bf2 = bf;
    for (int v : pair.a_side)
        if (static_cast<double>(detail::count_in(out.graph, v, bf2)) <
            0.5 * delta * static_cast<double>(pair.b_side.size()))
            out.half_floor_ok = false;
    for (int v : pair.b_side)
        if (static_cast<double>(detail::count_in(out.graph, v, af)) <
            0.5 * delta * static_cast<double>(pair.a_side.size()))
            out.half_floor_ok = false;
    return out;
}

// Bipartite host with blocks W_1..W_k on one side and random half-sets
// U_1..U_k on the other, complete between W_i and U_i and empty elsewhere.
// Every vertex has degree exactly n/2 and dist(W_1, W_2) > 2. Also carries
// the hard spanning tree (degree ~sqrt(n)) and the image-restricted star
// whose leaves are confined to the complements V_2 \ U_i.
struct OptimalityInstance {
    Graph host; // 2n vertices: V_1 = [0,n), V_2 = [n,2n)
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> w_blocks;
    std::vector<std::vector<int>> u_sets;
    Graph tree;
    int tree_root1 = 0;
    int tree_root2 = 0;
    Graph star; // center plus k leaves
    int star_center = 0;
    std::vector<std::vector<int>> star_leaf_allowed; // per leaf, in star vertex order 1..k
};

inline OptimalityInstance optimality_gk(int n, int k, std::uint64_t seed)
{
    if (k <= 0 || k % 2 != 0 || n % k != 0 || n % 2 != 0)
        throw DimensionError("needs even k, k | n and even n");
    OptimalityInstance inst;
    inst.n = n;
    inst.k = k;
    const int block = n / k;

    inst.w_blocks.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int v = i * block; v < (i + 1) * block; ++v)
            inst.w_blocks[static_cast<std::size_t>(i)].push_back(v);

    Rng rng(seed);
    inst.u_sets.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; i += 2) {
        std::vector<int> v2(static_cast<std::size_t>(n));
        std::iota(v2.begin(), v2.end(), n);
        rng.shuffle(v2);
        auto& u_even = inst.u_sets[static_cast<std::size_t>(i)];
        auto& u_odd = inst.u_sets[static_cast<std::size_t>(i) + 1];
        u_even.assign(v2.begin(), v2.begin() + n / 2);
        u_odd.assign(v2.begin() + n / 2, v2.end());
        std::sort(u_even.begin(), u_even.end());
        std::sort(u_odd.begin(), u_odd.end());
    }

    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 2);
    for (int i = 0; i < k; ++i)
        for (int w : inst.w_blocks[static_cast<std::size_t>(i)])
            for (int u : inst.u_sets[static_cast<std::size_t>(i)]) e.emplace_back(w, u);
    inst.host = Graph(2 * n, std::move(e));

    // double tree: two roots joined, each with s-1 children carrying s leaves
    const int s = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    const int half = s * s;
    std::vector<std::pair<int, int>> te;
    auto build_half = [&](int base) {
        int next = base + 1;
        for (int c = 0; c < s - 1; ++c) {
            const int child = next++;
            te.emplace_back(base, child);
            for (int l = 0; l < s; ++l) te.emplace_back(child, next++);
        }
    };
    build_half(0);
    build_half(half);
    te.emplace_back(0, half);
    inst.tree = Graph(2 * half, std::move(te));
    inst.tree_root1 = 0;
    inst.tree_root2 = half;

    inst.star = star_graph(k);
    inst.star_center = 0;
    inst.star_leaf_allowed.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        std::vector<char> in_u(static_cast<std::size_t>(2 * n), 0);
        for (int u : inst.u_sets[static_cast<std::size_t>(i)]) in_u[static_cast<std::size_t>(u)] = 1;
        for (int v = n; v < 2 * n; ++v)
            if (!in_u[static_cast<std::size_t>(v)])
                inst.star_leaf_allowed[static_cast<std::size_t>(i)].push_back(v);
    }
    return inst;
}

// disjoint union of `copies` copies of f
inline Graph f_factor_target(const Graph& f, int copies)
{
    const int m = f.n();
    std::vector<std::pair<int, int>> e;
    for (int c = 0; c < copies; ++c)
        for (auto [u, v] : f.edges()) e.emplace_back(c * m + u, c * m + v);
    return Graph(m * copies, std::move(e));
}

namespace detail {

// branch on the closed neighborhood of the first undominated vertex
inline void domination_search(const Graph& g, std::vector<int>& cover_count, int chosen, int depth_cap,
                              int& best, long long& budget)
{
    if (budget-- <= 0) return;
    int undom = -1;
    for (int v = 0; v < g.n(); ++v)
        if (cover_count[static_cast<std::size_t>(v)] == 0) {
            undom = v;
            break;
        }
    if (undom < 0) {
        best = std::min(best, chosen);
        return;
    }
    if (chosen + 1 >= best || chosen + 1 > depth_cap) return;
    auto try_add = [&](int u) {
        ++cover_count[static_cast<std::size_t>(u)];
        for (int w : g.neighbors(u)) ++cover_count[static_cast<std::size_t>(w)];
        domination_search(g, cover_count, chosen + 1, depth_cap, best, budget);
        --cover_count[static_cast<std::size_t>(u)];
        for (int w : g.neighbors(u)) --cover_count[static_cast<std::size_t>(w)];
    };
    try_add(undom);
    for (int u : g.neighbors(undom)) try_add(u);
}

} // namespace detail

struct DominationBounds {
    int lower = 0;
    int upper = 0;
    bool exact = false;
};

// Exact dominating-set search below exact_limit vertices; otherwise a greedy
// upper bound (max coverage, lowest index on ties) plus a depth-capped
// exhaustive lower-bound certificate.
inline DominationBounds domination_number(const Graph& g, int exact_limit, int lower_cap = 6,
                                          long long budget = 50'000'000)
{
    DominationBounds out;
    const int n = g.n();
    if (n == 0) return {0, 0, true};

    // greedy upper bound
    std::vector<char> dominated(static_cast<std::size_t>(n), 0);
    int remaining = n;
    int greedy = 0;
    while (remaining > 0) {
        int best_v = -1;
        int best_gain = -1;
        for (int v = 0; v < n; ++v) {
            int gain = dominated[static_cast<std::size_t>(v)] ? 0 : 1;
            for (int u : g.neighbors(v)) gain += !dominated[static_cast<std::size_t>(u)];
            if (gain > best_gain) {
                best_gain = gain;
                best_v = v;
            }
        }
        ++greedy;
        if (!dominated[static_cast<std::size_t>(best_v)]) {
            dominated[static_cast<std::size_t>(best_v)] = 1;
            --remaining;
        }
        for (int u : g.neighbors(best_v))
            if (!dominated[static_cast<std::size_t>(u)]) {
                dominated[static_cast<std::size_t>(u)] = 1;
                --remaining;
            }
    }
    out.upper = greedy;

    std::vector<int> cover(static_cast<std::size_t>(n), 0);
    if (n <= exact_limit) {
        int best = greedy;
        long long b = budget;
        detail::domination_search(g, cover, 0, greedy, best, b);
        out.exact = b > 0;
        out.upper = best;
        out.lower = out.exact ? best : 1;
        return out;
    }

    // raise the lower bound by refuting small sizes exhaustively
    out.lower = out.upper;
    for (int s = 1; s < std::min(out.upper, lower_cap + 1); ++s) {
        int best = s + 1;
        long long b = budget;
        detail::domination_search(g, cover, 0, s, best, b);
        if (b <= 0) { // budget exhausted, certificate only reaches s-1
            out.lower = s;
            return out;
        }
        if (best <= s) { // found one: that is the exact value
            out.lower = best;
            out.upper = best;
            out.exact = true;
            return out;
        }
    }
    out.lower = std::min(out.upper, lower_cap + 1);
    return out;
}

// forest with bounded maximum degree, built by random union-find edge joins
inline Graph random_forest(int n, int max_deg, std::uint64_t seed, double edge_fill = 1.0)
{
    Rng rng(seed);
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    std::vector<std::pair<int, int>> e;
    const int want = static_cast<int>(edge_fill * (n - 1));
    int guard = 50 * n;
    while (static_cast<int>(e.size()) < want && guard-- > 0) {
        int u = rng.index(static_cast<std::size_t>(n));
        int v = rng.index(static_cast<std::size_t>(n));
        if (u == v) continue;
        if (deg[static_cast<std::size_t>(u)] >= max_deg || deg[static_cast<std::size_t>(v)] >= max_deg) continue;
        int ru = find(u), rv = find(v);
        if (ru == rv) continue;
        parent[static_cast<std::size_t>(ru)] = rv;
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
        e.emplace_back(u, v);
    }
    return Graph(n, std::move(e));
}

// sparse random graph with a hard maximum-degree cap
inline Graph random_bounded_degree_graph(int n, int max_deg, int edges, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::pair<int, int>> e;
    int guard = 100 * edges + 100;
    auto has = [&](int u, int v) {
        for (auto [a, b] : e)
            if ((a == u && b == v) || (a == v && b == u)) return true;
        return false;
    };
    while (static_cast<int>(e.size()) < edges && guard-- > 0) {
        int u = rng.index(static_cast<std::size_t>(n));
        int v = rng.index(static_cast<std::size_t>(n));
        if (u == v) continue;
        if (deg[static_cast<std::size_t>(u)] >= max_deg || deg[static_cast<std::size_t>(v)] >= max_deg) continue;
        if (has(u, v)) continue;
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
        e.emplace_back(u, v);
    }
    return Graph(n, std::move(e));
}

} // namespace abl
