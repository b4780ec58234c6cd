#pragma once

#include <abl/errors.hpp>
#include <abl/graph.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace abl {

// The arrangeability of an ordering (x_1..x_n) is the maximum over positions i
// of |N(N(x_i, Right_i), Left_i)|, where Left_i covers positions <= i and
// Right_i the rest. Returns 0 for edgeless graphs.
inline int arrangeability_of_ordering(const Graph& h, const std::vector<int>& order)
{
    const int n = h.n();
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    std::vector<char> marked(static_cast<std::size_t>(n), 0);
    std::vector<int> touched;
    int worst = 0;
    for (int i = 0; i < n; ++i) {
        const int x = order[static_cast<std::size_t>(i)];
        int count = 0;
        for (int y : h.neighbors(x)) {
            if (pos[static_cast<std::size_t>(y)] <= i) continue; // y not to the right
            for (int z : h.neighbors(y)) {
                if (pos[static_cast<std::size_t>(z)] > i) continue; // z not in Left_i
                if (!marked[static_cast<std::size_t>(z)]) {
                    marked[static_cast<std::size_t>(z)] = 1;
                    touched.push_back(z);
                    ++count;
                }
            }
        }
        worst = std::max(worst, count);
        for (int z : touched) marked[static_cast<std::size_t>(z)] = 0;
        touched.clear();
    }
    return worst;
}

inline bool verify_arrangeable(const Graph& h, const std::vector<int>& order, int a)
{
    return arrangeability_of_ordering(h, order) <= a;
}

struct ArrangeableOrdering {
    std::vector<int> order;           // permutation of V(H)
    int a = 0;                        // verified arrangeability of `order`
    std::vector<std::vector<int>> left_neighbors;  // N^-(x) indexed by vertex
    std::vector<std::vector<int>> right_neighbors; // N^+(x) indexed by vertex
};

inline ArrangeableOrdering make_arrangeable_ordering(const Graph& h, std::vector<int> order)
{
    ArrangeableOrdering out;
    out.a = arrangeability_of_ordering(h, order);
    const int n = h.n();
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    out.left_neighbors.resize(static_cast<std::size_t>(n));
    out.right_neighbors.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y : h.neighbors(x)) {
            if (pos[static_cast<std::size_t>(y)] < pos[static_cast<std::size_t>(x)])
                out.left_neighbors[static_cast<std::size_t>(x)].push_back(y);
            else
                out.right_neighbors[static_cast<std::size_t>(x)].push_back(y);
        }
    out.order = std::move(order);
    return out;
}

// Smallest-last (degeneracy) ordering: repeatedly delete a minimum-degree
// vertex and emit the deletions in reverse, so each vertex has at most
// degeneracy(h) neighbors to its left. Ties prefer the smaller original
// degree, which keeps hubs (e.g. star centers) early in the final ordering.
inline ArrangeableOrdering heuristic_ordering(const Graph& h)
{
    const int n = h.n();
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = h.degree(v);

    std::vector<int> removal;
    removal.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (removed[static_cast<std::size_t>(v)]) continue;
            if (best < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(best)] ||
                (deg[static_cast<std::size_t>(v)] == deg[static_cast<std::size_t>(best)] &&
                 h.degree(v) < h.degree(best)))
                best = v;
        }
        removed[static_cast<std::size_t>(best)] = 1;
        removal.push_back(best);
        for (int u : h.neighbors(best))
            if (!removed[static_cast<std::size_t>(u)]) --deg[static_cast<std::size_t>(u)];
    }
    std::reverse(removal.begin(), removal.end());
    return make_arrangeable_ordering(h, std::move(removal));
}

struct StableEnding {
    ArrangeableOrdering ordering;
    double mu = 0.0;
    std::vector<int> w; // the final stable set, in output order
};

// Reorders an arrangeable ordering of an R-partitioned graph so that it ends
// in a stable set W with |W cap X_i| = ceil(mu * n_i) per class, where
// mu = 1/(10 a (kappa Delta_R)^2) by default. A larger mu may be requested;
// the greedy construction then either succeeds or reports ConstructionFailed.
inline StableEnding stable_ending_reorder(const RPartitionedGraph& h,
                                          const ArrangeableOrdering& order,
                                          int kappa, int delta_r,
                                          double mu_override = 0.0)
{
    const Graph& g = h.graph;
    const int n = g.n();
    const int r = h.partition.r();
    const int a = std::max(order.a, 1);
    const double mu = mu_override > 0.0
        ? mu_override
        : 1.0 / (10.0 * a * static_cast<double>(kappa * delta_r) * (kappa * delta_r));

    const std::vector<int> cls = h.partition.class_of(n);
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order.order[static_cast<std::size_t>(i)])] = i;

    // candidate pools W_i': low-degree vertices per class, held sorted by
    // input position so the latest-positioned candidate is taken first
    const int deg_cap = 4 * a * kappa * delta_r;
    std::vector<std::vector<int>> pool(static_cast<std::size_t>(r));
    std::vector<char> in_pool(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < r; ++i) {
        for (int v : h.partition.cls(i))
            if (g.degree(v) <= deg_cap) {
                pool[static_cast<std::size_t>(i)].push_back(v);
                in_pool[static_cast<std::size_t>(v)] = 1;
            }
        std::sort(pool[static_cast<std::size_t>(i)].begin(), pool[static_cast<std::size_t>(i)].end(),
                  [&](int u, int v) { return pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)]; });
    }

    std::vector<int> target(static_cast<std::size_t>(r));
    std::vector<int> got(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < r; ++i)
        target[static_cast<std::size_t>(i)] =
            static_cast<int>(std::ceil(mu * h.partition.size_of(i) - 1e-12));

    std::vector<char> in_w(static_cast<std::size_t>(n), 0);
    for (;;) {
        // class with the smallest filled fraction among those below target
        int pick = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < r; ++i) {
            if (got[static_cast<std::size_t>(i)] >= target[static_cast<std::size_t>(i)]) continue;
            double frac = static_cast<double>(got[static_cast<std::size_t>(i)]) / h.partition.size_of(i);
            if (frac < best) {
                best = frac;
                pick = i;
            }
        }
        if (pick < 0) break; // every class reached its target

        auto& p = pool[static_cast<std::size_t>(pick)];
        while (!p.empty() && !in_pool[static_cast<std::size_t>(p.back())]) p.pop_back();
        if (p.empty())
            throw ConstructionFailed("stable-ending pool for class " + std::to_string(pick) +
                                     " emptied before reaching its target");
        const int x = p.back();
        p.pop_back();
        in_pool[static_cast<std::size_t>(x)] = 0;
        in_w[static_cast<std::size_t>(x)] = 1;
        ++got[static_cast<std::size_t>(pick)];
        for (int u : g.neighbors(x)) in_pool[static_cast<std::size_t>(u)] = 0;
    }

    // move W to the end, both parts keeping their input order
    StableEnding out;
    out.mu = mu;
    std::vector<int> reordered;
    reordered.reserve(static_cast<std::size_t>(n));
    for (int v : order.order)
        if (!in_w[static_cast<std::size_t>(v)]) reordered.push_back(v);
    for (int v : order.order)
        if (in_w[static_cast<std::size_t>(v)]) {
            reordered.push_back(v);
            out.w.push_back(v);
        }
    out.ordering = make_arrangeable_ordering(g, std::move(reordered));
    return out;
}

// true iff W spans no edge of h
inline bool is_stable_set(const Graph& h, const std::vector<int>& w)
{
    std::vector<char> in_w(static_cast<std::size_t>(h.n()), 0);
    for (int v : w) in_w[static_cast<std::size_t>(v)] = 1;
    for (int v : w)
        for (int u : h.neighbors(v))
            if (in_w[static_cast<std::size_t>(u)]) return false;
    return true;
}

} // namespace abl
