#pragma once

#include <abl/bipartite_matching.hpp>
#include <abl/errors.hpp>
#include <abl/graph.hpp>

#include <algorithm>
#include <map>
#include <vector>

namespace abl {

namespace detail {

struct TreeSearch {
    const Graph& tree;
    const Graph& host;
    const std::vector<std::vector<int>>* allowed; // per tree vertex, nullptr = anywhere

    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<int> internal_order; // root first, BFS
    std::vector<int> leaves;
    std::vector<int> shape;  // AHU-style subtree signature
    std::vector<int> mapped; // tree vertex -> host vertex or -1
    std::vector<char> used;  // host vertex used

    bool permitted(int x, int v) const
    {
        if (!allowed) return true;
        const auto& a = (*allowed)[static_cast<std::size_t>(x)];
        if (a.empty()) return true; // unrestricted
        return std::binary_search(a.begin(), a.end(), v);
    }

    // signatures so isomorphic sibling subtrees can be ordered canonically
    int compute_shape(int x, std::map<std::vector<int>, int>& table)
    {
        std::vector<int> child_sigs;
        for (int c : children[static_cast<std::size_t>(x)])
            child_sigs.push_back(compute_shape(c, table));
        std::sort(child_sigs.begin(), child_sigs.end());
        if (allowed) child_sigs.push_back(-1 - x); // restrictions break interchangeability
        auto [it, fresh] = table.emplace(child_sigs, static_cast<int>(table.size()));
        (void)fresh;
        return shape[static_cast<std::size_t>(x)] = it->second;
    }

    bool leaves_matchable() const
    {
        std::vector<int> free_hosts;
        std::vector<int> host_index(static_cast<std::size_t>(host.n()), -1);
        for (int v = 0; v < host.n(); ++v)
            if (!used[static_cast<std::size_t>(v)]) {
                host_index[static_cast<std::size_t>(v)] = static_cast<int>(free_hosts.size());
                free_hosts.push_back(v);
            }
        std::vector<std::vector<int>> adj(leaves.size());
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const int l = leaves[i];
            const int pv = mapped[static_cast<std::size_t>(parent[static_cast<std::size_t>(l)])];
            for (int v : host.neighbors(pv)) {
                int idx = host_index[static_cast<std::size_t>(v)];
                if (idx >= 0 && permitted(l, v)) adj[i].push_back(idx);
            }
            if (adj[i].empty()) return false;
        }
        BipartiteMatcher m(std::move(adj), static_cast<int>(free_hosts.size()));
        return m.solve() == static_cast<int>(leaves.size());
    }

    bool assign(std::size_t k)
    {
        if (k == internal_order.size()) return leaves_matchable();
        const int x = internal_order[k];
        const int p = parent[static_cast<std::size_t>(x)];
        // candidates: neighbors of the parent image (or all hosts for the root)
        std::vector<int> cands;
        if (p < 0) {
            for (int v = 0; v < host.n(); ++v) cands.push_back(v);
        } else {
            cands = host.neighbors(mapped[static_cast<std::size_t>(p)]);
        }
        // interchangeable siblings are forced into increasing image order
        int floor_v = -1;
        if (p >= 0) {
            for (int sib : children[static_cast<std::size_t>(p)]) {
                if (sib == x) break;
                if (shape[static_cast<std::size_t>(sib)] == shape[static_cast<std::size_t>(x)] &&
                    mapped[static_cast<std::size_t>(sib)] >= 0)
                    floor_v = std::max(floor_v, mapped[static_cast<std::size_t>(sib)]);
            }
        }
        for (int v : cands) {
            if (v <= floor_v || used[static_cast<std::size_t>(v)] || !permitted(x, v)) continue;
            // the parent of x must keep enough free neighbors for x's leaf
            // siblings; a cheap count prune before recursing
            mapped[static_cast<std::size_t>(x)] = v;
            used[static_cast<std::size_t>(v)] = 1;
            if (quick_counts_ok() && assign(k + 1)) return true;
            used[static_cast<std::size_t>(v)] = 0;
            mapped[static_cast<std::size_t>(x)] = -1;
        }
        return false;
    }

    bool quick_counts_ok() const
    {
        for (int x : internal_order) {
            const int v = mapped[static_cast<std::size_t>(x)];
            if (v < 0) continue;
            int leaf_kids = 0;
            for (int c : children[static_cast<std::size_t>(x)])
                if (children[static_cast<std::size_t>(c)].empty() && mapped[static_cast<std::size_t>(c)] < 0)
                    ++leaf_kids;
            if (leaf_kids == 0) continue;
            int avail = 0;
            for (int u : host.neighbors(v))
                if (!used[static_cast<std::size_t>(u)]) ++avail;
            if (avail < leaf_kids) return false;
        }
        return true;
    }
};

} // namespace detail

// Exhaustive search for an injective homomorphism of a tree into a host,
// optionally honoring per-vertex allowed-image sets (sorted; empty = free).
// Internal vertices are assigned by backtracking with sibling symmetry
// breaking; leaves are resolved by one bipartite matching per full internal
// assignment, since parent adjacency and distinctness are their only
// constraints. Intended for small instances.
inline bool tree_embedding_exists(const Graph& tree, const Graph& host,
                                  const std::vector<std::vector<int>>* allowed = nullptr)
{
    const int tn = tree.n();
    if (tn == 0) return true;
    if (tn > host.n()) return false;

    // verify it is a forest of one component; pick a high-degree root
    int root = 0;
    for (int v = 0; v < tn; ++v)
        if (tree.degree(v) > tree.degree(root)) root = v;

    detail::TreeSearch s{tree, host, allowed, {}, {}, {}, {}, {}, {}, {}};
    s.parent.assign(static_cast<std::size_t>(tn), -2);
    s.children.resize(static_cast<std::size_t>(tn));
    s.shape.assign(static_cast<std::size_t>(tn), 0);
    s.mapped.assign(static_cast<std::size_t>(tn), -1);
    s.used.assign(static_cast<std::size_t>(host.n()), 0);

    std::vector<int> bfs{root};
    s.parent[static_cast<std::size_t>(root)] = -1;
    for (std::size_t i = 0; i < bfs.size(); ++i) {
        int x = bfs[i];
        for (int y : tree.neighbors(x))
            if (s.parent[static_cast<std::size_t>(y)] == -2) {
                s.parent[static_cast<std::size_t>(y)] = x;
                s.children[static_cast<std::size_t>(x)].push_back(y);
                bfs.push_back(y);
            }
    }
    if (static_cast<int>(bfs.size()) != tn) throw DimensionError("tree search needs a connected tree");

    std::map<std::vector<int>, int> table;
    s.compute_shape(root, table);
    for (int x : bfs)
        if (!s.children[static_cast<std::size_t>(x)].empty() || x == root)
            s.internal_order.push_back(x);
        else
            s.leaves.push_back(x);

    return s.assign(0);
}

} // namespace abl
