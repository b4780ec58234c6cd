#pragma once

#include <limits>
#include <queue>
#include <vector>

namespace abl {

// Layered augmenting-path (Hopcroft-Karp) maximum matching on a bipartite
// graph given as left-side adjacency over right indices. When the matching
// is not perfect, a Hall violator is read off the final alternating
// reachability cut: the reachable left vertices S satisfy |N(S)| < |S|.
struct BipartiteMatcher {
    explicit BipartiteMatcher(std::vector<std::vector<int>> adj, int right_size)
        : adj_(std::move(adj)), nl_(static_cast<int>(adj_.size())), nr_(right_size) {}

    int solve()
    {
        match_l_.assign(static_cast<std::size_t>(nl_), -1);
        match_r_.assign(static_cast<std::size_t>(nr_), -1);
        int matched = 0;
        while (bfs()) {
            for (int l = 0; l < nl_; ++l)
                if (match_l_[static_cast<std::size_t>(l)] < 0 && dfs(l)) ++matched;
        }
        return matched;
    }

    const std::vector<int>& left_match() const { return match_l_; }

    // only meaningful after solve() returned < nl_
    std::vector<int> hall_violator() const
    {
        std::vector<char> vis_l(static_cast<std::size_t>(nl_), 0), vis_r(static_cast<std::size_t>(nr_), 0);
        std::queue<int> q;
        for (int l = 0; l < nl_; ++l)
            if (match_l_[static_cast<std::size_t>(l)] < 0) {
                vis_l[static_cast<std::size_t>(l)] = 1;
                q.push(l);
            }
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[static_cast<std::size_t>(l)]) {
                if (vis_r[static_cast<std::size_t>(r)]) continue;
                vis_r[static_cast<std::size_t>(r)] = 1;
                int l2 = match_r_[static_cast<std::size_t>(r)];
                if (l2 >= 0 && !vis_l[static_cast<std::size_t>(l2)]) {
                    vis_l[static_cast<std::size_t>(l2)] = 1;
                    q.push(l2);
                }
            }
        }
        std::vector<int> s;
        for (int l = 0; l < nl_; ++l)
            if (vis_l[static_cast<std::size_t>(l)]) s.push_back(l);
        return s;
    }

private:
    bool bfs()
    {
        const int inf = std::numeric_limits<int>::max();
        dist_.assign(static_cast<std::size_t>(nl_), inf);
        std::queue<int> q;
        for (int l = 0; l < nl_; ++l)
            if (match_l_[static_cast<std::size_t>(l)] < 0) {
                dist_[static_cast<std::size_t>(l)] = 0;
                q.push(l);
            }
        bool reachable_free = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[static_cast<std::size_t>(l)]) {
                int l2 = match_r_[static_cast<std::size_t>(r)];
                if (l2 < 0) {
                    reachable_free = true;
                } else if (dist_[static_cast<std::size_t>(l2)] == inf) {
                    dist_[static_cast<std::size_t>(l2)] = dist_[static_cast<std::size_t>(l)] + 1;
                    q.push(l2);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int l)
    {
        for (int r : adj_[static_cast<std::size_t>(l)]) {
            int l2 = match_r_[static_cast<std::size_t>(r)];
            if (l2 < 0 || (dist_[static_cast<std::size_t>(l2)] == dist_[static_cast<std::size_t>(l)] + 1 && dfs(l2))) {
                match_l_[static_cast<std::size_t>(l)] = r;
                match_r_[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(l)] = std::numeric_limits<int>::max();
        return false;
    }

    std::vector<std::vector<int>> adj_;
    int nl_;
    int nr_;
    std::vector<int> match_l_, match_r_, dist_;
};

} // namespace abl
